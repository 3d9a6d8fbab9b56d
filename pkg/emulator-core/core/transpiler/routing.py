"""Shortest-path SWAP routing on the coupling graph."""
from typing import List, Tuple

import networkx as nx

from core.circuit import Circuit, Gate, GateKind
from core.errors import TranspileError
from infrastructure.platform import PlatformSpec
from .layout import Layout


def _shortest_path(graph: nx.Graph, source: int, target: int) -> List[int]:
    # BFS from source; neighbours are visited in ascending order
    paths = nx.single_source_shortest_path(graph, source)
    if target not in paths:
        raise TranspileError(f"physical qubits {source} and {target} are disconnected")
    return paths[target]


def route(c: Circuit, layout: Layout, p: PlatformSpec) -> Tuple[Circuit, Layout]:
    """Rewrite ``c`` onto physical qubits so every two-qubit gate sits on a coupler.

    For a gate on non-adjacent qubits, SWAPs move the first operand along a BFS
    shortest path until it neighbours the second operand. The layout is updated after
    each SWAP and the final layout is returned with the routed circuit.

    Raises:
        TranspileError: operands lie in different components of the coupling graph
    """
    if layout.size != c.n_qubits:
        raise TranspileError(f"layout size {layout.size} does not match circuit width {c.n_qubits}")
    graph = p.connectivity()
    current = layout
    routed: List[Gate] = []
    for g in c.gates:
        if not g.is_two_qubit:
            routed.append(g.remapped(current.logical_to_physical))
            continue
        a = current.physical(g.qubits[0])
        b = current.physical(g.qubits[1])
        if not graph.has_edge(a, b):
            path = _shortest_path(graph, a, b)
            for hop_from, hop_to in zip(path[:-2], path[1:-1]):
                routed.append(Gate(kind=GateKind.SWAP, qubits=(hop_from, hop_to)))
                current = current.after_swap(hop_from, hop_to)
        routed.append(g.remapped(current.logical_to_physical))
    return c.with_gates(routed), current
