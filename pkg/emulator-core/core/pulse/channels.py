"""Control channels derived from the platform: one drive and one readout line per
qubit, one coupling line per coupled pair."""
from typing import Dict, Literal, Tuple

from pydantic import BaseModel, ConfigDict

from infrastructure.platform import PlatformSpec

ChannelKind = Literal["drive", "coupling", "readout"]


class Channel(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: ChannelKind
    qubits: Tuple[int, ...]
    id: str


def drive_channel_id(q: int) -> str:
    return f"drive_q{q}"


def readout_channel_id(q: int) -> str:
    return f"readout_q{q}"


def coupling_channel_id(a: int, b: int) -> str:
    lo, hi = min(a, b), max(a, b)
    return f"coupler_q{lo}_q{hi}"


def channel_map(p: PlatformSpec) -> Dict[str, Channel]:
    """All channels of ``p`` keyed by id, in a stable order."""
    channels: Dict[str, Channel] = {}
    for q in range(p.n_qubits):
        channels[drive_channel_id(q)] = Channel(kind="drive", qubits=(q,), id=drive_channel_id(q))
    for c in p.couplings:
        cid = coupling_channel_id(*c.pair)
        channels[cid] = Channel(kind="coupling", qubits=c.pair, id=cid)
    for q in range(p.n_qubits):
        channels[readout_channel_id(q)] = Channel(kind="readout", qubits=(q,), id=readout_channel_id(q))
    return channels
