"""引擎工厂：按名称创建仿真引擎"""
from .simulation_engine import SimulationEngine
from .lindblad_engine import LindbladEngine
from .schrodinger_engine import SchrodingerEngine


class EngineFactory:
    """仿真引擎工厂类"""

    _ENGINES = {
        "lindblad": LindbladEngine,
        "schrodinger": SchrodingerEngine,
    }

    @staticmethod
    def create(engine_type: str = "lindblad") -> SimulationEngine:
        """创建仿真引擎实例

        Args:
            engine_type: 引擎类型 ("lindblad" 或 "schrodinger")

        Raises:
            ValueError: 如果engine_type不支持
        """
        engine_cls = EngineFactory._ENGINES.get(engine_type)
        if engine_cls is None:
            raise ValueError(f"Unsupported engine type: {engine_type}. Use 'lindblad' or 'schrodinger'")
        return engine_cls()

    @staticmethod
    def create_from_options(opts) -> SimulationEngine:
        return EngineFactory.create(opts.engine)
