import logging
import os
from dataclasses import dataclass, replace

logger = logging.getLogger(__name__)

_ENV_PREFIX = "QO_WORKBENCH_"


@dataclass(frozen=True)
class WorkbenchConfig:
    """全局运行参数"""

    enumeration_cap: int = 8  # 枚举弱序的载体规模上限
    oracle_min_exponent: int = 3  # 在 t = η·10^(-k) 处求值的起始 k
    oracle_max_exponent: int = 12
    corpus_size: int = 100
    corpus_max_degree: int = 4
    corpus_coef_bound: int = 10
    seed: int = 0
    probe_bound: int = 3  # ε 探测网格 {-b..b}^d

    @classmethod
    def from_env(cls) -> "WorkbenchConfig":
        """从 QO_WORKBENCH_* 环境变量读取配置，缺省时使用默认值"""
        overrides: dict[str, int] = {}
        for name in cls.__dataclass_fields__:
            raw = os.getenv(_ENV_PREFIX + name.upper())
            if raw is None:
                continue
            try:
                overrides[name] = int(raw)
            except ValueError:
                logger.warning(f"忽略无法解析的环境变量 {_ENV_PREFIX}{name.upper()}={raw!r}")
        return replace(cls(), **overrides)

    def with_overrides(self, **kwargs: int | None) -> "WorkbenchConfig":
        """返回覆盖了非空字段的新配置"""
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


_config: WorkbenchConfig | None = None


def get_config() -> WorkbenchConfig:
    """获取进程级配置，首次调用时从环境变量加载"""
    global _config
    if _config is None:
        _config = WorkbenchConfig.from_env()
        logger.debug(f"已加载配置: {_config}")
    return _config


def set_config(config: WorkbenchConfig | None) -> None:
    """替换进程级配置；传入 None 时下次调用 get_config 重新加载"""
    global _config
    _config = config
