import pytest

from qo_workbench.config import WorkbenchConfig, set_config


@pytest.fixture(autouse=True)
def _reset_config(monkeypatch):
    """每个测试前后重置进程级配置，并清除 QO_WORKBENCH_* 环境变量"""
    for name in WorkbenchConfig.__dataclass_fields__:
        monkeypatch.delenv(f"QO_WORKBENCH_{name.upper()}", raising=False)
    set_config(None)
    yield
    set_config(None)


@pytest.fixture
def workbench_config():
    """以覆盖项安装一份配置"""

    def install(**overrides: int) -> WorkbenchConfig:
        config = WorkbenchConfig().with_overrides(**overrides)
        set_config(config)
        return config

    return install
