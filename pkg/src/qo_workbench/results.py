from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class CheckResult:
    """一次穷举检查的结论"""

    name: str
    passed: bool
    witness: tuple[Any, ...] | None = None
    instances: int = 0
    skipped: int = 0
    detail: str = ""

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "witness": None if self.witness is None else [_jsonable(w) for w in self.witness],
            "instances": self.instances,
            "skipped": self.skipped,
            "detail": self.detail,
        }


def _jsonable(value: Any) -> Any:
    if isinstance(value, tuple | list):
        return [_jsonable(v) for v in value]
    if isinstance(value, int | str | bool | float) or value is None:
        return value
    return str(value)
