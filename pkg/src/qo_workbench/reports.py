import hashlib
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .results import CheckResult

logger = logging.getLogger(__name__)


def sha256_file(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


@dataclass(frozen=True)
class Verdict:
    name: str
    passed: bool
    witness: Any = None
    instances: int = 0
    skipped: int = 0
    detail: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_check(cls, result: CheckResult, **detail: Any) -> "Verdict":
        data = result.to_dict()
        return cls(result.name, result.passed, data["witness"], result.instances, result.skipped, detail)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "witness": self.witness,
            "instances": self.instances,
            "skipped": self.skipped,
            "detail": self.detail,
        }


@dataclass
class RunReport:
    """
    一次运行的报告：命令回显、输入文件摘要、逐项结论
    overall 为真当且仅当每个结论都通过
    """

    command: list[str]
    inputs: dict[str, str] = field(default_factory=dict)
    verdicts: list[Verdict] = field(default_factory=list)
    seed: int | None = None

    def add_input(self, path: str | Path) -> None:
        self.inputs[str(path)] = sha256_file(path)

    def add(self, verdict: Verdict) -> Verdict:
        self.verdicts.append(verdict)
        return verdict

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    @property
    def skipped(self) -> int:
        return sum(v.skipped for v in self.verdicts)

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": list(self.command),
            "inputs": dict(self.inputs),
            "seed": self.seed,
            "verdicts": [v.to_dict() for v in self.verdicts],
            "skipped": self.skipped,
            "passed": self.passed,
        }

    def to_json(self) -> str:
        """键排序的确定性 JSON"""
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False, default=str)

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json() + "\n", encoding="utf-8")
        logger.info(f"报告已写入 {path}")

    def summary(self) -> str:
        lines = []
        for v in self.verdicts:
            mark = "PASS" if v.passed else "FAIL"
            line = f"[{mark}] {v.name}"
            if v.witness is not None:
                line += f"  witness={v.witness}"
            if v.skipped:
                line += f"  skipped={v.skipped}"
            lines.append(line)
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)
