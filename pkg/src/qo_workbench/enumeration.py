"""
小载体上全部全拟序的穷举（有序集合划分）与按公理类的普查
"""

import logging
import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from functools import cache
from typing import Any

import numpy as np

from .config import get_config
from .errors import EnumerationCapExceeded, NotValuational, PreconditionError
from .groups import GroupSpec
from .qo_core import QO, AxiomId, Provenance, evaluate_axiom, natural_valuation, qo_from_ranks

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeakOrder:
    """有序块列表：块 i 严格低于块 j（i < j），块内元素等价"""

    blocks: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return sum(len(b) for b in self.blocks)

    def ranks(self) -> np.ndarray:
        ranks = np.empty(self.size, dtype=np.int64)
        for level, block in enumerate(self.blocks):
            ranks[list(block)] = level
        return ranks

    def to_qo(self, group: GroupSpec) -> QO:
        return qo_from_ranks(group, self.ranks(), Provenance.MATRIX)


def _members(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def _partitions(remaining: int) -> Iterator[list[tuple[int, ...]]]:
    if remaining == 0:
        yield []
        return
    # 非空子集按位掩码递增枚举，保证顺序确定
    sub = 1
    while sub <= remaining:
        if sub & remaining == sub:
            head = _members(sub)
            for tail in _partitions(remaining & ~sub):
                yield [head, *tail]
        sub += 1


def weak_orders(n: int, cap: int | None = None, bottom: int | None = None) -> Iterator[WeakOrder]:
    """
    生成 n 元载体上的每个有序集合划分恰好一次

    bottom 给定时只生成以 {bottom} 为首块的弱序（即 bottom 为严格最小元）。
    """
    cap = get_config().enumeration_cap if cap is None else cap
    if n > cap:
        raise EnumerationCapExceeded(f"载体规模 {n} 超过枚举上限 {cap}")
    full = (1 << n) - 1
    if bottom is None:
        for blocks in _partitions(full):
            yield WeakOrder(tuple(blocks))
        return
    if not 0 <= bottom < n:
        raise PreconditionError(f"最小元编号 {bottom} 不在 0..{n - 1} 中")
    for blocks in _partitions(full & ~(1 << bottom)):
        yield WeakOrder(((bottom,), *blocks))


@cache
def ordered_bell(n: int) -> int:
    """有序 Bell 数（Fubini 数）：1, 1, 3, 13, 75, 541, ..."""
    if n == 0:
        return 1
    return sum(math.comb(n, k) * ordered_bell(n - k) for k in range(1, n + 1))


@dataclass(frozen=True)
class CensusRow:
    group: str
    axioms: tuple[str, ...]
    candidates: int
    passes: int
    instances: int
    valuational: int

    @property
    def strictly_exceeds_valuational(self) -> bool:
        return self.passes > self.valuational

    def to_dict(self) -> dict[str, Any]:
        return {
            "group": self.group,
            "class": list(self.axioms),
            "candidates": self.candidates,
            "passes": self.passes,
            "instances": self.instances,
            "valuational": self.valuational,
            "strictly_exceeds_valuational": self.strictly_exceeds_valuational,
        }


@dataclass
class SurveyResult:
    row: CensusRow
    witnesses: dict[str, dict[str, Any]] = field(default_factory=dict)
    survivors: list[QO] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {"row": self.row.to_dict(), "witnesses": dict(self.witnesses)}


def survey(group: GroupSpec, axioms: Sequence[AxiomId], cap: int | None = None) -> SurveyResult:
    """
    穷举群上全部弱序，逐个按公理过滤

    每种失败模式只保留第一个反例；通过者中另外统计赋值型拟序的个数。
    """
    if not group.is_finite:
        raise PreconditionError(f"只能普查有限群: {group}")
    carrier = group.carrier
    candidates = passes = instances = valuational = 0
    witnesses: dict[str, dict[str, Any]] = {}
    survivors: list[QO] = []

    for wo in weak_orders(carrier.size, cap=cap):
        candidates += 1
        qo = qo_from_ranks(carrier, wo.ranks(), Provenance.MATRIX)
        for axiom in axioms:
            verdict = evaluate_axiom(qo, axiom)
            instances += verdict.instances
            if not verdict.passed:
                if verdict.name not in witnesses:
                    witnesses[verdict.name] = {
                        "qo": qo.describe(),
                        "witness": [list(g) for g in verdict.witness or ()],
                    }
                break
        else:
            passes += 1
            survivors.append(qo)
            try:
                natural_valuation(qo)
                valuational += 1
            except NotValuational:
                pass

    row = CensusRow(str(group), tuple(a.value for a in axioms), candidates, passes, instances, valuational)
    logger.info(
        f"普查完成 - {group} [{','.join(row.axioms)}]: 候选 {candidates}, 通过 {passes}, 赋值型 {valuational}"
    )
    return SurveyResult(row, witnesses, survivors)
