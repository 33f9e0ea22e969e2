"""
群赋值、层子群 G^γ / G_γ、赋值诱导的拟序、与拟序的相容性以及粗化关系
"""

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np
import numpy.typing as npt

from .decorators import traced_check
from .errors import PreconditionError, SubgroupError, TheoremViolation, ValuationError
from .groups import Carrier, GroupSpec, SubgroupDesc, all_subgroups, subgroup_from_members
from .qo_core import QO, Provenance, check_convex
from .results import CheckResult

logger = logging.getLogger(__name__)

INFINITY_LABEL = "∞"


class LevelKind(Enum):
    GEQ = "geq"  # G^γ = {g : v(g) ≥ γ}
    GT = "gt"  # G_γ = {g : v(g) > γ}


@dataclass(frozen=True, eq=False)
class Valuation:
    """
    载体上的赋值

    values 为严格递增的有限标签列表；levels[g] 是 v(g) 在 values 中的位置，
    len(values) 表示 ∞。
    """

    carrier: Carrier
    values: tuple[str, ...]
    levels: npt.NDArray[np.int64]

    def __post_init__(self) -> None:
        if len(set(self.values)) != len(self.values):
            raise ValuationError(f"值集标签重复: {self.values}")
        if INFINITY_LABEL in self.values:
            raise ValuationError("∞ 是保留标签，不能出现在值集中")
        if self.levels.shape != (self.carrier.size,):
            raise ValuationError(f"赋值表长度 {self.levels.shape} 与载体规模 {self.carrier.size} 不符")
        if (self.levels < 0).any() or (self.levels > len(self.values)).any():
            raise ValuationError("赋值表引用了值集之外的标签")

    @property
    def inf_level(self) -> int:
        return len(self.values)

    def level_of(self, label: str) -> int:
        try:
            return self.values.index(label)
        except ValueError:
            raise ValuationError(f"未知标签 {label!r}，值集为 {self.values}") from None

    def label(self, level: int) -> str:
        return INFINITY_LABEL if level == self.inf_level else self.values[level]

    def value(self, g: Sequence[int]) -> str:
        return self.label(int(self.levels[self.carrier.index_of(g)]))

    @cached_property
    def image(self) -> tuple[str, ...]:
        used = sorted({int(x) for x in self.levels if x != self.inf_level})
        return tuple(self.values[i] for i in used)

    def table(self) -> dict[str, str]:
        return {
            str(g): self.label(int(level))
            for g, level in zip(self.carrier.elements, self.levels, strict=True)
        }

    def __repr__(self) -> str:
        return f"Valuation({self.carrier.label}, values={list(self.values)})"


@traced_check
def check_valuation(v: Valuation) -> CheckResult:
    """穷举检查 v(g)=∞ ⟺ g=0 与 v(g−h) ≥ min(v(g), v(h))，窗口外的差计为跳过"""
    carrier = v.carrier
    lv, z, n = v.levels, carrier.zero, carrier.size

    infinite = lv == v.inf_level
    infinite[z] = not infinite[z]
    bad = np.flatnonzero(infinite)
    if bad.size:
        g = int(bad[0])
        return CheckResult("v(g)=∞⟺g=0", False, (carrier.elements[g],), n)

    diff = carrier.sub_table
    valid = diff != -1
    ultrametric = lv[diff] >= np.minimum(lv[:, None], lv[None, :])
    hits = np.argwhere(valid & ~ultrametric)
    skipped = int((~valid).sum())
    if hits.size:
        g, h = int(hits[0][0]), int(hits[0][1])
        return CheckResult(
            "v(g−h)≥min(v(g),v(h))",
            False,
            (carrier.elements[g], carrier.elements[h]),
            n + n * n,
            skipped,
        )
    return CheckResult("valuation axioms", True, instances=n + n * n, skipped=skipped)


def valuational_qo(v: Valuation) -> QO:
    """g ≾ h ⟺ v(g) ≥ v(h)；0 是严格最小元"""
    verdict = check_valuation(v)
    if not verdict.passed:
        raise ValuationError(f"不是赋值: {verdict.name} {verdict.witness}", witness=verdict.witness)
    lv = v.levels
    ranks = (v.inf_level - lv).astype(np.int64)
    return QO(
        v.carrier,
        Provenance.VALUATIONAL,
        comparator=lambda g, h: bool(lv[g] >= lv[h]),
        given_ranks=ranks,
    )


def level_set(v: Valuation, gamma: str, kind: LevelKind) -> SubgroupDesc:
    """G^γ 或 G_γ，并断言它是子群"""
    level = v.level_of(gamma)
    lv = v.levels
    mask = lv >= level if kind is LevelKind.GEQ else lv > level
    members = [int(i) for i in np.flatnonzero(mask)]
    try:
        return subgroup_from_members(v.carrier, members)
    except SubgroupError as e:
        raise TheoremViolation(f"层集 {kind.value}({gamma}) 不是子群", witness=e.witness) from e


def level_sets(v: Valuation, kind: LevelKind) -> dict[str, SubgroupDesc]:
    return {label: level_set(v, label, kind) for label in v.image}


def evaluate_v_compatible(v: Valuation, qo: QO) -> CheckResult:
    """0 ≾ g ≾ h 推出 v(g) ≥ v(h)；反例为 (g, h)。不记录日志，供批量枚举使用"""
    if qo.carrier.elements != v.carrier.elements:
        raise PreconditionError(f"载体不同: {v.carrier} vs {qo.carrier}")
    carrier = qo.carrier
    r, lv, z = qo.ranks, v.levels, carrier.zero
    cond = (r >= r[z])[:, None] & (r[:, None] <= r[None, :])
    broken = cond & (lv[:, None] < lv[None, :])
    hits = np.argwhere(broken)
    n = carrier.size
    if hits.size:
        g, h = int(hits[0][0]), int(hits[0][1])
        return CheckResult(
            "0≾g≾h⇒v(g)≥v(h)", False, (carrier.elements[g], carrier.elements[h]), n * n
        )
    return CheckResult("0≾g≾h⇒v(g)≥v(h)", True, instances=n * n)


@traced_check
def check_v_compatible(v: Valuation, qo: QO) -> CheckResult:
    return evaluate_v_compatible(v, qo)


def is_coarsening(v: Valuation, w: Valuation) -> CheckResult:
    """v 是 w 的粗化：v 与 w 诱导的拟序相容"""
    return check_v_compatible(v, valuational_qo(w))


@traced_check
def check_level_convexity(qo: QO, v: Valuation, kind: LevelKind) -> CheckResult:
    """对每个 γ 检查 G^γ（或 G_γ）是 ≾-凸的；反例为 (γ, b, a, c)"""
    instances = 0
    for label, sub in level_sets(v, kind).items():
        verdict = check_convex(qo, sub)
        instances += verdict.instances
        if not verdict.passed:
            assert verdict.witness is not None
            return CheckResult(f"{kind.value}-levels convex", False, (label, *verdict.witness), instances)
    return CheckResult(f"{kind.value}-levels convex", True, instances=instances)


@traced_check
def check_nonneg_level_convexity(qo: QO, v: Valuation) -> CheckResult:
    """对每个 γ 检查 {g ∈ G_γ : 0 ≾ g} 是 ≾-凸的"""
    r, z = qo.ranks, qo.carrier.zero
    instances = 0
    for label, sub in level_sets(v, LevelKind.GT).items():
        nonneg = [g for g in sub.indices if r[g] >= r[z]]
        verdict = check_convex(qo, nonneg)
        instances += verdict.instances
        if not verdict.passed:
            assert verdict.witness is not None
            return CheckResult("(G_γ)^{≿0} convex", False, (label, *verdict.witness), instances)
    return CheckResult("(G_γ)^{≿0} convex", True, instances=instances)


def same_valuation(v: Valuation, w: Valuation) -> bool:
    """在值集的保序重标号意义下比较两个赋值"""
    if v.carrier.elements != w.carrier.elements:
        return False
    _, a = np.unique(v.levels, return_inverse=True)
    _, b = np.unique(w.levels, return_inverse=True)
    return bool(np.array_equal(a, b))


# ---------------------------------------------------------------------------
# 构造器


def _carrier_of(group: GroupSpec | Carrier) -> Carrier:
    return group.carrier if isinstance(group, GroupSpec) else group


def _from_levels(carrier: Carrier, raw: Sequence[int]) -> Valuation:
    """raw 为整数值，None 之外的值按大小重标号；零元素取 ∞"""
    image = sorted({int(x) for i, x in enumerate(raw) if i != carrier.zero})
    position = {x: i for i, x in enumerate(image)}
    levels = np.array(
        [len(image) if i == carrier.zero else position[int(x)] for i, x in enumerate(raw)],
        dtype=np.int64,
    )
    return Valuation(carrier, tuple(str(x) for x in image), levels)


def trivial_valuation(group: GroupSpec | Carrier) -> Valuation:
    carrier = _carrier_of(group)
    return _from_levels(carrier, [0] * carrier.size)


def _p_part(value: int, p: int) -> int:
    k = 0
    while value % p == 0:
        value //= p
        k += 1
    return k


def padic_valuation(group: GroupSpec, p: int) -> Valuation:
    """
    p-进赋值：窗口 ℤ 上 v(g) = max{k : p^k | g}；
    ℤ/n 上取 min(v_p(g), v_p(n))，使层集为子群链
    """
    if p < 2:
        raise ValuationError(f"p 必须 ≥ 2: {p}")
    if group.dimension != 1:
        raise ValuationError(f"p-进赋值只定义在一维群上: {group}")
    carrier = group.carrier
    cap = _p_part(group.factors[0], p) if group.is_finite else None
    raw = []
    for g in carrier.elements:
        x = g[0]
        if x == 0:
            raw.append(0)
            continue
        k = _p_part(abs(x), p)
        raw.append(k if cap is None else min(k, cap))
    return _from_levels(carrier, raw)


def coordinate_valuation(group: GroupSpec) -> Valuation:
    """v(g) = 第一个非零坐标的下标；ℤ² 上 G^1 即第二个坐标轴"""
    carrier = group.carrier
    raw = [next((k for k, c in enumerate(g) if c != 0), 0) for g in carrier.elements]
    return _from_levels(carrier, raw)


def floor_valuation(v: Valuation, k: int) -> Valuation:
    """⌊v/k⌋，要求标签为整数；得到 v 的一个粗化"""
    if k < 1:
        raise ValuationError(f"k 必须 ≥ 1: {k}")
    try:
        numeric = [int(label) for label in v.values]
    except ValueError:
        raise ValuationError(f"标签不是整数，无法取整: {v.values}") from None
    raw = [0 if lv == v.inf_level else numeric[lv] // k for lv in (int(x) for x in v.levels)]
    return _from_levels(v.carrier, raw)


def valuation_from_table(
    group: GroupSpec | Carrier,
    values: Sequence[str],
    table: Mapping[tuple[int, ...], str],
) -> Valuation:
    """由标签表构造赋值；零元素的条目可以省略（隐含 ∞）"""
    carrier = _carrier_of(group)
    labels = tuple(values)
    position = {label: i for i, label in enumerate(labels)}
    levels = np.full(carrier.size, -1, dtype=np.int64)
    levels[carrier.zero] = len(labels)
    for coords, label in table.items():
        i = carrier.index_of(coords)
        if label == INFINITY_LABEL:
            levels[i] = len(labels)
        elif label in position:
            levels[i] = position[label]
        else:
            raise ValuationError(f"未知标签 {label!r}，值集为 {labels}")
    missing = np.flatnonzero(levels < 0)
    if missing.size:
        raise ValuationError(f"赋值表缺少元素 {carrier.elements[int(missing[0])]}")
    return Valuation(carrier, labels, levels)


def chain_valuations(group: GroupSpec) -> list[Valuation]:
    """
    有限群上的全部赋值：每条严格递增子群链 {0}=H_k ⊊ … ⊊ H_0=G 给出 v(g)=max{i : g∈H_i}
    """
    carrier = group.carrier
    subgroups = all_subgroups(group)
    whole = frozenset(range(carrier.size))
    chains: list[list[SubgroupDesc]] = []

    def extend(chain: list[SubgroupDesc]) -> None:
        top = chain[-1]
        if top.members == whole:
            chains.append(chain)
            return
        for sub in subgroups:
            if top.members < sub.members:
                extend([*chain, sub])

    extend([subgroups[0]])

    result = []
    for chain in chains:
        # chain 自下而上：chain[0]={0}, chain[-1]=G；标签 i 对应 H_i，H_0 = G
        top_down = chain[::-1]
        k = len(top_down) - 1
        levels = np.zeros(carrier.size, dtype=np.int64)
        for i, sub in enumerate(top_down):
            for g in sub.indices:
                levels[g] = i
        levels[carrier.zero] = k
        result.append(Valuation(carrier, tuple(str(i) for i in range(k)), levels))
    logger.debug(f"{group} 上共有 {len(result)} 个链赋值")
    return result
