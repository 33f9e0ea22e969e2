"""
商群上的诱导拟序、族的提升、四条件等价定理以及 Baer-Krull 双射

族 (≾_γ) 的每个成员定义在 G^γ/G_γ 的代表元载体上；不同 γ 的代表元各自独立选取，
族相等指投影到代表元后关系逐对相等。
"""

import itertools
import logging
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np

from .config import get_config
from .enumeration import weak_orders
from .errors import (
    InducedNotTransitive,
    NotConvex,
    NotTransitive,
    PreconditionError,
    QuasiOrderError,
    TheoremViolation,
    ZeroClassFat,
)
from .groups import Carrier, QuotientView, SubgroupDesc, quotient
from .orders import OrderSpec, check_order, omega, omega_preimage, order_qo, same_order
from .qo_core import (
    QO,
    AxiomId,
    Provenance,
    check_convex,
    check_initial_segment,
    classify,
    evaluate_axiom,
    o_type_set,
    qo_from_matrix,
    qo_from_ranks,
    qo_from_relation,
    witness_elements,
)
from .results import CheckResult
from .valuations import (
    LevelKind,
    Valuation,
    check_level_convexity,
    check_v_compatible,
    check_valuation,
    evaluate_v_compatible,
    is_coarsening,
    level_set,
    valuational_qo,
)

logger = logging.getLogger(__name__)


class QOClass(Enum):
    COMPATIBLE = "compatible"
    CQO = "cqo"

    @property
    def axioms(self) -> tuple[AxiomId, ...]:
        if self is QOClass.COMPATIBLE:
            return (AxiomId.Q1, AxiomId.Q2)
        return (AxiomId.C_AXIOMS,)


def level_quotient(v: Valuation, gamma: str) -> QuotientView:
    """G^γ/G_γ"""
    return quotient(
        v.carrier,
        level_set(v, gamma, LevelKind.GT),
        ambient=level_set(v, gamma, LevelKind.GEQ),
    )


def level_quotients(v: Valuation) -> dict[str, QuotientView]:
    return {gamma: level_quotient(v, gamma) for gamma in v.values}


@dataclass(frozen=True, eq=False)
class QOFamily:
    """Baer-Krull 数据：对值集中每个 γ，给出 G^γ/G_γ 上的拟序"""

    valuation: Valuation
    members: Mapping[str, QO]
    views: Mapping[str, QuotientView]

    def __post_init__(self) -> None:
        missing = [g for g in self.valuation.values if g not in self.members]
        if missing:
            raise PreconditionError(f"族缺少层 {missing}")
        for gamma, member in self.members.items():
            view = self.views[gamma]
            if member.carrier.elements != view.carrier.elements:
                raise PreconditionError(
                    f"层 {gamma} 的拟序载体 {member.carrier} 与商 {view.carrier} 不符"
                )

    @classmethod
    def build(cls, v: Valuation, members: Mapping[str, QO]) -> "QOFamily":
        return cls(v, dict(members), level_quotients(v))

    def same_members(self, other: "QOFamily") -> dict[str, bool]:
        return {
            gamma: self.members[gamma].same_relation(other.members[gamma]) is None
            for gamma in self.valuation.values
        }

    def describe(self) -> dict[str, str]:
        return {gamma: qo.describe() for gamma, qo in self.members.items()}


def _coset_extremes(qo: QO, view: QuotientView) -> tuple[np.ndarray, np.ndarray]:
    r = qo.ranks
    lo = np.full(view.size, np.iinfo(np.int64).max, dtype=np.int64)
    hi = np.full(view.size, np.iinfo(np.int64).min, dtype=np.int64)
    for g, p in view.projection.items():
        lo[p] = min(lo[p], r[g])
        hi[p] = max(hi[p], r[g])
    return lo, hi


def induce_on_quotient(
    qo: QO,
    H: SubgroupDesc,
    ambient: SubgroupDesc | None = None,
    gate: bool = True,
) -> QO:
    """
    在 K/H 上计算 g₁+H ≾ g₂+H ⟺ ∃h₁,h₂∈H: g₁+h₁ ≾ g₂+h₂（K 缺省为整个载体）

    gate=True 时先要求拟序满足 (*)，不满足抛出 PreconditionError；再检查 H 在 K 内的凸性
    并以 NotConvex 短路，两者都满足时构造必须成功；
    gate=False 时直接计算存在式关系，失败抛出 InducedNotTransitive 或 ZeroClassFat。
    """
    view = quotient(qo.carrier, H, ambient)
    if gate:
        star = evaluate_axiom(qo, AxiomId.STAR)
        if not star.passed:
            raise PreconditionError(f"拟序不满足 (*)，不能在商上诱导: {star.witness}", witness=star.witness)
        convex = check_convex(qo, H, within=ambient)
        if not convex.passed:
            raise NotConvex(f"{H} 不是 ≾-凸的: {convex.witness}", witness=convex.witness)

    lo, hi = _coset_extremes(qo, view)
    relation = lo[:, None] <= hi[None, :]
    try:
        induced = qo_from_matrix(view.carrier, relation, Provenance.INDUCED)
        zero = view.carrier.zero
        fat = [int(p) for p in np.flatnonzero(relation[zero] & relation[:, zero]) if p != zero]
        if fat:
            w = witness_elements(view.carrier, (fat[0], zero))
            raise ZeroClassFat(f"cl(0+H) 含有其他陪集: {w}", witness=w)
    except (NotTransitive, ZeroClassFat) as e:
        if gate:
            raise TheoremViolation(f"凸子群 {H} 上的诱导失败: {e}", witness=e.witness) from e
        if isinstance(e, NotTransitive) and not isinstance(e, InducedNotTransitive):
            raise InducedNotTransitive(str(e), witness=e.witness) from e
        raise
    return induced


def induce_family(qo: QO, v: Valuation) -> QOFamily:
    """对每个 γ 把 ≾ 限制到 G^γ 并诱导到 G^γ/G_γ 上"""
    compatible = check_v_compatible(v, qo)
    if not compatible.passed:
        raise PreconditionError(f"v 与拟序不相容: {compatible.witness}", witness=compatible.witness)
    views = level_quotients(v)
    members = {
        gamma: induce_on_quotient(qo, view.subgroup, ambient=view.ambient)
        for gamma, view in views.items()
    }
    return QOFamily(v, members, views)


def lift_family(fam: QOFamily) -> QO:
    """g ≾ h ⟺ g+G_γ ≾_γ h+G_γ，γ = min(v(g), v(h))"""
    v = fam.valuation
    carrier = v.carrier
    lv = v.levels
    n = carrier.size
    level = np.minimum(lv[:, None], lv[None, :])
    relation = np.ones((n, n), dtype=np.bool_)

    projections: dict[int, np.ndarray] = {}
    for i, gamma in enumerate(v.values):
        view = fam.views[gamma]
        proj = np.full(n, -1, dtype=np.int64)
        for g, p in view.projection.items():
            proj[g] = p
        projections[i] = proj
        rows, cols = np.nonzero(level == i)
        if rows.size == 0:
            continue
        r = fam.members[gamma].ranks
        relation[rows, cols] = r[proj[rows]] <= r[proj[cols]]

    def comparator(g: int, h: int) -> bool:
        gamma = min(int(lv[g]), int(lv[h]))
        if gamma == v.inf_level:
            return True
        proj = projections[gamma]
        member = fam.members[v.values[gamma]]
        return member.le(int(proj[g]), int(proj[h]))

    return qo_from_relation(carrier, relation, comparator, Provenance.LIFTED)


# ---------------------------------------------------------------------------
# 等价定理


@dataclass(frozen=True)
class EquivReport:
    conditions: tuple[bool, bool, bool, bool]
    witnesses: dict[int, Any] = field(default_factory=dict)
    moreover: bool | None = None

    @property
    def agree(self) -> bool:
        return len(set(self.conditions)) == 1

    def to_dict(self) -> dict[str, Any]:
        return {
            "conditions": list(self.conditions),
            "agree": self.agree,
            "witnesses": {str(k): str(w) for k, w in self.witnesses.items()},
            "moreover": self.moreover,
        }


def _class_gate(qo: QO, qo_class: QOClass) -> None:
    for axiom in qo_class.axioms:
        verdict = evaluate_axiom(qo, axiom)
        if not verdict.passed:
            raise PreconditionError(
                f"拟序不属于 {qo_class.value} 类: {verdict.name} {verdict.witness}",
                witness=verdict.witness,
            )


def _induced_members(qo: QO, v: Valuation, qo_class: QOClass) -> tuple[dict[str, QO], Any]:
    """条件 (3)：不经凸性短路，直接在每个 G^γ/G_γ 上诱导并检查所属类"""
    members: dict[str, QO] = {}
    for gamma, view in level_quotients(v).items():
        try:
            induced = induce_on_quotient(qo, view.subgroup, ambient=view.ambient, gate=False)
        except (InducedNotTransitive, ZeroClassFat) as e:
            return members, (gamma, type(e).__name__, e.witness)
        for axiom in qo_class.axioms:
            verdict = evaluate_axiom(induced, axiom)
            if not verdict.passed:
                return members, (gamma, verdict.name, verdict.witness)
        members[gamma] = induced
    return members, None


def check_equiv_theorem(qo: QO, v: Valuation, qo_class: QOClass) -> EquivReport:
    """
    分别计算四个条件：
    (1) 所有 G^γ 凸 (2) 所有 G_γ 凸 (3) 每个商上诱导出同类拟序 (4) v 相容

    四者都成立时再检查：拟序为赋值型/序（相容类）或 v 型/o 型（C 类）当且仅当每个 ≾_γ 是
    """
    _class_gate(qo, qo_class)
    c1 = check_level_convexity(qo, v, LevelKind.GEQ)
    c2 = check_level_convexity(qo, v, LevelKind.GT)
    members, c3_witness = _induced_members(qo, v, qo_class)
    c4 = check_v_compatible(v, qo)

    conditions = (c1.passed, c2.passed, c3_witness is None, c4.passed)
    witnesses: dict[int, Any] = {}
    for i, verdict in ((1, c1), (2, c2), (4, c4)):
        if not verdict.passed:
            witnesses[i] = verdict.witness
    if c3_witness is not None:
        witnesses[3] = c3_witness

    moreover: bool | None = None
    if all(conditions):
        moreover = _moreover_clause(qo, list(members.values()), qo_class)

    report = EquivReport(conditions, witnesses, moreover)
    if not report.agree or moreover is False:
        logger.error(f"等价定理在 {qo!r} 与 {v!r} 上不成立: {report.to_dict()}")
    return report


def _moreover_clause(qo: QO, members: Sequence[QO], qo_class: QOClass) -> bool:
    whole = classify(qo)
    parts = [classify(m) for m in members]
    if qo_class is QOClass.COMPATIBLE:
        return whole.is_valuational == all(p.is_valuational for p in parts) and whole.is_order == all(
            p.is_order for p in parts
        )
    return whole.all_v == all(p.all_v for p in parts) and whole.all_o == all(p.all_o for p in parts)


# ---------------------------------------------------------------------------
# Baer-Krull


@dataclass(frozen=True)
class FromFamily:
    family: QOFamily


@dataclass(frozen=True)
class FromQO:
    qo: QO


@dataclass(frozen=True)
class RoundTripReport:
    direction: str
    passed: bool
    per_level: dict[str, bool]
    witness: Any = None
    skipped: int = 0
    type_transfer: bool = True

    def to_dict(self) -> dict[str, Any]:
        return {
            "direction": self.direction,
            "passed": self.passed,
            "per_level": dict(self.per_level),
            "witness": None if self.witness is None else str(self.witness),
            "skipped": self.skipped,
            "type_transfer": self.type_transfer,
        }


def _type_transfer(whole: QO, members: Sequence[QO]) -> bool:
    kind = classify(whole)
    parts = [classify(m) for m in members]
    return kind.all_v == all(p.all_v for p in parts) and kind.all_o == all(p.all_o for p in parts)


def bk_roundtrip(v: Valuation, side: FromFamily | FromQO) -> RoundTripReport:
    """验证 induce ∘ lift 与 lift ∘ induce 都是恒等，并检查 v 型/o 型的传递"""
    if isinstance(side, FromFamily):
        fam = side.family
        for gamma, member in fam.members.items():
            verdict = evaluate_axiom(member, AxiomId.C_AXIOMS)
            if not verdict.passed:
                raise PreconditionError(
                    f"层 {gamma} 的成员不是 C-拟序: {verdict.witness}", witness=verdict.witness
                )
        lifted = lift_family(fam)
        c_lift = evaluate_axiom(lifted, AxiomId.C_AXIOMS)
        if not c_lift.passed:
            raise TheoremViolation(f"C-拟序族的提升不是 C-拟序: {c_lift.witness}", witness=c_lift.witness)
        back = induce_family(lifted, v)
        per_level = fam.same_members(back)
        passed = all(per_level.values())
        witness = None
        if not passed:
            gamma = next(g for g, ok in per_level.items() if not ok)
            diff = fam.members[gamma].same_relation(back.members[gamma])
            assert diff is not None
            witness = (gamma, witness_elements(fam.views[gamma].carrier, diff))
        transfer = _type_transfer(lifted, list(fam.members.values()))
        return RoundTripReport("family→qo→family", passed and transfer, per_level, witness, 0, transfer)

    qo = side.qo
    verdict = evaluate_axiom(qo, AxiomId.C_AXIOMS)
    if not verdict.passed:
        raise PreconditionError(f"拟序不是 C-拟序: {verdict.witness}", witness=verdict.witness)
    fam = induce_family(qo, v)
    lifted = lift_family(fam)
    skipped = _unprojected_pairs(v, fam.views)
    diff = lifted.same_relation(qo)
    per_level = {gamma: True for gamma in v.values}
    witness = None
    if diff is not None:
        g, h = diff
        gamma = v.label(min(int(v.levels[g]), int(v.levels[h])))
        per_level[gamma] = False
        witness = witness_elements(qo.carrier, diff)
    transfer = _type_transfer(qo, list(fam.members.values()))
    return RoundTripReport(
        "qo→family→qo", diff is None and transfer, per_level, witness, skipped, transfer
    )


def _unprojected_pairs(v: Valuation, views: Mapping[str, QuotientView]) -> int:
    """最小层陪集没有窗口内代表元的元素对个数；连通分支取代表元时恒为 0"""
    lv = v.levels
    missing = 0
    for i, gamma in enumerate(v.values):
        projected = views[gamma].projection
        at_level = [g for g in range(v.carrier.size) if lv[g] == i and g not in projected]
        missing += len(at_level) * v.carrier.size
    return missing


def _cqo_on(carrier: Carrier, cap: int) -> list[QO]:
    """载体上全部 C-拟序；C-拟序以 0 为严格最小元，故只枚举 {0} 为首块的弱序"""
    found = []
    for wo in weak_orders(carrier.size, cap=cap, bottom=carrier.zero):
        qo = qo_from_ranks(carrier, wo.ranks(), Provenance.MATRIX)
        if evaluate_axiom(qo, AxiomId.C_AXIOMS).passed:
            found.append(qo)
    return found


def enumerate_cqo_families(v: Valuation, cap: int | None = None) -> tuple[list[QOFamily], dict[str, int]]:
    """有限商上全部 C-拟序族，以及每层的个数"""
    cap = get_config().enumeration_cap if cap is None else cap
    views = level_quotients(v)
    per_level = {gamma: _cqo_on(view.carrier, cap) for gamma, view in views.items()}
    counts = {gamma: len(qos) for gamma, qos in per_level.items()}
    families = [
        QOFamily(v, dict(zip(per_level, choice, strict=True)), views)
        for choice in itertools.product(*per_level.values())
    ]
    return families, counts


@dataclass(frozen=True)
class BKReport:
    per_level_counts: dict[str, int]
    family_count: int
    oracle_count: int
    roundtrips: list[RoundTripReport]

    @property
    def product_matches(self) -> bool:
        return self.oracle_count == self.family_count

    @property
    def passed(self) -> bool:
        return self.product_matches and all(r.passed for r in self.roundtrips)

    def to_dict(self) -> dict[str, Any]:
        return {
            "per_level_counts": dict(self.per_level_counts),
            "family_count": self.family_count,
            "oracle_count": self.oracle_count,
            "product_matches": self.product_matches,
            "roundtrips": [r.to_dict() for r in self.roundtrips],
            "passed": self.passed,
        }


def bk_verify_all(v: Valuation, cap: int | None = None) -> BKReport:
    """
    对全部 C-拟序族做双向往返，并用穷举出的 v 相容 C-拟序个数核对族的个数
    """
    cap = get_config().enumeration_cap if cap is None else cap
    families, counts = enumerate_cqo_families(v, cap)
    reports = [bk_roundtrip(v, FromFamily(fam)) for fam in families]

    carrier = v.carrier
    oracle: list[QO] = []
    for wo in weak_orders(carrier.size, cap=cap, bottom=carrier.zero):
        qo = qo_from_ranks(carrier, wo.ranks(), Provenance.MATRIX)
        if not evaluate_v_compatible(v, qo).passed:
            continue
        if evaluate_axiom(qo, AxiomId.C_AXIOMS).passed:
            oracle.append(qo)
    reports.extend(bk_roundtrip(v, FromQO(qo)) for qo in oracle)

    report = BKReport(counts, len(families), len(oracle), reports)
    if report.passed:
        logger.info(f"Baer-Krull 往返通过: {carrier}, 族 {len(families)} 个, 穷举 {len(oracle)} 个")
    else:
        logger.warning(f"Baer-Krull 往返失败: {report.to_dict()}")
    return report


# ---------------------------------------------------------------------------
# 推论


@dataclass(frozen=True)
class CoarseningReport:
    components: dict[str, Valuation]
    reconstruction: CheckResult

    @property
    def passed(self) -> bool:
        return self.reconstruction.passed

    def to_dict(self) -> dict[str, Any]:
        return {
            "components": {g: c.table() for g, c in self.components.items()},
            "reconstruction": self.reconstruction.to_dict(),
            "passed": self.passed,
        }


def coarsening_decompose(v: Valuation, w: Valuation) -> CoarseningReport:
    """
    v 是 w 的粗化时，在每个 G^γ/G_γ 上取 w_γ(g+G_γ) := w(g)，
    并验证 (w_γ) 的赋值型拟序族提升回 w 的赋值型拟序
    """
    precondition = is_coarsening(v, w)
    if not precondition.passed:
        raise PreconditionError(f"v 不是 w 的粗化: {precondition.witness}", witness=precondition.witness)

    views = level_quotients(v)
    components: dict[str, Valuation] = {}
    for gamma, view in views.items():
        quotient_carrier = view.carrier
        levels = np.full(view.size, w.inf_level, dtype=np.int64)
        for p in range(view.size):
            if p == quotient_carrier.zero:
                continue
            coset_levels = {int(w.levels[g]) for g in view.coset(p)}
            if len(coset_levels) != 1:
                raise TheoremViolation(
                    f"w 在陪集 {quotient_carrier.elements[p]}+G_{gamma} 上不是常值",
                    witness=(gamma, quotient_carrier.elements[p]),
                )
            levels[p] = coset_levels.pop()
        component = Valuation(quotient_carrier, w.values, levels)
        verdict = check_valuation(component)
        if not verdict.passed:
            raise TheoremViolation(f"w_{gamma} 不是赋值: {verdict.witness}", witness=verdict.witness)
        components[gamma] = component

    fam = QOFamily(v, {g: valuational_qo(c) for g, c in components.items()}, views)
    diff = lift_family(fam).same_relation(valuational_qo(w))
    n = v.carrier.size
    if diff is None:
        reconstruction = CheckResult("lift((w_γ)) = w", True, instances=n * n)
    else:
        reconstruction = CheckResult(
            "lift((w_γ)) = w", False, witness_elements(v.carrier, diff), n * n
        )
    return CoarseningReport(components, reconstruction)


@dataclass(frozen=True)
class OrderCorollaryReport:
    order: OrderSpec
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict[str, Any]:
        return {
            "order": self.order.describe(),
            "checks": [c.to_dict() for c in self.checks],
            "passed": self.passed,
        }


def order_corollary(v: Valuation, orders: Mapping[str, OrderSpec]) -> OrderCorollaryReport:
    """
    序族 (≤_γ) → v 相容的序：经 Ω 原像提升后取 Ω，
    再验证全序性、反对称、平移不变、v 相容，以及诱导回来的序族与原族一致
    """
    views = level_quotients(v)
    for gamma, order in orders.items():
        if order.carrier.elements != views[gamma].carrier.elements:
            raise PreconditionError(f"层 {gamma} 的序不在商 {views[gamma].carrier} 上")

    preimages = QOFamily(v, {g: omega_preimage(o) for g, o in orders.items()}, views)
    lifted = omega(lift_family(preimages))
    as_qo = order_qo(lifted)

    checks = [check_order(lifted), check_v_compatible(v, as_qo)]

    back = induce_family(as_qo, v)
    for gamma, order in orders.items():
        same = back.members[gamma].same_relation(order_qo(order))
        checks.append(
            CheckResult(
                f"induced ≤_{gamma}",
                same is None,
                None if same is None else (gamma, witness_elements(views[gamma].carrier, same)),
                views[gamma].size ** 2,
            )
        )
    report = OrderCorollaryReport(lifted, checks)
    if not report.passed:
        logger.warning(f"序推论检查失败: {report.to_dict()}")
    return report


def order_families(v: Valuation, candidates: Mapping[str, Sequence[OrderSpec]]) -> Iterator[dict[str, OrderSpec]]:
    labels = list(v.values)
    for choice in itertools.product(*(candidates[g] for g in labels)):
        yield dict(zip(labels, choice, strict=True))


def distinct_orders(orders: Sequence[OrderSpec]) -> list[OrderSpec]:
    unique: list[OrderSpec] = []
    for order in orders:
        if not any(same_order(order, seen) for seen in unique):
            unique.append(order)
    return unique


@dataclass(frozen=True)
class LiftFailure:
    family: dict[str, str]
    reason: str
    witness: Any

    def to_dict(self) -> dict[str, Any]:
        return {"family": dict(self.family), "reason": self.reason, "witness": str(self.witness)}


def search_compatible_lift_failures(
    v: Valuation, candidates: Mapping[str, Sequence[QO]]
) -> list[LiftFailure]:
    """
    提升相容拟序族，记录提升不满足 Q1∧Q2 或 o 型元素集不是初始段的族
    """
    failures: list[LiftFailure] = []
    labels = list(v.values)
    views = level_quotients(v)
    for choice in itertools.product(*(candidates[g] for g in labels)):
        members = dict(zip(labels, choice, strict=True))
        fam = QOFamily(v, members, views)
        try:
            lifted = lift_family(fam)
        except QuasiOrderError as e:
            failures.append(LiftFailure(fam.describe(), "not a q.o.", e.witness))
            continue
        for axiom in (AxiomId.Q1, AxiomId.Q2):
            verdict = evaluate_axiom(lifted, axiom)
            if not verdict.passed:
                failures.append(LiftFailure(fam.describe(), verdict.name, verdict.witness))
                break
        else:
            segment = check_initial_segment(lifted, o_type_set(lifted))
            if not segment.passed:
                failures.append(LiftFailure(fam.describe(), "o-type set not initial", segment.witness))
    logger.info(f"相容拟序族的提升检查完成: {len(failures)} 个失败")
    return failures
