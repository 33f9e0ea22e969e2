"""
全拟序的表示与公理检查

拟序统一落到“秩向量”上：g ≾ h 当且仅当 rank[g] <= rank[h]。
外延表示（关系矩阵）在构造时完整校验；内涵表示（比较函数）在首次物化时穷举校验。
所有检查对载体做穷举，反例取枚举序下字典序最小的实例。
"""

import logging
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import TYPE_CHECKING, Any

import numpy as np
import numpy.typing as npt

from .decorators import traced_check
from .errors import NotReflexive, NotTotal, NotTransitive, NotValuational
from .groups import Carrier, GroupElement, GroupSpec, SubgroupDesc, quotient, trivial_subgroup
from .results import CheckResult

if TYPE_CHECKING:
    from .valuations import Valuation

logger = logging.getLogger(__name__)

Comparator = Callable[[int, int], bool]
BoolMatrix = npt.NDArray[np.bool_]
RankVector = npt.NDArray[np.int64]


class Provenance(Enum):
    MATRIX = "matrix"
    VALUATIONAL = "valuational"
    OMEGA_PREIMAGE = "omega-preimage"
    LEX_ORDER = "lex"
    LIFTED = "lift"
    INDUCED = "induced"
    CONE_ORDER = "cone"


class AxiomId(Enum):
    TOTAL = "TOTAL"
    Q1 = "Q1"
    Q2 = "Q2"
    STAR = "STAR"
    C_AXIOMS = "C"

    @classmethod
    def parse(cls, text: str) -> "AxiomId":
        key = text.strip().upper()
        if key == "*":
            return cls.STAR
        for axiom in cls:
            if key in (axiom.name, axiom.value):
                return axiom
        raise ValueError(f"未知公理 {text!r}")


class ElementType(Enum):
    V_TYPE = "v-type"
    O_TYPE = "o-type"


@dataclass(frozen=True)
class QOType:
    all_v: bool
    all_o: bool
    is_order: bool
    is_valuational: bool


@dataclass(frozen=True, eq=False)
class QO:
    """
    载体上的全拟序

    matrix / comparator / ranks 至少给出一个；其余按需物化。
    """

    carrier: Carrier
    provenance: Provenance
    given_matrix: BoolMatrix | None = None
    comparator: Comparator | None = None
    given_ranks: RankVector | None = None

    @property
    def is_extensional(self) -> bool:
        return self.comparator is None

    @cached_property
    def matrix(self) -> BoolMatrix:
        """matrix[g, h] 为 g ≾ h"""
        if self.given_matrix is not None:
            return self.given_matrix
        if self.given_ranks is not None:
            r = self.given_ranks
            return r[:, None] <= r[None, :]
        assert self.comparator is not None
        n = self.carrier.size
        cmp = self.comparator
        m = np.array([[cmp(g, h) for h in range(n)] for g in range(n)], dtype=np.bool_)
        _validate_matrix(self.carrier, m)
        return m

    @cached_property
    def ranks(self) -> RankVector:
        """rank[g] = |{h : h ≾ g}|；全拟序下 g ≾ h ⟺ rank[g] <= rank[h]"""
        if self.given_ranks is not None:
            return self.given_ranks
        return self.matrix.sum(axis=0).astype(np.int64)

    def le(self, g: int, h: int) -> bool:
        return bool(self.ranks[g] <= self.ranks[h])

    def lt(self, g: int, h: int) -> bool:
        return bool(self.ranks[g] < self.ranks[h])

    def equiv(self, g: int, h: int) -> bool:
        return bool(self.ranks[g] == self.ranks[h])

    def compare(self, g: Sequence[int], h: Sequence[int]) -> bool:
        """以坐标给出元素，判断 g ≾ h"""
        return self.le(self.carrier.index_of(g), self.carrier.index_of(h))

    def classes(self) -> list[list[GroupElement]]:
        """按 ≾ 从低到高列出 ∼ 等价类"""
        r = self.ranks
        return [
            [self.carrier.elements[i] for i in np.flatnonzero(r == level)]
            for level in np.unique(r)
        ]

    def same_relation(self, other: "QO") -> tuple[int, int] | None:
        """逐对比较两个拟序，返回第一个不一致的编号对；一致时返回 None"""
        if other.carrier.elements != self.carrier.elements:
            raise ValueError(f"载体不同: {self.carrier} vs {other.carrier}")
        diff = np.argwhere(self.matrix != other.matrix)
        if diff.size == 0:
            return None
        return int(diff[0][0]), int(diff[0][1])

    def restrict(self, sub: SubgroupDesc) -> "QO":
        """限制到子群 K 上，载体为 K 的成员（按枚举序）"""
        view = quotient(self.carrier, trivial_subgroup(self.carrier), ambient=sub)
        ranks = self.ranks[np.array(view.representatives, dtype=np.int64)]
        return QO(view.carrier, self.provenance, given_ranks=ranks)

    def describe(self) -> str:
        parts = []
        for cls in self.classes():
            parts.append("∼".join(_fmt(g) for g in cls))
        return " ≺ ".join(parts)

    def __repr__(self) -> str:
        return f"QO({self.carrier.label}, {self.provenance.value}: {self.describe()})"


def _fmt(g: GroupElement) -> str:
    return str(g[0]) if len(g) == 1 else str(g)


def _witness(carrier: Carrier, *indices: int) -> tuple[GroupElement, ...]:
    return tuple(carrier.elements[i] for i in indices)


def _as_carrier(group: GroupSpec | Carrier) -> Carrier:
    return group.carrier if isinstance(group, GroupSpec) else group


def _validate_matrix(carrier: Carrier, m: BoolMatrix) -> None:
    n = carrier.size
    if m.shape != (n, n):
        raise NotTotal(f"关系矩阵形状 {m.shape} 与载体规模 {n} 不符")

    diag = np.flatnonzero(~np.diag(m))
    if diag.size:
        g = int(diag[0])
        raise NotReflexive(f"{_fmt(carrier.elements[g])} ≾ 自身不成立", witness=_witness(carrier, g))

    as_int = m.astype(np.int64)
    composite = (as_int @ as_int) > 0
    broken = composite & ~m
    rows = np.flatnonzero(broken.any(axis=1))
    if rows.size:
        g = int(rows[0])
        # 字典序最小的 (g, h, f)：先取最小的中间元 h，再取最小的 f
        for h in np.flatnonzero(m[g]):
            fs = np.flatnonzero(m[h] & ~m[g])
            if fs.size:
                w = _witness(carrier, g, int(h), int(fs[0]))
                raise NotTransitive(f"传递性失败: {w}", witness=w)

    missing = np.argwhere(~(m | m.T))
    if missing.size:
        g, h = int(missing[0][0]), int(missing[0][1])
        w = _witness(carrier, g, h)
        raise NotTotal(f"{w[0]} 与 {w[1]} 不可比较", witness=w)


def qo_from_matrix(
    group: GroupSpec | Carrier,
    rows: Sequence[Sequence[int | bool]] | BoolMatrix,
    provenance: Provenance = Provenance.MATRIX,
) -> QO:
    """由 0/1 关系矩阵构造拟序（行列按载体枚举序编号），拒绝非自反、非传递、非全的矩阵"""
    carrier = _as_carrier(group)
    m = np.array(rows, dtype=np.bool_)
    if m.ndim != 2:
        raise NotTotal(f"关系矩阵必须是二维的，收到形状 {m.shape}")
    _validate_matrix(carrier, m)
    return QO(carrier, provenance, given_matrix=m)


def qo_from_ranks(
    group: GroupSpec | Carrier,
    ranks: Sequence[int] | RankVector,
    provenance: Provenance = Provenance.MATRIX,
) -> QO:
    """由秩向量构造拟序；弱序的规范形式，天然全且传递"""
    carrier = _as_carrier(group)
    r = np.asarray(ranks, dtype=np.int64)
    if r.shape != (carrier.size,):
        raise NotTotal(f"秩向量长度 {r.shape} 与载体规模 {carrier.size} 不符")
    return QO(carrier, provenance, given_ranks=r)


def qo_from_comparator(
    group: GroupSpec | Carrier, comparator: Comparator, provenance: Provenance
) -> QO:
    """内涵表示：comparator(g, h) 按编号判断 g ≾ h"""
    return QO(_as_carrier(group), provenance, comparator=comparator)


def qo_from_relation(
    group: GroupSpec | Carrier,
    matrix: BoolMatrix,
    comparator: Comparator,
    provenance: Provenance,
) -> QO:
    """内涵表示，但关系已由调用方向量化算出；矩阵在此校验"""
    carrier = _as_carrier(group)
    _validate_matrix(carrier, matrix)
    return QO(carrier, provenance, given_matrix=matrix, comparator=comparator)


def qo_from_classes(
    group: GroupSpec | Carrier,
    classes: Sequence[Iterable[Sequence[int]]],
    provenance: Provenance = Provenance.MATRIX,
) -> QO:
    """按从低到高的等价类列表构造拟序，便于书写小例子"""
    carrier = _as_carrier(group)
    ranks = np.full(carrier.size, -1, dtype=np.int64)
    for level, block in enumerate(classes):
        for g in block:
            ranks[carrier.index_of(g)] = level
    if (ranks < 0).any():
        missing = _witness(carrier, int(np.flatnonzero(ranks < 0)[0]))
        raise NotTotal(f"等价类没有覆盖载体，缺少 {missing[0]}", witness=missing)
    return qo_from_ranks(carrier, ranks, provenance)


# ---------------------------------------------------------------------------
# 公理检查


def _zero_class(qo: QO) -> CheckResult:
    r, z = qo.ranks, qo.carrier.zero
    same = np.flatnonzero(r == r[z])
    others = [int(g) for g in same if g != z]
    if others:
        return CheckResult(
            "cl(0)={0}", False, _witness(qo.carrier, others[0], z), qo.carrier.size
        )
    return CheckResult("cl(0)={0}", True, instances=qo.carrier.size)


def _first(mask: npt.NDArray[np.bool_]) -> tuple[int, ...] | None:
    hits = np.argwhere(mask)
    if hits.size == 0:
        return None
    return tuple(int(i) for i in hits[0])


def _translation_scan(
    qo: QO, name: str, guard: BoolMatrix
) -> CheckResult:
    """
    扫描 x ≾ y ∧ guard[y, z] ⇒ x+z ≾ y+z

    guard 给出 (y, z) 上的附加前提；越出窗口的实例计为跳过。
    """
    r, add = qo.ranks, qo.carrier.add_table
    n = qo.carrier.size
    le = r[:, None] <= r[None, :]
    cond = le[:, :, None] & guard[None, :, :]
    xz = add[:, None, :]
    yz = add[None, :, :]
    valid = (xz != -1) & (yz != -1)
    concl = r[xz] <= r[yz]
    violation = cond & valid & ~concl
    skipped = int((~valid).sum())
    hit = _first(violation)
    total = n**3
    if hit is None:
        return CheckResult(name, True, instances=total, skipped=skipped)
    return CheckResult(name, False, _witness(qo.carrier, *hit), total, skipped)


def _check_q2(qo: QO) -> CheckResult:
    r = qo.ranks
    return _translation_scan(qo, "x≾y≁z⇒x+z≾y+z", r[:, None] != r[None, :])


def _check_star(qo: QO) -> CheckResult:
    zero = _zero_class(qo)
    if not zero.passed:
        return zero
    r, neg = qo.ranks, qo.carrier.neg_table
    result = _translation_scan(qo, "g≾h≁−f⇒g+f≾h+f", r[:, None] != r[neg][None, :])
    return CheckResult(
        result.name, result.passed, result.witness, result.instances + zero.instances, result.skipped
    )


def _check_total(qo: QO) -> CheckResult:
    m = qo.matrix
    hit = _first(~(m | m.T))
    n = qo.carrier.size
    if hit is None:
        return CheckResult("total", True, instances=n * n)
    return CheckResult("total", False, _witness(qo.carrier, *hit), n * n)


def derived_c(qo: QO, f: int, g: int, h: int) -> bool | None:
    """C(f,g,h) := ¬((f−h) ≾ (g−h))；差越出窗口时返回 None"""
    sub = qo.carrier.sub_table
    a, b = int(sub[f, h]), int(sub[g, h])
    if a == -1 or b == -1:
        return None
    return not qo.le(a, b)


def _check_c_axioms(qo: QO) -> CheckResult:
    """
    对导出的三元关系检查 C-关系公理

    导出关系只依赖差 f−h、g−h，因此按平移把最后一个变元归一为 0 后量化。
    """
    carrier = qo.carrier
    r, z, n = qo.ranks, carrier.zero, carrier.size
    sub = carrier.sub_table
    c0 = r[:, None] > r[None, :]  # c0[x, y] = C(x, y, 0)
    instances = 0
    skipped = 0

    # x≠y ⇒ C(x,y,y)，归一后即 0 ≺ x 对所有 x≠0
    instances += n
    root = c0[:, z].copy()
    root[z] = True
    hit = _first(~root)
    if hit is not None:
        return CheckResult(
            "x≠y⇒C(x,y,y)", False, _witness(carrier, hit[0], z, z), instances
        )

    # C(x,y,0) ⇒ ¬C(y,x,0)
    instances += n * n
    hit = _first(c0 & c0.T)
    if hit is not None:
        return CheckResult(
            "C(x,y,z)⇒¬C(y,x,z)", False, _witness(carrier, hit[0], hit[1], z), instances
        )

    # C(x,y,0) ⇒ C(x,0,y)，其中 C(x,0,y) = ¬(x−y ≾ −y)
    instances += n * n
    diff = sub  # diff[x, y] = x − y
    minus_y = carrier.neg_table[None, :]  # −y
    valid = diff != -1
    skipped += int((~valid).sum())
    swapped = r[diff] > r[minus_y]
    hit = _first(c0 & valid & ~swapped)
    if hit is not None:
        return CheckResult(
            "C(x,y,z)⇒C(x,z,y)", False, _witness(carrier, hit[0], hit[1], z), instances, skipped
        )

    # C(x,y,0) ⇒ C(w,y,0) ∨ C(x,w,0)，按 (x, y, w) 量化
    instances += n**3
    broken = c0[:, :, None] & ~c0.T[None, :, :] & ~c0[:, None, :]
    hit = _first(broken)
    if hit is not None:
        x, y, w = hit
        return CheckResult(
            "C(x,y,z)⇒C(w,y,z)∨C(x,w,z)",
            False,
            _witness(carrier, x, y, z, w),
            instances,
            skipped,
        )
    return CheckResult("C-relation axioms", True, instances=instances, skipped=skipped)


_AXIOM_CHECKS: dict[AxiomId, Callable[[QO], CheckResult]] = {
    AxiomId.TOTAL: _check_total,
    AxiomId.Q1: _zero_class,
    AxiomId.Q2: _check_q2,
    AxiomId.STAR: _check_star,
    AxiomId.C_AXIOMS: _check_c_axioms,
}


def evaluate_axiom(qo: QO, axiom: AxiomId) -> CheckResult:
    """不记录日志的公理检查，供批量枚举使用"""
    result = _AXIOM_CHECKS[axiom](qo)
    name = f"{axiom.value}: {result.name}"
    return CheckResult(name, result.passed, result.witness, result.instances, result.skipped)


@traced_check
def check_axiom(qo: QO, axiom: AxiomId) -> CheckResult:
    """对载体做穷举量化，失败时返回第一个反例"""
    return evaluate_axiom(qo, axiom)


def passes(qo: QO, *axioms: AxiomId) -> bool:
    """依次检查多个公理，遇到失败即返回"""
    return all(_AXIOM_CHECKS[a](qo).passed for a in axioms)


def check_translation_invariance(qo: QO) -> CheckResult:
    """
    检查导出关系 C(f,g,h) = C(f+x,g+x,h+x)

    量化 n^4 个实例，只适合小载体。
    """
    carrier = qo.carrier
    r, sub, add, n = qo.ranks, carrier.sub_table, carrier.add_table, carrier.size
    fh = sub[:, None, :]
    gh = sub[None, :, :]
    base_valid = (fh != -1) & (gh != -1)
    base = r[fh] > r[gh]
    skipped = 0
    for x in range(n):
        shift = add[:, x]
        sf, sg, sh = shift[:, None, None], shift[None, :, None], shift[None, None, :]
        inside = (sf != -1) & (sg != -1) & (sh != -1)
        a = np.where(inside, sub[sf, sh], -1)
        b = np.where(inside, sub[sg, sh], -1)
        valid = base_valid & inside & (a != -1) & (b != -1)
        skipped += int((~valid).sum())
        moved = r[a] > r[b]
        hit = _first(valid & (moved != base))
        if hit is not None:
            return CheckResult(
                "C(f,g,h)=C(f+x,g+x,h+x)", False, _witness(carrier, *hit, x), n**4, skipped
            )
    return CheckResult("C(f,g,h)=C(f+x,g+x,h+x)", True, instances=n**4, skipped=skipped)


# ---------------------------------------------------------------------------
# 元素类型与分类


def element_type(qo: QO, g: Sequence[int]) -> ElementType:
    """g ∼ −g 为 v 型；g ≁ −g 或 g = 0 为 o 型"""
    i = qo.carrier.index_of(g)
    return _element_type(qo, i)


def _element_type(qo: QO, i: int) -> ElementType:
    if i == qo.carrier.zero:
        return ElementType.O_TYPE
    return ElementType.V_TYPE if qo.equiv(i, qo.carrier.neg(i)) else ElementType.O_TYPE


def o_type_set(qo: QO) -> frozenset[int]:
    r, neg = qo.ranks, qo.carrier.neg_table
    mask = r != r[neg]
    mask[qo.carrier.zero] = True
    return frozenset(int(i) for i in np.flatnonzero(mask))


def classify(qo: QO) -> QOType:
    r, neg, z = qo.ranks, qo.carrier.neg_table, qo.carrier.zero
    nonzero = np.arange(qo.carrier.size) != z
    v_type = r == r[neg]
    all_v = bool(v_type[nonzero].all())
    all_o = bool((~v_type)[nonzero].all())
    # 有挠群上反对称不足以成为序，例如 Z/2 上的 0 ≺ a
    n = qo.carrier.size
    is_order = int(np.unique(r).size) == n and _translation_scan(
        qo, "x≤y⇒x+z≤y+z", np.ones((n, n), dtype=np.bool_)
    ).passed
    try:
        natural_valuation(qo)
        is_valuational = True
    except NotValuational:
        is_valuational = False
    return QOType(all_v=all_v, all_o=all_o, is_order=is_order, is_valuational=is_valuational)


def natural_valuation(qo: QO) -> "Valuation":
    """
    从拟序反推赋值

    值集取非零 ∼ 类，按 ≾ 的逆序排列，cl(0) 映到 ∞；
    只有当结果满足赋值公理且重新诱导出原拟序时才成功。
    """
    from .valuations import Valuation, check_valuation, valuational_qo

    carrier = qo.carrier
    zero = _zero_class(qo)
    if not zero.passed:
        raise NotValuational(f"cl(0) 不是 {{0}}: {zero.witness}", witness=zero.witness)

    r, z = qo.ranks, carrier.zero
    levels = sorted({int(x) for i, x in enumerate(r) if i != z}, reverse=True)
    label_of = {level: i for i, level in enumerate(levels)}
    table = np.array(
        [len(levels) if i == z else label_of[int(r[i])] for i in range(carrier.size)],
        dtype=np.int64,
    )
    v = Valuation(carrier, tuple(str(i) for i in range(len(levels))), table)

    axioms = check_valuation(v)
    if not axioms.passed:
        raise NotValuational(f"赋值公理失败: {axioms.name} {axioms.witness}", witness=axioms.witness)
    diff = valuational_qo(v).same_relation(qo)
    if diff is not None:
        w = _witness(carrier, *diff)
        raise NotValuational(f"重新诱导的拟序在 {w} 处不同", witness=w)
    return v


# ---------------------------------------------------------------------------
# 凸性与初始段


def _index_set(carrier: Carrier, S: Iterable[int] | SubgroupDesc) -> frozenset[int]:
    if isinstance(S, SubgroupDesc):
        return S.members
    return frozenset(int(i) for i in S)


@traced_check
def check_convex(
    qo: QO,
    S: Iterable[int] | SubgroupDesc,
    within: Iterable[int] | SubgroupDesc | None = None,
) -> CheckResult:
    """
    S 是 ≾-凸的：不存在 a ∉ S 与 b, c ∈ S 使 b ≾ a ≾ c

    within 限定 a 的取值范围（在子群内部讨论凸性时使用），反例为 (b, a, c)。
    """
    carrier = qo.carrier
    members = _index_set(carrier, S)
    universe = (
        _index_set(carrier, within) if within is not None else frozenset(range(carrier.size))
    )
    inside = sorted(members)
    outside = sorted(universe - members)
    instances = len(inside) ** 2 * len(outside)
    if not inside or not outside:
        return CheckResult("convex", True, instances=instances)

    r = qo.ranks
    hi = max(int(r[c]) for c in inside)
    for b in inside:
        for a in outside:
            if r[b] <= r[a] <= hi:
                c = next(c for c in inside if r[a] <= r[c])
                return CheckResult("convex", False, _witness(carrier, b, a, c), instances)
    return CheckResult("convex", True, instances=instances)


@traced_check
def check_initial_segment(
    qo: QO, S: Iterable[int] | SubgroupDesc
) -> CheckResult:
    """S 是初始段：a ≾ b 且 b ∈ S 推出 a ∈ S；反例为 (a, b)"""
    carrier = qo.carrier
    members = _index_set(carrier, S)
    r = qo.ranks
    instances = len(members) * (carrier.size - len(members))
    if not members:
        return CheckResult("initial segment", True, instances=instances)
    hi = max(int(r[b]) for b in members)
    for a in range(carrier.size):
        if a in members or r[a] > hi:
            continue
        b = next(b for b in sorted(members) if r[a] <= r[b])
        return CheckResult("initial segment", False, _witness(carrier, a, b), instances)
    return CheckResult("initial segment", True, instances=instances)


def witness_elements(carrier: Carrier, indices: Sequence[int]) -> tuple[GroupElement, ...]:
    return _witness(carrier, *indices)


def as_jsonable(qo: QO) -> dict[str, Any]:
    return {
        "carrier": qo.carrier.label,
        "provenance": qo.provenance.value,
        "classes": [[list(g) for g in cls] for cls in qo.classes()],
    }
