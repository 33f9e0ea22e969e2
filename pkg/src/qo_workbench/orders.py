"""
正锥给出的群序、Ω 映射及其原像构造、字典序构造器
"""

import functools
import itertools
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .decorators import traced_check
from .errors import (
    ConeError,
    PreconditionError,
    SpecMismatchError,
    TheoremViolation,
    UndecidableComparison,
)
from .groups import Carrier, GroupElement, GroupSpec, QuotientView
from .qo_core import QO, AxiomId, Provenance, evaluate_axiom, o_type_set, witness_elements
from .results import CheckResult

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PositiveCone:
    carrier: Carrier
    members: frozenset[int]

    def __contains__(self, index: object) -> bool:
        return index in self.members

    def elements(self) -> list[GroupElement]:
        return [self.carrier.elements[i] for i in sorted(self.members)]


def _carrier_of(group: GroupSpec | Carrier) -> Carrier:
    return group.carrier if isinstance(group, GroupSpec) else group


@traced_check
def check_cone(carrier: Carrier, P: Iterable[int] | PositiveCone) -> CheckResult:
    """P∩−P={0}、P∪−P=G、P+P⊆P 三项分别扫描；窗口外的和计为跳过"""
    members = P.members if isinstance(P, PositiveCone) else frozenset(int(i) for i in P)
    n, z, neg = carrier.size, carrier.zero, carrier.neg_table
    inside = np.zeros(n, dtype=np.bool_)
    inside[list(members)] = True

    both = inside & inside[neg]
    both[z] = not inside[z]
    hit = np.flatnonzero(both)
    if hit.size:
        return CheckResult("P∩−P={0}", False, witness_elements(carrier, (int(hit[0]),)), n)

    hit = np.flatnonzero(~(inside | inside[neg]))
    if hit.size:
        return CheckResult("P∪−P=G", False, witness_elements(carrier, (int(hit[0]),)), 2 * n)

    idx = np.flatnonzero(inside)
    sums = carrier.add_table[np.ix_(idx, idx)]
    valid = sums != -1
    skipped = int((~valid).sum())
    closed = np.where(valid, inside[np.where(valid, sums, 0)], True)
    bad = np.argwhere(~closed)
    instances = 2 * n + idx.size**2
    if bad.size:
        a, b = int(idx[bad[0][0]]), int(idx[bad[0][1]])
        return CheckResult("P+P⊆P", False, witness_elements(carrier, (a, b)), instances, skipped)
    return CheckResult("positive cone", True, instances=instances, skipped=skipped)


@dataclass(frozen=True, eq=False)
class OrderSpec:
    """
    群序：正锥形式，字典序另外记录符号向量与参与比较的坐标

    窗口载体上 h−g 可能越界；字典序直接比较键，一般锥退化为跨 0 比较，仍无法判定时抛出
    UndecidableComparison。
    """

    cone: PositiveCone
    signs: tuple[int, ...] | None = None
    coords: tuple[int, ...] = ()

    @property
    def carrier(self) -> Carrier:
        return self.cone.carrier

    @property
    def is_lex(self) -> bool:
        return self.signs is not None

    def key(self, g: int) -> tuple[int, ...]:
        assert self.signs is not None
        element = self.carrier.elements[g]
        return tuple(s * element[k] for s, k in zip(self.signs, self.coords, strict=True))

    def le(self, g: int, h: int) -> bool:
        """g ≤ h ⟺ h−g ∈ P（按编号）"""
        if self.signs is not None:
            return self.key(g) <= self.key(h)
        d = int(self.carrier.sub_table[h, g])
        if d != -1:
            return d in self.cone
        g_pos, h_pos = g in self.cone, h in self.cone
        if g_pos != h_pos:
            return h_pos
        raise UndecidableComparison(
            f"{self.carrier.elements[h]} − {self.carrier.elements[g]} 越出窗口",
            witness=witness_elements(self.carrier, (g, h)),
        )

    def compare(self, g: Sequence[int], h: Sequence[int]) -> bool:
        return self.le(self.carrier.index_of(g), self.carrier.index_of(h))

    def is_positive(self, g: Sequence[int]) -> bool:
        return self.carrier.index_of(g) in self.cone

    @cached_property
    def ranks(self) -> np.ndarray:
        n = self.carrier.size
        ordered = sorted(
            range(n),
            key=functools.cmp_to_key(lambda a, b: 0 if a == b else (-1 if self.le(a, b) else 1)),
        )
        ranks = np.empty(n, dtype=np.int64)
        ranks[ordered] = np.arange(n, dtype=np.int64)
        return ranks

    def describe(self) -> str:
        if self.signs is not None:
            signs = ",".join("+" if s > 0 else "-" for s in self.signs)
            return f"lex({signs}) on {self.carrier.label}"
        return f"cone({len(self.cone.members)} elements) on {self.carrier.label}"


def same_order(a: OrderSpec, b: OrderSpec) -> bool:
    return a.carrier.elements == b.carrier.elements and a.cone.members == b.cone.members


def _lex_members(carrier: Carrier, signs: Sequence[int], coords: Sequence[int]) -> frozenset[int]:
    members = set()
    for i, g in enumerate(carrier.elements):
        key = [s * g[k] for s, k in zip(signs, coords, strict=True)]
        first = next((c for c in key if c != 0), 0)
        if first >= 0:
            members.add(i)
    return frozenset(members)


def _varying_coords(carrier: Carrier) -> tuple[int, ...]:
    if not carrier.elements:
        return ()
    dim = len(carrier.elements[0])
    return tuple(k for k in range(dim) if any(g[k] != 0 for g in carrier.elements))


def lex_order(group: GroupSpec | Carrier, signs: Sequence[int]) -> OrderSpec:
    """(a_1..a_d) 为正当且仅当第一个非零的 ε_i·a_i > 0"""
    carrier = _carrier_of(group)
    if not carrier.windowed:
        raise ConeError(f"字典序只定义在窗口自由群上: {carrier}")
    signs = tuple(int(s) for s in signs)
    if any(s not in (1, -1) for s in signs):
        raise ConeError(f"符号必须为 ±1: {signs}")
    if isinstance(group, GroupSpec):
        if len(signs) != group.rank:
            raise SpecMismatchError(f"符号个数 {len(signs)} 与秩 {group.rank} 不符")
        coords = tuple(range(group.rank))
    else:
        coords = _varying_coords(carrier)
        if len(signs) != len(coords):
            raise SpecMismatchError(f"符号个数 {len(signs)} 与载体上变化的坐标数 {len(coords)} 不符")
    cone = PositiveCone(carrier, _lex_members(carrier, signs, coords))
    return OrderSpec(cone, signs, coords)


def lex_orders_on(carrier: Carrier) -> list[OrderSpec]:
    """载体上所有在变化坐标上的字典序；符号向量按 (+,+), (+,−), (−,+), (−,−) 的次序"""
    coords = _varying_coords(carrier)
    return [lex_order(carrier, signs) for signs in itertools.product((1, -1), repeat=len(coords))]


def order_from_cone(P: PositiveCone) -> OrderSpec:
    """g ≤ h ⟺ h−g ∈ P；窗口载体上识别出字典序锥时返回字典序形式"""
    verdict = check_cone(P.carrier, P)
    if not verdict.passed:
        raise ConeError(f"不是正锥: {verdict.name} {verdict.witness}", witness=verdict.witness)
    if P.carrier.windowed:
        for lex in lex_orders_on(P.carrier):
            if lex.cone.members == P.members:
                return lex
    return OrderSpec(P)


def order_qo(order: OrderSpec) -> QO:
    """把序看作拟序"""
    provenance = Provenance.LEX_ORDER if order.is_lex else Provenance.CONE_ORDER
    return QO(order.carrier, provenance, comparator=order.le, given_ranks=order.ranks)


@traced_check
def check_order(order: OrderSpec) -> CheckResult:
    """直接用比较函数检查全序性、反对称与窗口内平移不变"""
    carrier = order.carrier
    n = carrier.size
    m = np.array([[order.le(g, h) for h in range(n)] for g in range(n)], dtype=np.bool_)

    hit = np.argwhere(~(m | m.T))
    if hit.size:
        return CheckResult("total", False, witness_elements(carrier, tuple(int(i) for i in hit[0])), n * n)
    twin = m & m.T
    np.fill_diagonal(twin, False)
    hit = np.argwhere(twin)
    if hit.size:
        return CheckResult("antisymmetric", False, witness_elements(carrier, tuple(int(i) for i in hit[0])), n * n)

    add = carrier.add_table
    xz = add[:, None, :]
    yz = add[None, :, :]
    valid = (xz != -1) & (yz != -1)
    moved = m[np.where(xz == -1, 0, xz), np.where(yz == -1, 0, yz)]
    broken = m[:, :, None] & valid & ~moved
    skipped = int((~valid).sum())
    hit = np.argwhere(broken)
    instances = 2 * n * n + n**3
    if hit.size:
        w = witness_elements(carrier, tuple(int(i) for i in hit[0]))
        return CheckResult("g≤h⇒g+f≤h+f", False, w, instances, skipped)
    return CheckResult("group order", True, instances=instances, skipped=skipped)


def cone_from_qo(qo: QO) -> PositiveCone:
    """P := {g : −g ≾ g}，并验证它是 ∼-稳定的正锥"""
    c_axioms = evaluate_axiom(qo, AxiomId.C_AXIOMS)
    if not c_axioms.passed:
        raise PreconditionError(f"不是 C-拟序: {c_axioms.witness}", witness=c_axioms.witness)
    carrier = qo.carrier
    if len(o_type_set(qo)) != carrier.size:
        raise PreconditionError("拟序含有 v 型元素，Ω 没有定义")

    r, neg = qo.ranks, carrier.neg_table
    inside = r[neg] <= r
    P = PositiveCone(carrier, frozenset(int(i) for i in np.flatnonzero(inside)))
    verdict = check_cone(carrier, P)
    if not verdict.passed:
        raise TheoremViolation(f"{{g : −g≾g}} 不是正锥: {verdict.name} {verdict.witness}", witness=verdict.witness)

    # ∼-稳定：同一等价类要么全在 P 中，要么全不在
    for level in np.unique(r):
        block = inside[r == level]
        if block.any() and not block.all():
            cls = np.flatnonzero(r == level)
            g = next(int(i) for i in cls if inside[i])
            h = next(int(i) for i in cls if not inside[i])
            raise TheoremViolation("P 不是 ∼-稳定的", witness=witness_elements(carrier, (g, h)))
    return P


def omega(qo: QO) -> OrderSpec:
    """Ω := order_from_cone ∘ cone_from_qo"""
    return order_from_cone(cone_from_qo(qo))


def omega_preimage(order: OrderSpec) -> QO:
    """
    0 ≺ −P∖{0} 中全部元素（彼此 ∼）≺ P∖{0}，后者内部按 ≤ 排列
    """
    carrier = order.carrier
    z = carrier.zero
    positive = np.zeros(carrier.size, dtype=np.bool_)
    positive[list(order.cone.members)] = True
    ranks = np.where(positive, 2 + order.ranks, 1)
    ranks[z] = 0
    return QO(carrier, Provenance.OMEGA_PREIMAGE, given_ranks=ranks.astype(np.int64))


def induced_cone(P: PositiveCone, view: QuotientView) -> PositiveCone:
    """G/H 上由 P 诱导的序：陪集含有 P 中元素即为正"""
    if view.parent.elements != P.carrier.elements:
        raise PreconditionError(f"商 {view.carrier} 不是 {P.carrier} 的商")
    members = frozenset(view.project(g) for g in P.members if g in view.projection)
    return PositiveCone(view.carrier, members)
