"""
有限阿贝尔群与窗口化自由阿贝尔群 ℤ^d 的表示

元素是整数元组。有限群按各因子取模；窗口群的载体是 {-B..B}^d，
加法越出窗口时返回 OUT_OF_WINDOW 而不是抛异常，下游检查据此计数跳过的实例。
"""

import itertools
import logging
import re
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Literal

import numpy as np
import numpy.typing as npt

from .errors import GroupSpecError, SpecMismatchError, SubgroupError

logger = logging.getLogger(__name__)

GroupElement = tuple[int, ...]
IndexTable = npt.NDArray[np.int64]


class _Window(Enum):
    OUT_OF_WINDOW = "out-of-window"


OUT_OF_WINDOW: Literal[_Window.OUT_OF_WINDOW] = _Window.OUT_OF_WINDOW
OutOfWindow = Literal[_Window.OUT_OF_WINDOW]


class GroupKind(Enum):
    FINITE = "finite"
    FREE_WINDOWED = "free-windowed"


@dataclass(frozen=True, eq=False)
class Carrier:
    """
    带编号的有限载体

    add_table[i, j] 为 i+j 的编号，越出窗口记为 -1；群和商群都通过它参与公理检查。
    """

    label: str
    elements: tuple[GroupElement, ...]
    add_table: IndexTable
    neg_table: IndexTable
    zero: int
    windowed: bool = False

    @cached_property
    def index(self) -> dict[GroupElement, int]:
        return {g: i for i, g in enumerate(self.elements)}

    @property
    def size(self) -> int:
        return len(self.elements)

    @cached_property
    def sub_table(self) -> IndexTable:
        """sub_table[i, j] 为 i-j 的编号"""
        return self.add_table[:, self.neg_table]

    def index_of(self, g: Sequence[int]) -> int:
        key = tuple(int(c) for c in g)
        try:
            return self.index[key]
        except KeyError:
            raise SpecMismatchError(f"元素 {key} 不在载体 {self.label} 中") from None

    def add(self, i: int, j: int) -> int:
        return int(self.add_table[i, j])

    def neg(self, i: int) -> int:
        return int(self.neg_table[i])

    def __str__(self) -> str:
        return self.label

    def __repr__(self) -> str:
        return f"Carrier({self.label!r}, size={self.size})"


@dataclass(frozen=True)
class GroupSpec:
    """群描述：有限群由因子列表给出，窗口群由秩 d 与窗口界 B 给出"""

    kind: GroupKind
    factors: tuple[int, ...] = ()
    rank: int = 0
    bound: int = 0

    def __post_init__(self) -> None:
        if self.kind is GroupKind.FINITE:
            bad = [n for n in self.factors if n < 2]
            if bad:
                raise GroupSpecError(f"循环因子必须 ≥ 2: {bad}")
        else:
            if self.rank < 1:
                raise GroupSpecError(f"秩必须 ≥ 1: {self.rank}")
            if self.bound < 1:
                raise GroupSpecError(f"窗口界必须 ≥ 1: {self.bound}")

    @property
    def is_finite(self) -> bool:
        return self.kind is GroupKind.FINITE

    @property
    def dimension(self) -> int:
        return len(self.factors) if self.is_finite else self.rank

    @property
    def size(self) -> int:
        if self.is_finite:
            return int(np.prod(self.factors, dtype=np.int64)) if self.factors else 1
        return (2 * self.bound + 1) ** self.rank

    def __str__(self) -> str:
        if self.is_finite:
            return " x ".join(f"Z/{n}" for n in self.factors) if self.factors else "0"
        return f"Z^{self.rank}[B={self.bound}]"

    @cached_property
    def carrier(self) -> Carrier:
        return _finite_carrier(self) if self.is_finite else _windowed_carrier(self)

    def zero(self) -> GroupElement:
        return (0,) * self.dimension

    def element(self, coords: Iterable[int]) -> GroupElement:
        """规范化坐标：有限群逐分量取模，窗口群检查越界"""
        g = tuple(int(c) for c in coords)
        if len(g) != self.dimension:
            raise SpecMismatchError(f"坐标长度 {len(g)} 与群 {self} 的维数 {self.dimension} 不符")
        if self.is_finite:
            return tuple(c % n for c, n in zip(g, self.factors, strict=True))
        if any(abs(c) > self.bound for c in g):
            raise SpecMismatchError(f"元素 {g} 超出窗口 {self}")
        return g


_FACTOR_RE = re.compile(r"^Z/(\d+)$")
_FREE_RE = re.compile(r"^Z(?:\^(\d+))?\[B=(\d+)\]$")


def make_group(spec_string: str) -> GroupSpec:
    """
    解析群描述串

    语法: "Z/n"、"Z/a x Z/b x ..."、"Z^d[B=k]"（"Z[B=k]" 即 d=1），"0" 表示平凡群
    """
    text = spec_string.strip()
    if text == "0":
        return GroupSpec(GroupKind.FINITE, ())
    compact = text.replace(" ", "")
    free = _FREE_RE.match(compact)
    if free:
        rank = int(free.group(1)) if free.group(1) else 1
        return GroupSpec(GroupKind.FREE_WINDOWED, rank=rank, bound=int(free.group(2)))

    factors: list[int] = []
    for part in re.split(r"\s*[x×]\s*", text):
        m = _FACTOR_RE.match(part.replace(" ", ""))
        if not m:
            raise GroupSpecError(f"无法解析群描述 {spec_string!r}")
        factors.append(int(m.group(1)))
    return GroupSpec(GroupKind.FINITE, tuple(factors))


def _finite_carrier(group: GroupSpec) -> Carrier:
    factors = np.array(group.factors, dtype=np.int64)
    elements = tuple(itertools.product(*(range(n) for n in group.factors)))
    if not group.factors:
        table = np.zeros((1, 1), dtype=np.int64)
        return Carrier(str(group), elements, table, np.zeros(1, dtype=np.int64), 0)

    # 混合进制编号，最后一个坐标变化最快，与 itertools.product 的枚举顺序一致
    strides = np.ones(len(factors), dtype=np.int64)
    for i in range(len(factors) - 2, -1, -1):
        strides[i] = strides[i + 1] * factors[i + 1]
    coords = np.array(elements, dtype=np.int64)
    sums = (coords[:, None, :] + coords[None, :, :]) % factors
    add_table = sums @ strides
    neg_table = ((-coords) % factors) @ strides
    return Carrier(str(group), elements, add_table, neg_table, 0)


def _windowed_carrier(group: GroupSpec) -> Carrier:
    bound, width = group.bound, 2 * group.bound + 1
    elements = tuple(itertools.product(range(-bound, bound + 1), repeat=group.rank))
    strides = width ** np.arange(group.rank - 1, -1, -1, dtype=np.int64)
    coords = np.array(elements, dtype=np.int64)

    sums = coords[:, None, :] + coords[None, :, :]
    inside = np.all(np.abs(sums) <= bound, axis=2)
    add_table = np.where(inside, (sums + bound) @ strides, -1)
    neg_table = (bound - coords) @ strides
    zero = int(np.full(group.rank, bound, dtype=np.int64) @ strides)
    return Carrier(str(group), elements, add_table, neg_table, zero, windowed=True)


def op_add(
    group: GroupSpec, g: Sequence[int], h: Sequence[int]
) -> GroupElement | OutOfWindow:
    """群加法；窗口群上越界时返回 OUT_OF_WINDOW"""
    a, b = group.element(g), group.element(h)
    if group.is_finite:
        return tuple((x + y) % n for x, y, n in zip(a, b, group.factors, strict=True))
    s = tuple(x + y for x, y in zip(a, b, strict=True))
    if any(abs(c) > group.bound for c in s):
        return OUT_OF_WINDOW
    return s


def op_neg(group: GroupSpec, g: Sequence[int]) -> GroupElement:
    return group.element(-c for c in group.element(g))


@dataclass(frozen=True, eq=False)
class SubgroupDesc:
    """子群：以载体编号集合实现；窗口群上的坐标子群额外记录坐标掩码"""

    carrier: Carrier
    members: frozenset[int]
    generators: tuple[GroupElement, ...] = ()
    mask: frozenset[int] | None = None

    @cached_property
    def indices(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    @property
    def size(self) -> int:
        return len(self.members)

    def __contains__(self, index: object) -> bool:
        return index in self.members

    def elements(self) -> list[GroupElement]:
        return [self.carrier.elements[i] for i in self.indices]

    def same_members(self, other: "SubgroupDesc") -> bool:
        return self.members == other.members

    def __str__(self) -> str:
        if self.mask is not None:
            return f"<coords {sorted(self.mask)}>"
        if self.generators:
            return "<" + ", ".join(map(str, self.generators)) + ">"
        return "{" + ", ".join(str(g) for g in self.elements()) + "}"


def _closure_violation(carrier: Carrier, members: frozenset[int]) -> tuple[int, ...] | None:
    if carrier.zero not in members:
        return (carrier.zero,)
    idx = np.array(sorted(members), dtype=np.int64)
    negs = carrier.neg_table[idx]
    for i, n in zip(idx, negs, strict=True):
        if int(n) not in members:
            return (int(i),)
    sums = carrier.add_table[np.ix_(idx, idx)]
    for a, row in enumerate(sums):
        for b, s in enumerate(row):
            if s != -1 and int(s) not in members:
                return int(idx[a]), int(idx[b])
    return None


def subgroup_from_members(
    carrier: Carrier,
    members: Iterable[int],
    generators: Sequence[GroupElement] = (),
    mask: frozenset[int] | None = None,
) -> SubgroupDesc:
    """由编号集合构造子群，检查含 0、对取负与窗口内加法封闭"""
    member_set = frozenset(int(m) for m in members)
    bad = _closure_violation(carrier, member_set)
    if bad is not None:
        raise SubgroupError(
            f"集合在 {carrier} 中不封闭，反例 {[carrier.elements[i] for i in bad]}",
            witness=bad,
        )
    return SubgroupDesc(carrier, member_set, tuple(generators), mask)


def trivial_subgroup(carrier: Carrier) -> SubgroupDesc:
    return SubgroupDesc(carrier, frozenset({carrier.zero}))


def whole_group(carrier: Carrier) -> SubgroupDesc:
    return SubgroupDesc(carrier, frozenset(range(carrier.size)))


def coordinate_subgroup(group: GroupSpec, coords: Iterable[int]) -> SubgroupDesc:
    """窗口群上由坐标子集支撑的子群（坐标从 0 开始编号）"""
    mask = frozenset(int(c) for c in coords)
    if any(c < 0 or c >= group.dimension for c in mask):
        raise SubgroupError(f"坐标掩码 {sorted(mask)} 超出维数 {group.dimension}")
    carrier = group.carrier
    members = [
        i
        for i, g in enumerate(carrier.elements)
        if all(c == 0 for k, c in enumerate(g) if k not in mask)
    ]
    gens = tuple(tuple(1 if k == c else 0 for k in range(group.dimension)) for c in sorted(mask))
    return SubgroupDesc(carrier, frozenset(members), gens, mask)


def subgroup_closure(group: GroupSpec, gens: Sequence[Sequence[int]]) -> SubgroupDesc:
    """
    生成元的子群闭包

    有限群上做加法闭包；窗口群只接受 ±e_i 形式的坐标生成元，结果为坐标子群。
    """
    elements = [group.element(g) for g in gens]
    if not group.is_finite:
        mask: set[int] = set()
        for g in elements:
            support = [k for k, c in enumerate(g) if c != 0]
            if len(support) != 1 or abs(g[support[0]]) != 1:
                raise SubgroupError(f"窗口群 {group} 只支持坐标生成元，收到 {g}", witness=(g,))
            mask.add(support[0])
        sub = coordinate_subgroup(group, mask)
        return SubgroupDesc(sub.carrier, sub.members, tuple(elements), sub.mask)

    carrier = group.carrier
    gen_idx = [carrier.index_of(g) for g in elements]
    members = {carrier.zero}
    frontier = [carrier.zero]
    while frontier:
        m = frontier.pop()
        for gi in gen_idx:
            s = carrier.add(m, gi)
            if s not in members:
                members.add(s)
                frontier.append(s)
    return SubgroupDesc(carrier, frozenset(members), tuple(elements))


def all_subgroups(group: GroupSpec) -> list[SubgroupDesc]:
    """有限群的全部子群，按 (阶, 成员编号) 排序"""
    if not group.is_finite:
        raise SubgroupError(f"只能枚举有限群的子群: {group}")
    carrier = group.carrier
    found: dict[frozenset[int], SubgroupDesc] = {}
    start = trivial_subgroup(carrier)
    found[start.members] = start
    frontier = [start]
    while frontier:
        sub = frontier.pop()
        for g in range(carrier.size):
            if g in sub.members:
                continue
            gens = [carrier.elements[i] for i in sub.indices if i != carrier.zero]
            bigger = subgroup_closure(group, [*gens, carrier.elements[g]])
            if bigger.members not in found:
                found[bigger.members] = bigger
                frontier.append(bigger)
    return sorted(found.values(), key=lambda s: (s.size, s.indices))


@dataclass(frozen=True, eq=False)
class QuotientView:
    """
    商 K/H 的陪集代表元视图（K 缺省为整个载体）

    representatives 为父载体编号，按枚举顺序排列；projection 把 K 中每个编号映到代表元位置。
    """

    parent: Carrier
    subgroup: SubgroupDesc
    ambient: SubgroupDesc | None
    representatives: tuple[int, ...]
    projection: Mapping[int, int] = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.representatives)

    def project(self, parent_index: int) -> int:
        """父载体编号 → 商载体中代表元的位置"""
        return self.projection[parent_index]

    def representative(self, parent_index: int) -> int:
        return self.representatives[self.projection[parent_index]]

    def coset(self, position: int) -> list[int]:
        return sorted(i for i, p in self.projection.items() if p == position)

    @cached_property
    def carrier(self) -> Carrier:
        parent = self.parent
        reps = np.array(self.representatives, dtype=np.int64)
        proj = np.full(parent.size + 1, -1, dtype=np.int64)
        for i, p in self.projection.items():
            proj[i] = p
        # proj[-1] 保持 -1，越界的和经过查表后仍为 -1
        sums = parent.add_table[np.ix_(reps, reps)]
        add_table = proj[sums]
        neg_table = proj[parent.neg_table[reps]]
        elements = tuple(parent.elements[r] for r in self.representatives)
        ambient = str(self.ambient) if self.ambient is not None else parent.label
        return Carrier(
            f"{ambient}/{self.subgroup}",
            elements,
            add_table,
            neg_table,
            self.projection[parent.zero],
            windowed=parent.windowed,
        )


def _coset_norm(carrier: Carrier, index: int) -> int:
    return sum(abs(c) for c in carrier.elements[index])


def quotient(
    group: GroupSpec | Carrier,
    H: SubgroupDesc,
    ambient: SubgroupDesc | None = None,
) -> QuotientView:
    """
    构造 K/H 的陪集代表元

    窗口上的陪集取“相差 H 中窗口内元素”的连通分支；代表元取坐标范数最小者，
    并列时取枚举序靠前者，因此 H 本身由 0 代表。
    """
    carrier = group.carrier if isinstance(group, GroupSpec) else group
    bad = _closure_violation(carrier, H.members)
    if bad is not None:
        raise SubgroupError(f"H 在 {carrier} 中不封闭", witness=bad)
    domain = ambient.indices if ambient is not None else tuple(range(carrier.size))
    domain_set = frozenset(domain)
    if not H.members <= domain_set:
        raise SubgroupError(f"H={H} 不包含于 K={ambient}")

    parent = {i: i for i in domain}

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    h_idx = np.array(H.indices, dtype=np.int64)
    for g in domain:
        for s in carrier.add_table[g, h_idx]:
            if s == -1:
                continue
            a, b = find(g), find(int(s))
            if a != b:
                parent[max(a, b)] = min(a, b)

    classes: dict[int, list[int]] = {}
    for g in domain:
        classes.setdefault(find(g), []).append(g)
    reps = sorted(min(members, key=lambda i: (_coset_norm(carrier, i), i)) for members in classes.values())
    position = {r: p for p, r in enumerate(reps)}
    rep_of_root = {
        root: min(members, key=lambda i: (_coset_norm(carrier, i), i)) for root, members in classes.items()
    }
    projection = {g: position[rep_of_root[find(g)]] for g in domain}
    logger.debug(f"商 {carrier}/{H}: {len(reps)} 个陪集")
    return QuotientView(carrier, H, ambient, tuple(reps), projection)
