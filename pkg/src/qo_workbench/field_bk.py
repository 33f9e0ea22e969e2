"""
ℚ(t) 上的 t-进赋值、q-截面、φ_g、域序判据与经典 Baer-Krull 演示

全部运算为精确有理运算，不使用浮点数。多项式以 Fraction 元组表示，下标即次数。
"""

import itertools
import logging
import math
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from tokenize import TokenError
from typing import Any

import numpy as np
import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)

from .config import get_config
from .decorators import traced_check
from .errors import (
    DivisionByZero,
    NotAHomomorphism,
    PreconditionError,
    RationalFunctionError,
    ResidueError,
    TheoremViolation,
)
from .results import CheckResult

logger = logging.getLogger(__name__)

Rat = Fraction
Poly = tuple[Fraction, ...]
Signer = Callable[["RatFunc"], int]


def _strip(coeffs: Sequence[Fraction | int]) -> Poly:
    values = [Fraction(c) for c in coeffs]
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


def _padd(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return _strip([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _pneg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _strip(out)


def _low(a: Poly) -> int:
    """最低非零次数"""
    return next(i for i, c in enumerate(a) if c != 0)


def _peval(a: Poly, x: Fraction) -> Fraction:
    total = Fraction(0)
    for c in reversed(a):
        total = total * x + c
    return total


def _format_poly(a: Poly) -> str:
    if not a:
        return "0"
    terms: list[str] = []
    for degree, c in enumerate(a):
        if c == 0:
            continue
        magnitude = abs(c)
        coef = "" if magnitude == 1 and degree > 0 else str(magnitude)
        power = "" if degree == 0 else ("t" if degree == 1 else f"t^{degree}")
        body = f"{coef}{power}" if not (coef and power and "/" in coef) else f"({coef}){power}"
        if not terms:
            terms.append(f"-{body}" if c < 0 else body)
        else:
            terms.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(terms)


class RatFunc:
    """
    ℚ(t) 的元素 num/den

    规范化只约去公共的 t 幂并使分母最低次系数为 1；相等按交叉相乘判断。
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Sequence[Fraction | int], den: Sequence[Fraction | int] = (1,)) -> None:
        n, d = _strip(num), _strip(den)
        if not d:
            raise DivisionByZero("分母为零")
        if not n:
            d = (Fraction(1),)
        else:
            k = min(_low(n), _low(d))
            n, d = n[k:], d[k:]
            lead = d[_low(d)]
            n = tuple(c / lead for c in n)
            d = tuple(c / lead for c in d)
        self.num: Poly = n
        self.den: Poly = d

    @classmethod
    def constant(cls, c: Fraction | int) -> "RatFunc":
        return cls((c,))

    @classmethod
    def t_power(cls, n: int) -> "RatFunc":
        if n >= 0:
            return cls((0,) * n + (1,))
        return cls((1,), (0,) * (-n) + (1,))

    def is_zero(self) -> bool:
        return not self.num

    def __add__(self, other: "RatFunc | Fraction | int") -> "RatFunc":
        o = _coerce(other)
        return RatFunc(
            _padd(_pmul(self.num, o.den), _pmul(o.num, self.den)),
            _pmul(self.den, o.den),
        )

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(_pneg(self.num), self.den)

    def __sub__(self, other: "RatFunc | Fraction | int") -> "RatFunc":
        return self + (-_coerce(other))

    def __rsub__(self, other: "RatFunc | Fraction | int") -> "RatFunc":
        return _coerce(other) - self

    def __mul__(self, other: "RatFunc | Fraction | int") -> "RatFunc":
        o = _coerce(other)
        return RatFunc(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise DivisionByZero("零没有逆元")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other: "RatFunc | Fraction | int") -> "RatFunc":
        return self * _coerce(other).inverse()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int | Fraction):
            other = RatFunc.constant(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return _pmul(self.num, other.den) == _pmul(other.num, self.den)

    __hash__ = None  # type: ignore[assignment]

    def evaluate(self, x: Fraction) -> Fraction:
        d = _peval(self.den, x)
        if d == 0:
            raise DivisionByZero(f"{self} 在 t={x} 处有极点")
        return _peval(self.num, x) / d

    def trailing_ratio(self) -> Fraction:
        """分子与分母最低次系数之比"""
        if self.is_zero():
            raise ResidueError("零没有首项系数")
        return self.num[_low(self.num)] / self.den[_low(self.den)]

    def __str__(self) -> str:
        if self.den == (1,):
            return _format_poly(self.num)
        return f"({_format_poly(self.num)})/({_format_poly(self.den)})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


def _coerce(value: "RatFunc | Fraction | int") -> RatFunc:
    if isinstance(value, RatFunc):
        return value
    return RatFunc.constant(Fraction(value))


T = RatFunc.t_power(1)
ONE = RatFunc.constant(1)
ZERO = RatFunc.constant(0)

_SYMBOL_T = sympy.Symbol("t")
_TRANSFORMATIONS = (*standard_transformations, implicit_multiplication_application, convert_xor)


def parse_ratfunc(text: str) -> RatFunc:
    """解析整数系数的 t 的有理式，如 "(2 + t - 3t^2)/(t^3)" """
    try:
        expr = parse_expr(text, local_dict={"t": _SYMBOL_T}, transformations=_TRANSFORMATIONS)
    except (SyntaxError, TypeError, ValueError, TokenError, sympy.SympifyError) as e:
        raise RationalFunctionError(f"无法解析有理式 {text!r}: {e}") from e
    expr = sympy.sympify(expr)
    if expr.free_symbols - {_SYMBOL_T}:
        raise RationalFunctionError(f"有理式只能含变量 t: {text!r}")
    numerator, denominator = sympy.fraction(sympy.together(expr))
    return RatFunc(_to_poly(numerator, text), _to_poly(denominator, text))


def _to_poly(expr: Any, text: str) -> Poly:
    try:
        coeffs = sympy.Poly(expr, _SYMBOL_T).all_coeffs()
    except sympy.PolynomialError as e:
        raise RationalFunctionError(f"不是有理式: {text!r}") from e
    out = []
    for c in reversed(coeffs):
        if not c.is_Rational:
            raise RationalFunctionError(f"系数 {c} 不是有理数: {text!r}")
        out.append(Fraction(int(c.p), int(c.q)))
    return _strip(out)


class ArithOp(Enum):
    ADD = "add"
    MUL = "mul"
    NEG = "neg"
    INV = "inv"


def rf_arith(op: ArithOp | str, f: RatFunc, g: RatFunc | None = None) -> RatFunc:
    op = ArithOp(op)
    if op is ArithOp.NEG:
        return -f
    if op is ArithOp.INV:
        return f.inverse()
    if g is None:
        raise PreconditionError(f"{op.value} 需要两个操作数")
    return f + g if op is ArithOp.ADD else f * g


def tadic_val(f: RatFunc) -> int | float:
    """v(f) = 分子最低次数 − 分母最低次数；v(0) = ∞"""
    if f.is_zero():
        return math.inf
    return _low(f.num) - _low(f.den)


def _val(f: RatFunc) -> int:
    v = tadic_val(f)
    assert isinstance(v, int)
    return v


def residue(f: RatFunc) -> Fraction:
    """v(f) ≥ 0 时的剩余类：v(f)=0 取首项系数之比，v(f)>0 为 0"""
    if f.is_zero():
        return Fraction(0)
    v = _val(f)
    if v < 0:
        raise ResidueError(f"v({f}) = {v} < 0，没有剩余类")
    return f.trailing_ratio() if v == 0 else Fraction(0)


# ---------------------------------------------------------------------------
# q-截面与 φ_g


@dataclass(frozen=True)
class QSection:
    """s(n) = tⁿ"""

    def __call__(self, n: int) -> RatFunc:
        return RatFunc.t_power(n)

    def defect(self, m: int, n: int) -> RatFunc:
        """s(m+n) / (s(m)s(n))"""
        return self(m + n) / (self(m) * self(n))


qsection = QSection()


@traced_check
def check_qsection(probes: Sequence[int]) -> CheckResult:
    """s(0)=1、v(s(n))=n、s(m+n)/(s(m)s(n)) 等于平方见证 1²"""
    if qsection(0) != ONE:
        return CheckResult("s(0)=1", False, (0,), 1)
    for n in probes:
        if tadic_val(qsection(n)) != n:
            return CheckResult("v(s(n))=n", False, (n,), 1 + len(probes))
    square = ONE * ONE
    instances = 1 + len(probes) + len(probes) ** 2
    for m, n in itertools.product(probes, repeat=2):
        if qsection.defect(m, n) != square:
            return CheckResult("s(m+n)≡s(m)s(n) mod K²", False, (m, n), instances)
    return CheckResult("q-section", True, instances=instances)


def phi(a: Fraction | int, g: int) -> RatFunc:
    """φ_g(a) 的规范代表元 tᵍ·a"""
    return qsection(g) * Fraction(a)


def phi_inverse(f: RatFunc, g: int) -> Fraction:
    """f + K_g ↦ residue(f / tᵍ)，要求 v(f) ≥ g"""
    return residue(f / qsection(g))


# ---------------------------------------------------------------------------
# 域序


def _sign(x: Fraction | int) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class FieldOrderTag:
    """η 为 t 的符号；剩余域 ℚ 上取标准序"""

    eta: int

    def __post_init__(self) -> None:
        if self.eta not in (1, -1):
            raise PreconditionError(f"η 必须为 ±1: {self.eta}")

    def sign(self, f: RatFunc) -> int:
        return sign_under(f, self.eta)


def sign_under(f: RatFunc, eta: int) -> int:
    """sign(f) = sign(首项系数之比) · η^{v(f)}"""
    if f.is_zero():
        return 0
    return _sign(f.trailing_ratio()) * (eta if _val(f) % 2 else 1)


def oracle_sign(
    f: RatFunc,
    eta: int,
    k0: int | None = None,
    k_max: int | None = None,
) -> int:
    """在 t = η·10^(-k) 处精确求值，从 k0 起取第一组相邻两次符号一致的结果"""
    if f.is_zero():
        return 0
    config = get_config()
    k = config.oracle_min_exponent if k0 is None else k0
    k_max = config.oracle_max_exponent if k_max is None else k_max

    def at(exponent: int) -> int | None:
        try:
            return _sign(f.evaluate(Fraction(eta, 10**exponent)))
        except DivisionByZero:
            return None

    previous = at(k)
    while k < k_max:
        current = at(k + 1)
        if previous is not None and previous == current and previous != 0:
            return previous
        previous = current
        k += 1
    raise RationalFunctionError(f"{f} 的求值符号在 k ≤ {k_max} 内没有稳定")


def evaluate_field_order_samples(
    tag: FieldOrderTag,
    samples: Sequence[RatFunc],
    signer: Signer | None = None,
) -> CheckResult:
    """
    对全部样本对检查：sign(fg)=sign(f)sign(g)；同号时 sign(f+g)=sign(f)；
    0<f<g 推出 v(f) ≥ v(g)。不记录日志，供候选枚举使用
    """
    if any(f.is_zero() for f in samples):
        raise PreconditionError("样本中含有 0")
    sign = signer if signer is not None else tag.sign
    signs = [sign(f) for f in samples]
    vals = [_val(f) for f in samples]
    instances = 0
    for (i, f), (j, g) in itertools.product(enumerate(samples), repeat=2):
        instances += 1
        if sign(f * g) != signs[i] * signs[j]:
            return CheckResult("sign(fg)=sign(f)sign(g)", False, (str(f), str(g)), instances)
        if signs[i] == signs[j] and sign(f + g) != signs[i]:
            return CheckResult("sign(f+g)=sign(f)", False, (str(f), str(g)), instances)
        if signs[i] > 0 and sign(g - f) > 0 and vals[i] < vals[j]:
            return CheckResult("0<f<g⇒v(f)≥v(g)", False, (str(f), str(g)), instances)
    return CheckResult("field order", True, instances=instances)


@traced_check
def check_field_order_samples(
    tag: FieldOrderTag,
    samples: Sequence[RatFunc],
    signer: Signer | None = None,
) -> CheckResult:
    return evaluate_field_order_samples(tag, samples, signer)


@traced_check
def check_phi_multiplicative(a: Fraction | int, b: Fraction | int, g: int, h: int) -> CheckResult:
    """φ_{g+h}(ab) 与 φ_g(a)φ_h(b) 之比是平方见证 1²，两个标签下符号相同"""
    a, b = Fraction(a), Fraction(b)
    if phi_inverse(phi(a, g), g) != a:
        return CheckResult("φ_g⁻¹∘φ_g = id", False, (a, g), 1)
    left, right = phi(a * b, g + h), phi(a, g) * phi(b, h)
    if a * b != 0 and right / left != ONE * ONE:
        return CheckResult("φ_{g+h}(ab) ≡ φ_g(a)φ_h(b) mod K²", False, (a, b, g, h), 2)
    for eta in (1, -1):
        if sign_under(left, eta) != sign_under(right, eta):
            return CheckResult("sign φ_{g+h}(ab) = sign φ_g(a)φ_h(b)", False, (a, b, g, h, eta), 4)
    return CheckResult("φ multiplicative", True, instances=4)


# ---------------------------------------------------------------------------
# ε


@dataclass(frozen=True)
class SignHom:
    """ℤ^d → {±1}，ε(g) = ∏ basis_signs[i]^{g_i mod 2}"""

    rank: int
    basis_signs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.basis_signs) != self.rank:
            raise PreconditionError(f"基符号个数 {len(self.basis_signs)} 与秩 {self.rank} 不符")
        if any(s not in (1, -1) for s in self.basis_signs):
            raise PreconditionError(f"基符号必须为 ±1: {self.basis_signs}")

    def __call__(self, g: Sequence[int] | int) -> int:
        coords = (g,) if isinstance(g, int) else tuple(g)
        if len(coords) != self.rank:
            raise PreconditionError(f"元素 {coords} 的长度与秩 {self.rank} 不符")
        out = 1
        for s, c in zip(self.basis_signs, coords, strict=True):
            if c % 2:
                out *= s
        return out

    @traced_check
    def check_multiplicative(self, bound: int | None = None) -> CheckResult:
        b = get_config().probe_bound if bound is None else bound
        grid = list(itertools.product(range(-b, b + 1), repeat=self.rank))
        for g, h in itertools.product(grid, repeat=2):
            total = tuple(x + y for x, y in zip(g, h, strict=True))
            if self(total) != self(g) * self(h):
                return CheckResult("ε(g+h)=ε(g)ε(h)", False, (g, h), len(grid) ** 2)
        return CheckResult("ε(g+h)=ε(g)ε(h)", True, instances=len(grid) ** 2)


def epsilon_from_eta(d: int, basis_signs: Sequence[int], bound: int | None = None) -> SignHom:
    """由 𝔽₂-基上的符号延拓 ε，并在探测网格上验证乘性"""
    eps = SignHom(d, tuple(int(s) for s in basis_signs))
    verdict = eps.check_multiplicative(bound)
    if not verdict.passed:
        raise TheoremViolation(f"ε 不是同态: {verdict.witness}", witness=verdict.witness)
    return eps


def _table_violation(table: Mapping[int, int]) -> tuple[int, ...] | None:
    """按键排序找第一对 a ≤ b 使 a、b、a+b 都在表中且 table(a)·table(b) ≠ table(a+b)"""
    keys = sorted(table)
    for i, a in enumerate(keys):
        for b in keys[i:]:
            if a + b in table and table[a] * table[b] != table[a + b]:
                return (a, b)
    return None


def check_prop_fieldorders(table: Mapping[int, int]) -> SignHom:
    """
    方向表 g ↦ ±1（φ_g 保序或反序）能延拓为同态 ℤ→{±1}
    当且仅当偶数处都为 +1 且奇数处取同一个值，该值即 ε(1)

    表中没有奇数时 ε(1) 不受约束，取 +1。反例只用表中的键：
    优先给出 table(a)·table(b) ≠ table(a+b) 的一对 (a, b)；
    表中没有这样的一对时，给出取 −1 的偶数 (g,) 或取值不同的两个奇数 (a, b)。
    """
    if any(s not in (1, -1) for s in table.values()):
        raise PreconditionError(f"方向只能为 ±1: {dict(table)}")
    keys = sorted(table)
    odd = [g for g in keys if g % 2]
    base = table[odd[0]] if odd else 1
    bad_even = next((g for g in keys if g % 2 == 0 and table[g] != 1), None)
    bad_odd = next((g for g in odd if table[g] != base), None)
    if bad_even is None and bad_odd is None:
        eps = SignHom(1, (base,))
        logger.debug(f"方向表可延拓为 ε，ε(1) = {base}" + ("" if odd else "（表中无奇数，取 +1）"))
        return eps

    pair = _table_violation(table)
    if pair is not None:
        a, b = pair
        message = f"table({a})·table({b}) ≠ table({a + b})"
        witness: tuple[int, ...] = pair
    elif bad_even is not None:
        message = f"偶数 {bad_even} 处取 −1"
        witness = (bad_even,)
    else:
        assert bad_odd is not None
        message = f"奇数 {odd[0]} 与 {bad_odd} 处取值不同"
        witness = (odd[0], bad_odd)
    raise NotAHomomorphism(f"方向表不是同态: {message}", witness=witness)


def lifted_signer(table: Mapping[int, int]) -> Signer:
    """方向表对应的符号函数：sign(f) = sign(剩余类) · table(v(f))"""

    def sign(f: RatFunc) -> int:
        if f.is_zero():
            return 0
        v = _val(f)
        if v not in table:
            raise PreconditionError(f"v({f}) = {v} 不在方向表的探测集中")
        return _sign(f.trailing_ratio()) * table[v]

    return sign


def random_corpus(
    seed: int | None = None,
    size: int | None = None,
    max_degree: int | None = None,
    coef_bound: int | None = None,
) -> list[RatFunc]:
    """分子分母次数 ≤ max_degree、整数系数在 [−b, b] 内的非零随机有理函数"""
    config = get_config()
    seed = config.seed if seed is None else seed
    size = config.corpus_size if size is None else size
    max_degree = config.corpus_max_degree if max_degree is None else max_degree
    coef_bound = config.corpus_coef_bound if coef_bound is None else coef_bound
    rng = np.random.default_rng(seed)

    def poly() -> Poly:
        while True:
            degree = int(rng.integers(0, max_degree + 1))
            coeffs = _strip([int(c) for c in rng.integers(-coef_bound, coef_bound + 1, size=degree + 1)])
            if coeffs:
                return coeffs

    return [RatFunc(poly(), poly()) for _ in range(size)]


# ---------------------------------------------------------------------------
# 经典 Baer-Krull


@dataclass
class TagReport:
    eta: int
    order_check: CheckResult
    oracle_agreement: int
    oracle_total: int
    recovered_eta: int
    residue_order_standard: bool
    epsilon_matches: bool

    @property
    def passed(self) -> bool:
        return (
            self.order_check.passed
            and self.oracle_agreement == self.oracle_total
            and self.recovered_eta == self.eta
            and self.residue_order_standard
            and self.epsilon_matches
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "eta": self.eta,
            "order_check": self.order_check.to_dict(),
            "oracle_agreement": f"{self.oracle_agreement}/{self.oracle_total}",
            "recovered": {"eta": self.recovered_eta, "residue_order": "standard" if self.residue_order_standard else "?"},
            "epsilon_matches": self.epsilon_matches,
            "passed": self.passed,
        }


@dataclass
class ClassicalBKReport:
    tags: list[TagReport]
    distinct: bool
    exhaustive_count: int
    corpus_seed: int
    corpus_size: int
    caveats: list[str] = field(default_factory=list)

    @property
    def count(self) -> int:
        return sum(1 for t in self.tags if t.passed)

    @property
    def passed(self) -> bool:
        return self.count == 2 and self.distinct and self.exhaustive_count == 2

    def to_dict(self) -> dict[str, Any]:
        return {
            "count": self.count,
            "distinct": self.distinct,
            "exhaustive_count": self.exhaustive_count,
            "corpus": {"seed": self.corpus_seed, "size": self.corpus_size},
            "tags": [t.to_dict() for t in self.tags],
            "caveats": list(self.caveats),
            "passed": self.passed,
        }


def candidate_signers() -> list[tuple[str, Signer]]:
    """
    ℚ(t) 上由首项定号的全部候选符号函数

    t 趋于 0 或 ∞（按最低次或最高次项定号）、t 的符号 η、剩余域上的定向 ρ 各取两种，共 8 个。
    其中与 t-进赋值相容的域序恰是 t → 0、ρ = +1 的两个。
    """

    def rule(at_zero: bool, eta: int, rho: int) -> Signer:
        def sign(f: RatFunc) -> int:
            if f.is_zero():
                return 0
            if at_zero:
                degree, ratio = _val(f), f.trailing_ratio()
            else:
                degree, ratio = len(f.num) - len(f.den), f.num[-1] / f.den[-1]
            return rho * _sign(ratio) * (eta if degree % 2 else 1)

        return sign

    return [
        (f"t→{'0' if at_zero else '∞'}, η={eta:+d}, ρ={rho:+d}", rule(at_zero, eta, rho))
        for at_zero, eta, rho in itertools.product((True, False), (1, -1), (1, -1))
    ]


def classical_bk(
    corpus: Sequence[RatFunc] | None = None,
    seed: int | None = None,
    probes: Sequence[int] | None = None,
) -> ClassicalBKReport:
    """
    K = ℚ(t)、v 为 t-进赋值：枚举全部标签 η ∈ {±1}，逐个验证其给出 v 相容的域序，
    并从序中恢复 (η, ≤_ℚ)
    """
    config = get_config()
    seed = config.seed if seed is None else seed
    samples = list(corpus) if corpus is not None else random_corpus(seed)
    samples = [f for f in samples if not f.is_zero()]
    b = config.probe_bound
    probe_set = list(probes) if probes is not None else list(range(-b, b + 1))

    reports = []
    for eta in (1, -1):
        tag = FieldOrderTag(eta)
        order_check = check_field_order_samples(tag, [*samples, T, ONE])
        agreement = sum(1 for f in samples if tag.sign(f) == oracle_sign(f, eta))
        recovered = tag.sign(T)
        residue_standard = all(
            tag.sign(f) == _sign(residue(f)) for f in samples if _val(f) == 0
        )
        table = {g: tag.sign(qsection(g)) for g in probe_set}
        try:
            eps = check_prop_fieldorders(table)
            epsilon_matches = eps(1) == eta
        except NotAHomomorphism:
            epsilon_matches = False
        reports.append(
            TagReport(eta, order_check, agreement, len(samples), recovered, residue_standard, epsilon_matches)
        )

    # 交叉核对：与标签无关地枚举全部候选符号函数，数出通过域序与相容性检查的个数
    witnesses = [T, -T, T * T, ONE - T, ONE]
    exhaustive = 0
    for label, signer in candidate_signers():
        verdict = evaluate_field_order_samples(FieldOrderTag(1), witnesses, signer=signer)
        logger.debug(f"候选符号函数 {label}: {'通过' if verdict.passed else verdict.name}")
        exhaustive += int(verdict.passed)

    report = ClassicalBKReport(
        reports,
        distinct=sign_under(T, 1) != sign_under(T, -1),
        exhaustive_count=exhaustive,
        corpus_seed=seed,
        corpus_size=len(samples),
        caveats=[f"方向表只在有限探测集 {probe_set[0]}..{probe_set[-1]} 上检查"] if probe_set else [],
    )
    if report.passed:
        logger.info(f"经典 Baer-Krull 验证通过: {report.count} 个域序")
    else:
        logger.warning(f"经典 Baer-Krull 验证失败: {report.to_dict()}")
    return report
