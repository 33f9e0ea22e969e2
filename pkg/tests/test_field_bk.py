import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qo_workbench.errors import (
    DivisionByZero,
    NotAHomomorphism,
    PreconditionError,
    RationalFunctionError,
    ResidueError,
)
from qo_workbench.field_bk import (
    ONE,
    T,
    ZERO,
    FieldOrderTag,
    RatFunc,
    SignHom,
    candidate_signers,
    check_field_order_samples,
    check_phi_multiplicative,
    check_prop_fieldorders,
    check_qsection,
    classical_bk,
    epsilon_from_eta,
    lifted_signer,
    oracle_sign,
    parse_ratfunc,
    phi,
    phi_inverse,
    qsection,
    random_corpus,
    residue,
    rf_arith,
    sign_under,
    tadic_val,
)

small_poly = st.lists(st.integers(min_value=-10, max_value=10), min_size=1, max_size=5).filter(
    lambda cs: any(cs)
)


def _parity_table(eta: int, bound: int = 4) -> dict[int, int]:
    return {g: 1 if g % 2 == 0 else eta for g in range(-bound, bound + 1)}


@pytest.mark.unit
class TestRatFunc:
    """有理函数测试类"""

    def test_normalisation(self):
        """测试约去 t 的幂并使分母首项为 1"""
        f = RatFunc((0, 2), (0, 0, 4))
        assert f.num == (Fraction(1, 2),)
        assert f.den == (Fraction(0), Fraction(1))
        assert f == RatFunc((1,), (0, 2))
        assert str(f) == "(1/2)/(t)"

    def test_equality_by_cross_multiplication(self):
        """测试不约分的相等判断"""
        assert RatFunc((1, 1), (1, 1)) == ONE
        assert RatFunc((2,)) == 2
        assert T != ONE

    def test_zero(self):
        """测试零与除零"""
        assert RatFunc((0, 0)).is_zero()
        with pytest.raises(DivisionByZero):
            RatFunc((1,), (0,))
        with pytest.raises(DivisionByZero):
            ZERO.inverse()
        with pytest.raises(ZeroDivisionError):
            T / ZERO

    def test_arithmetic(self):
        """测试域运算"""
        assert T + ONE == RatFunc((1, 1))
        assert T * T.inverse() == ONE
        assert 1 - T == RatFunc((1, -1))
        assert (T + 1) / (T - 1) * (T - 1) == T + 1

    def test_rf_arith(self):
        """测试按名字分派的运算"""
        assert rf_arith("add", T, ONE) == RatFunc((1, 1))
        assert rf_arith("neg", T) == RatFunc((0, -1))
        assert rf_arith("inv", T) == RatFunc((1,), (0, 1))
        with pytest.raises(PreconditionError):
            rf_arith("mul", T)
        with pytest.raises(ValueError):
            rf_arith("pow", T, T)

    def test_evaluate_pole(self):
        """测试在极点处求值"""
        with pytest.raises(DivisionByZero):
            T.inverse().evaluate(Fraction(0))

    @given(a=small_poly, b=small_poly, c=small_poly)
    def test_distributive(self, a, b, c):
        """测试分配律"""
        f, g, h = RatFunc(a), RatFunc(b), RatFunc(c)
        assert f * (g + h) == f * g + f * h


@pytest.mark.unit
class TestParse:
    """有理式解析测试类"""

    def test_parse(self):
        """测试隐式乘法与 ^"""
        f = parse_ratfunc("(2 + t - 3t^2)/(t^3)")
        assert f == RatFunc((2, 1, -3), (0, 0, 0, 1))
        assert tadic_val(f) == -3

    def test_parse_constant(self):
        """测试常数"""
        assert parse_ratfunc("3/4") == Fraction(3, 4)

    @pytest.mark.parametrize("text", ["1/(t", "x + t", "sqrt(2)*t"])
    def test_parse_errors(self, text):
        """测试无法解析或不是 ℚ(t) 元素的输入"""
        with pytest.raises(RationalFunctionError):
            parse_ratfunc(text)


@pytest.mark.unit
class TestValuation:
    """t-进赋值与剩余类测试类"""

    def test_tadic_val(self):
        """测试 v(f)"""
        assert tadic_val(ZERO) == math.inf
        assert tadic_val(T) == 1
        assert tadic_val(T.inverse()) == -1
        assert tadic_val(RatFunc((0, 1, 1))) == 1

    def test_residue(self):
        """测试剩余类"""
        assert residue(RatFunc((3, 1), (2, -1))) == Fraction(3, 2)
        assert residue(T) == 0
        assert residue(ZERO) == 0
        with pytest.raises(ResidueError):
            residue(T.inverse())

    @given(a=small_poly, b=small_poly)
    def test_valuation_of_product(self, a, b):
        """测试 v(fg) = v(f) + v(g)"""
        f, g = RatFunc(a, b), RatFunc(b, [1, *a])
        assert tadic_val(f * g) == tadic_val(f) + tadic_val(g)


@pytest.mark.unit
class TestSectionAndPhi:
    """q-截面与 φ_g 测试类"""

    def test_qsection(self):
        """测试 s(n) = tⁿ 满足截面条件"""
        assert check_qsection([-2, -1, 0, 1, 2]).passed
        assert qsection(3) == T * T * T
        assert qsection.defect(2, -5) == ONE

    def test_phi(self):
        """测试 φ_g 与其逆"""
        assert phi(3, 2) == RatFunc((0, 0, 3))
        assert phi_inverse(phi(Fraction(3, 4), -1), -1) == Fraction(3, 4)
        with pytest.raises(ResidueError):
            phi_inverse(T.inverse(), 0)

    @pytest.mark.parametrize(("a", "b", "g", "h"), [(2, -3, 1, 2), (0, 5, -1, 1), (Fraction(1, 3), -1, -2, -2)])
    def test_phi_multiplicative(self, a, b, g, h):
        """测试 φ 的乘性"""
        assert check_phi_multiplicative(a, b, g, h).passed


@pytest.mark.unit
class TestFieldOrders:
    """域序测试类"""

    @pytest.mark.parametrize(
        ("f", "eta", "expected"),
        [
            (T, 1, 1),
            (T, -1, -1),
            (T * T, -1, 1),
            (RatFunc((-2, 5)), -1, -1),
            (RatFunc((0, 0, 0, -1)), -1, 1),
            (-T + T * T * T, 1, -1),
            (-T + T * T * T, -1, 1),
            (ZERO, 1, 0),
        ],
    )
    def test_sign_under(self, f, eta, expected):
        """测试 sign(f) = sign(首项) · η^{v(f)}"""
        assert sign_under(f, eta) == expected
        assert FieldOrderTag(eta).sign(f) == expected

    @pytest.mark.parametrize("eta", [1, -1])
    def test_oracle_agrees_on_corpus(self, eta):
        """测试精确小值求值与符号公式一致"""
        for f in random_corpus(seed=3, size=30):
            assert oracle_sign(f, eta) == sign_under(f, eta)

    def test_oracle_needs_small_enough_t(self):
        """测试求值点不够小时需要更大的起始指数"""
        f = RatFunc((1, -(10**6)))
        assert oracle_sign(f, 1, k0=7) == sign_under(f, 1) == 1
        with pytest.raises(RationalFunctionError):
            oracle_sign(f, 1, k0=3, k_max=3)

    def test_tag_rejects_bad_eta(self):
        """测试 η 只能取 ±1"""
        with pytest.raises(PreconditionError):
            FieldOrderTag(0)

    def test_samples_pass(self):
        """测试样本上的域序公理"""
        assert check_field_order_samples(FieldOrderTag(-1), [T, -T, T * T, ONE - T]).passed

    def test_bad_signer_witness(self):
        """测试把所有非零元都判为正的符号函数"""
        result = check_field_order_samples(
            FieldOrderTag(1), [T, -T], signer=lambda f: 0 if f.is_zero() else 1
        )
        assert not result.passed
        assert result.name == "sign(f+g)=sign(f)"
        assert result.witness == ("t", "-t")

    def test_cube_flipping_signer_witness(self):
        """测试只翻转 t³ 符号的符号函数在 t·t² 上破坏乘性"""
        cube = T * T * T

        def flipped(f):
            return -1 if f == cube else sign_under(f, 1)

        result = check_field_order_samples(FieldOrderTag(1), [T, T * T], signer=flipped)
        assert not result.passed
        assert result.name == "sign(fg)=sign(f)sign(g)"
        assert result.witness == ("t", "t^2")

    def test_leading_coefficient_signer_witness(self):
        """测试按最高次系数定号（t 无穷大）的序在 −t+t³ 上与 η=+1 相反，且与 v 不相容"""
        f = -T + T * T * T

        def at_infinity(g):
            if g.is_zero():
                return 0
            return 1 if g.num[-1] * g.den[-1] > 0 else -1

        assert at_infinity(f) == 1
        assert sign_under(f, 1) == oracle_sign(f, 1) == -1
        result = check_field_order_samples(FieldOrderTag(1), [T, f, ONE], signer=at_infinity)
        assert not result.passed
        assert result.name == "0<f<g⇒v(f)≥v(g)"
        assert result.witness == ("1", "t")

    def test_samples_reject_zero(self):
        """测试样本不能含 0"""
        with pytest.raises(PreconditionError):
            check_field_order_samples(FieldOrderTag(1), [T, ZERO])


@pytest.mark.unit
class TestEpsilon:
    """ε 与方向表测试类"""

    def test_sign_hom(self):
        """测试 ε(g) = ∏ s_i^{g_i mod 2}"""
        eps = SignHom(2, (1, -1))
        assert eps((3, 5)) == -1
        assert eps((2, -4)) == 1
        with pytest.raises(PreconditionError):
            eps(1)

    def test_sign_hom_validation(self):
        """测试基符号的校验"""
        with pytest.raises(PreconditionError):
            SignHom(2, (1,))
        with pytest.raises(PreconditionError):
            SignHom(1, (2,))

    def test_epsilon_from_eta(self):
        """测试由基符号延拓并在网格上验证乘性"""
        eps = epsilon_from_eta(2, [-1, 1], bound=2)
        assert eps((1, 0)) == -1
        assert eps.check_multiplicative(2).passed

    @pytest.mark.parametrize("eta", [1, -1])
    def test_parity_tables_accepted(self, eta):
        """测试 table(g) = table(1)^g 的方向表"""
        assert check_prop_fieldorders(_parity_table(eta))(1) == eta

    @pytest.mark.parametrize(
        ("table", "witness"),
        [
            ({0: 1, 1: -1, 2: -1}, (1, 1)),
            ({0: -1, 1: 1}, (0, 0)),
            ({1: 1, -1: -1}, (-1, 1)),
            ({1: -1, 2: 1, 3: 1}, (1, 2)),
            ({2: -1}, (2,)),
            ({1: 1, 3: -1}, (1, 3)),
        ],
    )
    def test_inconsistent_tables_rejected(self, table, witness):
        """测试奇偶不一致的方向表及其反例对"""
        with pytest.raises(NotAHomomorphism) as excinfo:
            check_prop_fieldorders(table)
        assert excinfo.value.witness == witness

    def test_inconsistent_tables_name_only_table_keys(self):
        """测试反例只引用表中出现的键"""
        for table in ({0: 1, 1: -1, 2: -1}, {1: 1, -1: -1}, {-2: -1, -1: 1, 0: 1, 1: 1}, {2: -1, 5: 1}):
            with pytest.raises(NotAHomomorphism) as excinfo:
                check_prop_fieldorders(table)
            assert set(excinfo.value.witness) <= set(table)

    def test_unit_derived_from_table(self):
        """测试表中没有 1 时由奇数处的取值确定 ε(1)"""
        assert check_prop_fieldorders({-3: -1, 2: 1})(1) == -1
        assert check_prop_fieldorders({0: 1, 2: 1})(1) == 1

    def test_table_validation(self):
        """测试方向表的取值"""
        with pytest.raises(PreconditionError):
            check_prop_fieldorders({1: 0})

    def test_lifted_signer(self):
        """测试方向表给出的符号函数与 η 一致"""
        sign = lifted_signer(_parity_table(-1))
        for f in random_corpus(seed=1, size=30):
            assert sign(f) == sign_under(f, -1)
        assert check_field_order_samples(FieldOrderTag(-1), [T, -T, ONE, ONE - T], signer=sign).passed
        with pytest.raises(PreconditionError):
            sign(qsection(5))


@pytest.mark.unit
class TestClassicalBK:
    """经典 Baer-Krull 测试类"""

    def test_corpus_is_seeded(self, workbench_config):
        """测试语料由种子决定，规模来自配置"""
        workbench_config(corpus_size=7)
        assert len(random_corpus()) == 7
        assert random_corpus(seed=5, size=10) == random_corpus(seed=5, size=10)
        assert not any(f.is_zero() for f in random_corpus(seed=5, size=10))

    def test_two_field_orders(self):
        """测试 ℚ(t) 上恰有两个与 v 相容的域序"""
        report = classical_bk(corpus=random_corpus(seed=0, size=20))
        assert report.count == 2
        assert report.passed
        assert [t.eta for t in report.tags] == [1, -1]
        assert all(t.recovered_eta == t.eta for t in report.tags)
        assert report.caveats

    def test_candidate_enumeration(self):
        """测试 8 个候选符号函数中恰有两个通过，且都与 sign_under 一致"""
        witnesses = [T, -T, T * T, ONE - T, ONE]
        candidates = candidate_signers()
        assert len(candidates) == 8
        survivors = [
            (label, signer)
            for label, signer in candidates
            if check_field_order_samples(FieldOrderTag(1), witnesses, signer=signer).passed
        ]
        assert [label for label, _ in survivors] == ["t→0, η=+1, ρ=+1", "t→0, η=-1, ρ=+1"]
        corpus = random_corpus(seed=2, size=20)
        for (_, signer), eta in zip(survivors, (1, -1), strict=True):
            assert all(signer(f) == sign_under(f, eta) for f in corpus)
        assert classical_bk(corpus=corpus).exhaustive_count == 2

    def test_report_serialises(self):
        """测试报告的 JSON 形式"""
        data = classical_bk(corpus=[T, ONE + T], probes=[-1, 0, 1]).to_dict()
        assert data["count"] == 2
        assert data["tags"][0]["oracle_agreement"] == "2/2"
        assert data["corpus"] == {"seed": 0, "size": 2}
