import pytest
from hypothesis import given
from hypothesis import strategies as st

from qo_workbench.errors import GroupSpecError, SpecMismatchError, SubgroupError
from qo_workbench.groups import (
    OUT_OF_WINDOW,
    GroupKind,
    all_subgroups,
    coordinate_subgroup,
    make_group,
    op_add,
    op_neg,
    quotient,
    subgroup_closure,
    subgroup_from_members,
    whole_group,
)


@pytest.mark.unit
class TestMakeGroup:
    """群描述串解析测试类"""

    def test_cyclic(self):
        """测试循环群"""
        group = make_group("Z/4")
        assert group.kind is GroupKind.FINITE
        assert group.factors == (4,)
        assert group.carrier.size == 4
        assert group.carrier.elements == ((0,), (1,), (2,), (3,))

    def test_product(self):
        """测试直积"""
        group = make_group("Z/2 x Z/2")
        assert group.factors == (2, 2)
        assert group.size == 4
        assert group.carrier.elements == ((0, 0), (0, 1), (1, 0), (1, 1))

    def test_windowed(self):
        """测试窗口自由群"""
        group = make_group("Z^2[B=3]")
        assert group.kind is GroupKind.FREE_WINDOWED
        assert (group.rank, group.bound) == (2, 3)
        assert group.carrier.size == 49
        assert group.carrier.elements[group.carrier.zero] == (0, 0)

    def test_windowed_rank_one_shorthand(self):
        """测试 Z[B=k] 即一维窗口群"""
        group = make_group("Z[B=5]")
        assert group.rank == 1
        assert group.carrier.size == 11

    def test_trivial_group(self):
        """测试平凡群"""
        group = make_group("0")
        assert group.carrier.size == 1

    @pytest.mark.parametrize("text", ["Z/1", "Z/0", "Z^2[B=0]", "Q/2", "Z/4 + Z/2", ""])
    def test_rejects_invalid(self, text):
        """测试非法描述串"""
        with pytest.raises(GroupSpecError):
            make_group(text)

    def test_str_roundtrip(self):
        """测试群描述在报告中以描述串出现"""
        assert str(make_group("Z/2 x Z/4")) == "Z/2 x Z/4"
        assert str(make_group("Z^2[B=6]")) == "Z^2[B=6]"


@pytest.mark.unit
class TestGroupLaw:
    """群运算测试类"""

    def test_finite_addition_wraps(self):
        """测试有限群上的模加法"""
        group = make_group("Z/4")
        assert op_add(group, (3,), (2,)) == (1,)

    def test_window_overflow(self):
        """测试窗口溢出返回哨兵值而不是抛异常"""
        group = make_group("Z[B=3]")
        assert op_add(group, (2,), (2,)) is OUT_OF_WINDOW
        assert op_add(group, (2,), (-3,)) == (-1,)

    def test_spec_mismatch(self):
        """测试坐标长度不符"""
        group = make_group("Z/4")
        with pytest.raises(SpecMismatchError):
            op_add(group, (1, 0), (1,))

    def test_element_outside_window(self):
        """测试超出窗口的元素"""
        group = make_group("Z^2[B=2]")
        with pytest.raises(SpecMismatchError):
            group.element((3, 0))

    def test_negation(self):
        """测试取负"""
        assert op_neg(make_group("Z/4"), (1,)) == (3,)
        assert op_neg(make_group("Z^2[B=3]"), (1, -2)) == (-1, 2)

    def test_tables_agree_with_op_add(self):
        """测试载体加法表与 op_add 一致"""
        group = make_group("Z/2 x Z/3")
        carrier = group.carrier
        for i, g in enumerate(carrier.elements):
            for j, h in enumerate(carrier.elements):
                assert carrier.elements[carrier.add(i, j)] == op_add(group, g, h)

    @given(
        a=st.integers(min_value=0, max_value=5),
        b=st.integers(min_value=0, max_value=3),
        c=st.integers(min_value=0, max_value=5),
        d=st.integers(min_value=0, max_value=3),
    )
    def test_abelian_group_laws(self, a, b, c, d):
        """测试交换律与逆元"""
        group = make_group("Z/6 x Z/4")
        g, h = (a, b), (c, d)
        assert op_add(group, g, h) == op_add(group, h, g)
        assert op_add(group, g, op_neg(group, g)) == group.zero()

    @given(x=st.integers(min_value=-4, max_value=4), y=st.integers(min_value=-4, max_value=4))
    def test_window_addition_is_partial(self, x, y):
        """测试窗口加法只在结果落在窗口内时有定义"""
        group = make_group("Z[B=4]")
        result = op_add(group, (x,), (y,))
        if abs(x + y) <= 4:
            assert result == (x + y,)
        else:
            assert result is OUT_OF_WINDOW


@pytest.mark.unit
class TestSubgroups:
    """子群测试类"""

    def test_closure_finite(self):
        """测试有限群上的生成子群"""
        group = make_group("Z/4")
        sub = subgroup_closure(group, [(2,)])
        assert sub.elements() == [(0,), (2,)]

    def test_closure_windowed_coordinate(self):
        """测试窗口群上的坐标子群"""
        group = make_group("Z^2[B=3]")
        sub = subgroup_closure(group, [(0, 1)])
        assert sub.mask == frozenset({1})
        assert sub.size == 7
        assert all(g[0] == 0 for g in sub.elements())

    def test_closure_windowed_rejects_non_coordinate(self):
        """测试窗口群上的非坐标生成元"""
        group = make_group("Z^2[B=3]")
        with pytest.raises(SubgroupError):
            subgroup_closure(group, [(1, 1)])

    def test_from_members_rejects_non_closed(self):
        """测试不封闭的集合"""
        carrier = make_group("Z/4").carrier
        with pytest.raises(SubgroupError) as excinfo:
            subgroup_from_members(carrier, [0, 1])
        assert excinfo.value.witness is not None

    def test_window_relative_subgroup(self):
        """测试窗口内的 2ℤ"""
        carrier = make_group("Z[B=6]").carrier
        evens = [i for i, g in enumerate(carrier.elements) if g[0] % 2 == 0]
        sub = subgroup_from_members(carrier, evens)
        assert sub.size == 7

    @pytest.mark.parametrize(
        ("spec", "count"),
        [("Z/4", 3), ("Z/2 x Z/2", 5), ("Z/6", 4), ("Z/8", 4), ("Z/5", 2)],
    )
    def test_all_subgroups(self, spec, count):
        """测试有限群的子群个数"""
        subgroups = all_subgroups(make_group(spec))
        assert len(subgroups) == count
        assert subgroups[0].size == 1
        assert subgroups[-1].size == make_group(spec).size

    def test_coordinate_subgroup_bad_mask(self):
        """测试越界的坐标掩码"""
        with pytest.raises(SubgroupError):
            coordinate_subgroup(make_group("Z^2[B=3]"), [2])


@pytest.mark.unit
class TestQuotient:
    """商群视图测试类"""

    def test_cyclic_quotient(self):
        """测试 Z/4 模 <2>"""
        group = make_group("Z/4")
        view = quotient(group, subgroup_closure(group, [(2,)]))
        assert view.size == 2
        assert view.carrier.elements == ((0,), (1,))
        assert view.project(3) == view.project(1)
        # (1) + (1) = (2) 落在零陪集里
        assert view.carrier.add(1, 1) == view.carrier.zero

    def test_windowed_quotient_by_axis(self):
        """测试 Z²[B=3] 模第二个坐标轴"""
        group = make_group("Z^2[B=3]")
        view = quotient(group, coordinate_subgroup(group, [1]))
        assert view.carrier.elements == tuple((a, 0) for a in range(-3, 4))
        assert view.carrier.elements[view.carrier.zero] == (0, 0)
        assert view.carrier.elements[view.project(group.carrier.index_of((2, -1)))] == (2, 0)

    def test_representatives_invariants(self):
        """测试代表元两两不同陪集、投影在陪集上为常值、零陪集由 0 代表"""
        group = make_group("Z/2 x Z/4")
        for H in all_subgroups(group):
            view = quotient(group, H)
            assert view.representative(group.carrier.zero) == group.carrier.zero
            assert len({view.project(r) for r in view.representatives}) == view.size
            for g in range(group.carrier.size):
                for h in H.indices:
                    assert view.project(group.carrier.add(g, h)) == view.project(g)

    def test_quotient_inside_ambient(self):
        """测试 K/H：只投影 K 中的元素"""
        group = make_group("Z/8")
        K = subgroup_closure(group, [(2,)])
        H = subgroup_closure(group, [(4,)])
        view = quotient(group, H, ambient=K)
        assert view.size == 2
        assert set(view.projection) == set(K.members)

    def test_subgroup_outside_ambient(self):
        """测试 H 不包含于 K"""
        group = make_group("Z/4")
        with pytest.raises(SubgroupError):
            quotient(group, whole_group(group.carrier), ambient=subgroup_closure(group, [(2,)]))

    def test_window_components(self):
        """测试窗口上 2ℤ 的陪集为连通分支，代表元取范数最小者"""
        carrier = make_group("Z[B=6]").carrier
        evens = subgroup_from_members(carrier, [i for i, g in enumerate(carrier.elements) if g[0] % 2 == 0])
        view = quotient(carrier, evens)
        assert view.size == 2
        assert view.carrier.elements == ((-1,), (0,))
