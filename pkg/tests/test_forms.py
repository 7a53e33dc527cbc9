import itertools

import pytest
from hypothesis import given, strategies as st

from oracles import T, box, ftilde
from trisums.forms import (
    CrossConfig,
    CrossSum,
    DiagonalSum,
    direct_sum,
    eval_cross_tilde,
    eval_diagonal,
    flip_variable,
    permute_variables,
    to_odd_form,
    tri,
)


def fN(N):
    return CrossSum((N, N), CrossConfig(2, {(0, 1): 1}))


@pytest.mark.parametrize("x, expected", [(0, 0), (3, 6), (-4, 6), (-1, 0), (1, 1)])
def test_tri_values(x, expected):
    assert tri(x) == expected


@given(st.integers(-10**30, 10**30))
def test_tri_symmetry_and_sign(x):
    assert tri(x) == tri(-x - 1)
    assert tri(x) >= 0


def test_diagonal_sum_sorted_and_validated():
    assert DiagonalSum([3, 1, 2]).b == (1, 2, 3)
    assert DiagonalSum([]).k == 0
    with pytest.raises(ValueError):
        DiagonalSum([1, 0])


@pytest.mark.parametrize("b, x, expected", [
    ([1, 1, 1], (1, 1, 3), 8),
    ([1, 1, 1], (1, 1, 2), 5),
    ([1, 2], (0, 1), 2),
    ([1, 1, 3, 3], (0, 0, 1, 0), 3),
])
def test_eval_diagonal(b, x, expected):
    f = DiagonalSum(b)
    assert eval_diagonal(f, x) == expected
    assert expected == sum(bi * T(xi) for bi, xi in zip(f.b, x))


def test_eval_diagonal_dimension_mismatch():
    with pytest.raises(ValueError):
        eval_diagonal(DiagonalSum([1, 2]), (1,))


@given(st.lists(st.integers(1, 50), min_size=1, max_size=6), st.data())
def test_odd_square_identity(b, data):
    f = DiagonalSum(b)
    x = data.draw(st.lists(st.integers(-1000, 1000), min_size=f.k, max_size=f.k))
    assert 8 * eval_diagonal(f, x) + f.total == sum(bi * (2 * xi + 1) ** 2 for bi, xi in zip(f.b, x))


def test_eval_cross_tilde_examples():
    assert eval_cross_tilde(fN(30), (0, -1)) == -1
    assert eval_cross_tilde(fN(30), (0, 0)) == 0
    # [2,2] with c=-1 is only semidefinite; [3,3] has the same value at the origin
    g = CrossSum((3, 3), CrossConfig(2, {(0, 1): -1}))
    assert eval_cross_tilde(g, (0, 0)) == -1


def test_semidefinite_rejected():
    with pytest.raises(ValueError):
        CrossSum((2, 2), CrossConfig(2, {(0, 1): -1}))
    with pytest.raises(ValueError):
        CrossSum((1, 1), CrossConfig(2, {(0, 1): 1}))


def test_cross_matches_oracle_on_box():
    b, c = (5, 7, 9), {(0, 1): 2, (1, 2): -1, (0, 2): 1}
    f = CrossSum(b, CrossConfig(3, c))
    for x in box(3, 3):
        assert f.tilde(x) == ftilde(b, c, x)


def test_shifted_value_and_odd_relation():
    f = fN(20).with_shift(1)
    for x in box(2, 3):
        X = [2 * v + 1 for v in x]
        Q = 20 * X[0] ** 2 + 20 * X[1] ** 2 + 4 * X[0] * X[1]
        # 8 f~ = Q(X) - (b1 + b2 + 4 c) with the c_ij >= 0 convention
        assert 8 * f.tilde(x) == Q - (20 + 20 + 4)
        assert f(x) == f.tilde(x) + 1


@pytest.mark.parametrize("b, offset", [([1, 1, 1], 3), ([1, 2, 4], 7), ([1, 1, 3, 3], 8)])
def test_to_odd_form(b, offset):
    corr = to_odd_form(DiagonalSum(b))
    assert corr.target_offset == offset
    assert corr.scale == 8
    assert corr.target(1) == 8 + offset


def test_direct_sum():
    assert direct_sum(DiagonalSum([1]), DiagonalSum([2])) == DiagonalSum([1, 2])
    g = direct_sum(fN(20), fN(20))
    assert g.k == 4
    assert g.config.c == {(0, 1): 1, (2, 3): 1}
    assert not g.config.connected
    a, b = fN(20).with_shift(1), fN(30).with_shift(1)
    assert direct_sum(a, b).shift == a.shift + b.shift


def test_direct_sum_evaluates_as_sum():
    f = CrossSum((4, 5), CrossConfig(2, {(0, 1): -1}), 3)
    g = CrossSum((2,), None, 1)
    h = direct_sum(f, g)
    for x in box(3, 2):
        assert h(x) == f(x[:2]) + g(x[2:])


def test_flip_variable():
    f = fN(20)
    flipped = flip_variable(f, 0)
    assert flipped.config.c == {(0, 1): -1}
    assert flip_variable(flipped, 0) == f
    with pytest.raises(IndexError):
        flip_variable(f, 2)


@pytest.mark.parametrize("b, c", [
    ((20, 20), {(0, 1): 1}),
    ((5, 7, 9), {(0, 1): 2, (1, 2): -1, (0, 2): 1}),
    ((3, 4, 6), {(0, 1): -1, (1, 2): 1}),
])
def test_flip_preserves_values(b, c):
    f = CrossSum(b, CrossConfig(len(b), c))
    for i in range(f.k):
        g = flip_variable(f, i)
        # value sets on a box symmetric under x_i -> -x_i - 1
        rng = range(-4, 4)
        vf = sorted(f.tilde(x) for x in itertools.product(rng, repeat=f.k))
        vg = sorted(g.tilde(x) for x in itertools.product(rng, repeat=f.k))
        assert vf == vg
        # pointwise under the substitution
        for x in itertools.product(rng, repeat=f.k):
            y = list(x)
            y[i] = -x[i] - 1
            assert g.tilde(y) == f.tilde(x)


def test_permute_variables():
    f = CrossSum((3, 5, 7), CrossConfig(3, {(0, 1): 1, (1, 2): -1}))
    g = permute_variables(f, (2, 0, 1))
    assert g.b == (7, 3, 5)
    for x in box(3, 2):
        assert g.tilde((x[2], x[0], x[1])) == f.tilde(x)


def test_config_components_and_connectivity():
    cfg = CrossConfig(4, {(0, 1): 1, (2, 3): -2})
    assert cfg.components() == [[0, 1], [2, 3]]
    assert not cfg.connected
    assert CrossConfig(3, {(0, 1): 1, (1, 2): 3}).connected
    assert CrossConfig(3, {(1, 0): 2}).get(0, 1) == 2
    with pytest.raises(ValueError):
        CrossConfig(2, {(0, 0): 1})
