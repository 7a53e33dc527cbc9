from fractions import Fraction

import pytest

from oracles import brute_class_number6, brute_form_count, brute_three_squares, brute_tri_count
from trisums.classnum import (
    LEAVES,
    RULES,
    IncompleteFactorizationError,
    count_1133_formula,
    factorize,
    hurwitz,
    hurwitz6,
    identity_check,
    leaf_lower_bound,
    rep_lower_bound,
    three_adic_profile,
)
from trisums.lattice import CountConvention, diagonal_counts, form_counts


@pytest.mark.parametrize("N, six", [(3, 2), (4, 3), (23, 18), (11, 6), (15, 12), (20, 12), (36, 15)])
def test_hurwitz6_examples(N, six):
    assert hurwitz6(N).sixH == six
    assert brute_class_number6(N) == six


def test_hurwitz6_invalid_and_errors():
    h = hurwitz6(5)
    assert h.sixH == 0 and not h.valid
    with pytest.raises(ValueError):
        hurwitz6(0)
    with pytest.raises(ValueError):
        hurwitz6(10**7 + 3)


def test_hurwitz6_against_full_scan():
    for N in range(3, 800):
        assert hurwitz6(N).sixH == brute_class_number6(N), N


def test_hurwitz_against_three_squares():
    for n in range(1, 2500):
        r3 = brute_three_squares(n) if n < 400 else form_counts((1, 1, 1), 2500)[n]
        if n % 4 in (1, 2):
            assert r3 == 12 * hurwitz(4 * n)
        elif n % 8 == 3:
            assert r3 == 24 * hurwitz(n)
        elif n % 8 == 7:
            assert r3 == 0


def test_hurwitz_three_squares_up_to_1e4():
    r3 = form_counts((1, 1, 1), 10**4)
    for n in range(1, 10**4 // 4 + 1):
        if n % 4 in (1, 2):
            assert r3[n] == 12 * hurwitz(4 * n)
    for n in range(3, 10**4 + 1, 8):
        assert r3[n] == 24 * hurwitz(n)


def test_hurwitz_weights():
    # sixH is divisible by 6 unless a reduced form is a multiple of (1,0,1) or (1,1,1)
    for N in range(3, 2000):
        h = hurwitz6(N)
        if not h.valid:
            continue
        special = any((N == 4 * d * d) or (N == 3 * d * d) for d in range(1, 30))
        assert (h.sixH % 6 == 0) != special


def test_identity_examples():
    r = identity_check((1, 1, 1), 1)
    assert (r.lhs, r.rhs, r.relation, r.holds) == (3, 3, "eq", True)
    assert hurwitz6(11).sixH == 6
    r = identity_check((1, 1, 2), 0)
    assert r.lhs == hurwitz(8) and r.holds
    r = identity_check((1, 1, 3), 0)
    assert r.relation == "eq" and r.rhs == hurwitz(15) / 2 and r.holds


def test_identity_side_conditions_reported():
    r = identity_check((1, 1, 3), 2)  # 8n+5 = 21
    assert r.status == "side_condition" and r.holds is None
    r = identity_check((1, 3, 6), 2)
    assert r.status == "side_condition"
    r = identity_check((1, 1, 5), 1)  # 8n+7 = 15
    assert r.relation == "geq" and r.holds
    with pytest.raises(KeyError):
        identity_check((1, 2, 5), 0)


def test_lhs_is_enumeration():
    for leaf in RULES:
        for n in (0, 7, 31):
            assert identity_check(leaf, n).lhs == brute_tri_count(list(leaf), n)


def test_identities_hold_up_to_120():
    for leaf in RULES:
        for n in range(121):
            r = identity_check(leaf, n)
            assert r.holds is not False, r


def test_sub_identities_via_quadratic_forms():
    # s_[1,1,3](n) = r_(1,1,12)(8n+5); s_[1,3,6](n) = r_(1,3,6)(8n+10) - r_(2,3,6)(4n+5)
    for n in range(60):
        s113 = diagonal_counts((1, 1, 3), n, CountConvention.NONNEG)[n]
        assert 8 * s113 == brute_form_count([1, 1, 12], 8 * n + 5)
        s136 = diagonal_counts((1, 3, 6), n, CountConvention.NONNEG)[n]
        assert 8 * s136 == form_counts((1, 3, 6), 8 * n + 10)[8 * n + 10] - form_counts((2, 3, 6), 4 * n + 5)[4 * n + 5]


def test_count_1133_formula_examples():
    assert count_1133_formula(0) == 1
    assert count_1133_formula(1) == 2
    assert count_1133_formula(3**35 - 1) == 1
    assert 3**35 - 1 == 50031545098999706
    assert count_1133_formula(3**35 - 1, factorization={3: 35}) == 1


def test_count_1133_formula_matches_enumeration():
    counts = diagonal_counts((1, 1, 3, 3), 2000, CountConvention.NONNEG)
    for n in range(2001):
        value = count_1133_formula(n)
        assert value == counts[n]
        assert value >= three_adic_profile(n).cofactor


def test_factorization_errors():
    with pytest.raises(IncompleteFactorizationError):
        count_1133_formula(1000003 * 1000033 - 1, bound=1000)
    with pytest.raises(IncompleteFactorizationError):
        count_1133_formula(10, factorization={11: 2})
    assert factorize(2 * 3**4 * 1000003) == {2: 1, 3: 4, 1000003: 1}


def test_three_adic_profile():
    p = three_adic_profile(3**5 * 7 - 1)
    assert (p.v3, p.cofactor) == (5, 7)
    assert 3**p.v3 * p.cofactor == p.n + 1


def test_rep_lower_bound():
    assert rep_lower_bound(26, leaf=(1, 1, 3, 3)) == 1  # 27 = 3^3
    assert rep_lower_bound(1, leaf=(1, 1, 3, 3)) == 2
    for n in range(0, 150):
        bound = rep_lower_bound(n)
        assert bound >= 1
        for leaf in LEAVES:
            assert diagonal_counts(leaf, n, CountConvention.NONNEG)[n] >= leaf_lower_bound(leaf, n)
        assert bound == min(leaf_lower_bound(l, n) for l in LEAVES)


@pytest.mark.reference
def test_reference_large_bounds():
    """The large examples need class numbers of discriminants near 1e12-1e17."""
    assert rep_lower_bound(195727301431) >= 270390
    assert rep_lower_bound(48291403767737750) >= 90542761
