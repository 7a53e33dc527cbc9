import pytest

from oracles import box, ftilde
from trisums.counterex import (
    build_fN,
    build_fn,
    g_sum,
    gap_witness_form,
    max_gap_witness,
    smallest_missed,
    verify_fn,
)
from trisums.forms import tri
from trisums.lattice import cross_counts, minimize
from trisums.qseries import theta


@pytest.mark.parametrize("N", [14, 20, 30, 41])
def test_fN_series(N):
    counts = cross_counts(build_fN(N), N - 13)
    assert counts[:2] == [2, 2]
    assert not any(counts[2:])


@pytest.mark.parametrize("N", [14, 20, 30])
def test_fN_against_box_scan(N):
    # every point outside [-3, 2]^2 has value >= N - 2
    vals = [ftilde((N, N), {(0, 1): 1}, x) + 1 for x in box(2, 6)]
    window = N - 13
    assert [vals.count(v) for v in range(window + 1)] == cross_counts(build_fN(N), window)


def test_fN_first_nonzero_beyond_window():
    for N in (14, 20, 30):
        counts = cross_counts(build_fN(N), N)
        assert next(v for v in range(2, N + 1) if counts[v]) == N - 1


def test_fN_rejects_small_N():
    with pytest.raises(ValueError):
        build_fN(13)


def test_g_sum_series_is_power():
    N = 22
    P = N - 13
    assert theta(g_sum(3, N), None, P) == theta(build_fN(N), None, P) ** 3
    counts = cross_counts(g_sum(3, N), P)
    assert [v for v in range(P + 1) if counts[v]] == [0, 1, 2, 3]
    assert g_sum(0, N).k == 0


def test_build_fn_shape():
    spec = build_fn(3)
    assert spec.N == 17
    f = spec.assembled
    assert f.k == 2 * 2 + 4
    assert f.b[-4:] == (4, 4, 4, 7)
    assert f.shift == 2
    assert minimize(f).min_value == 0
    with pytest.raises(ValueError):
        build_fn(3, N=16)
    with pytest.raises(ValueError):
        build_fn(0)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_verify_fn(n):
    report = verify_fn(build_fn(n), 200)
    assert report.passed, report.record()
    assert report.counts[n] == 0
    assert all(report.counts[m] for m in range(201) if m != n)


def test_verify_fn_detects_failure():
    # with N too small the helper refuses; build by hand and check the bad case is reported
    spec = build_fn(2)
    assert verify_fn(spec, 50).record()["passed"]
    with pytest.raises(ValueError):
        verify_fn(spec, 1)


@pytest.mark.parametrize("copies, expected", [(0, 2), (1, 5), (2, 9), (3, 14)])
def test_gap_witness_form_first_gap(copies, expected):
    # {0..copies} + {T_r}: first gap is T_(copies+2) - 1
    assert expected == tri(copies + 2) - 1
    assert smallest_missed(gap_witness_form(copies, 40), 30) == expected


@pytest.mark.parametrize("m", [1, 2, 3])
def test_max_gap_witness(m):
    w = max_gap_witness(m)
    assert w.missed == tri(m + 1) - 1
    assert w.observed == w.missed
    assert w.verified
    assert w.form.k == 2 * (m - 1) + 1


def test_max_gap_witness_checks_N():
    with pytest.raises(ValueError):
        max_gap_witness(3, N=15)
    with pytest.raises(ValueError):
        max_gap_witness(0)
