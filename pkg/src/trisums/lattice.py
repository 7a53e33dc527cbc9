"""Exact counting and minimization over integer points.

Everything here is exact: sublevel sets of a positive definite quadratic
polynomial are enumerated with box bounds derived from a rational
square-completion of the Gram matrix (Fincke-Pohst style), never from
floating point.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .forms import CrossConfig, CrossSum, DiagonalSum, eval_cross_tilde, tri

MINIMIZER_CAP = 64


class CountConvention(enum.Enum):
    NONNEG = "nonneg"  # every x_i >= 0
    ALL = "all"  # x in Z^k
    ODD = "odd"  # every X_i odd, for quadratic forms


class NotNormalizedError(ValueError):
    pass


@dataclass
class MinimizationResult:
    min_value: int
    minimizers: list[tuple[int, ...]] = field(default_factory=list)
    cap_hit: bool = False


def _coeffs(form) -> tuple[int, ...]:
    if isinstance(form, DiagonalSum):
        return form.b
    return tuple(sorted(int(v) for v in form))


def _convolve_support(series: list[int], support: Sequence[tuple[int, int]], P: int) -> list[int]:
    """Multiply ``series`` by ``sum mult * q^v`` over ``(v, mult)`` pairs, truncated at ``P``."""
    out = [0] * (P + 1)
    for v, mult in support:
        if v > P:
            continue
        for i in range(P + 1 - v):
            a = series[i]
            if a:
                out[i + v] += mult * a
    return out


@lru_cache(maxsize=256)
def diagonal_counts(b: tuple[int, ...], P: int, conv: CountConvention = CountConvention.NONNEG) -> tuple[int, ...]:
    """Counts ``s(0..P)`` of ``sum b_i T_{x_i} = n`` under ``conv`` (NONNEG or ALL)."""
    if conv is CountConvention.ODD:
        raise ValueError("ODD applies to quadratic forms; use odd_counts")
    mult = 2 if conv is CountConvention.ALL else 1
    series = [0] * (P + 1)
    series[0] = 1
    for bi in b:
        support = []
        x = 0
        while bi * tri(x) <= P:
            support.append((bi * tri(x), mult))
            x += 1
        series = _convolve_support(series, support, P)
    return tuple(series)


@lru_cache(maxsize=256)
def odd_counts(b: tuple[int, ...], P: int) -> tuple[int, ...]:
    """``r_o(0..P)`` for the diagonal form ``sum b_i X_i^2`` with every ``X_i`` odd."""
    series = [0] * (P + 1)
    series[0] = 1
    for bi in b:
        support = []
        X = 1
        while bi * X * X <= P:
            support.append((bi * X * X, 2))
            X += 2
        series = _convolve_support(series, support, P)
    return tuple(series)


@lru_cache(maxsize=256)
def form_counts(b: tuple[int, ...], P: int) -> tuple[int, ...]:
    """``r(0..P)`` for ``sum b_i X_i^2`` over all of ``Z^k``."""
    series = [0] * (P + 1)
    series[0] = 1
    for bi in b:
        support = [(0, 1)]
        X = 1
        while bi * X * X <= P:
            support.append((bi * X * X, 2))
            X += 1
        series = _convolve_support(series, support, P)
    return tuple(series)


def count_diagonal(f: DiagonalSum, n: int, conv: CountConvention = CountConvention.NONNEG) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return diagonal_counts(f.b, n, conv)[n]


def count_odd(form, m: int) -> int:
    if m < 0:
        raise ValueError("m must be nonnegative")
    return odd_counts(_coeffs(form), m)[m]


def count_form(form, m: int) -> int:
    if m < 0:
        raise ValueError("m must be nonnegative")
    return form_counts(_coeffs(form), m)[m]


# -- sublevel-set enumeration --------------------------------------------------


class _Ellipsoid:
    """Square completion of ``f~(x) = x^T A x / 2 + L.x + K`` around its real minimizer."""

    def __init__(self, f: CrossSum):
        self.f = f
        k = f.k
        A = [[Fraction(v) for v in row] for row in f.gram()]
        L = f.linear()
        self.center = _solve(A, [-v for v in L])
        # f~(center) = K - L.A^{-1}L / 2 = K + L.center / 2
        self.real_min = f.negative_constant() + sum(l * c for l, c in zip(L, self.center)) / 2
        q = [row[:] for row in A]
        for i in range(k):
            for j in range(i + 1, k):
                q[j][i] = q[i][j]
                q[i][j] = q[i][j] / q[i][i]
            for a in range(i + 1, k):
                for b in range(a, k):
                    q[a][b] -= q[a][i] * q[i][b]
        self.d = [q[i][i] for i in range(k)]
        self.mu = [[q[i][j] if j > i else Fraction(0) for j in range(k)] for i in range(k)]

    def nearest(self) -> tuple[int, ...]:
        """Successive rounding from the last coordinate; a cheap starting point."""
        k = self.f.k
        x = [0] * k
        for i in reversed(range(k)):
            c = self.center[i] - sum(self.mu[i][j] * (x[j] - self.center[j]) for j in range(i + 1, k))
            x[i] = math.floor(c + Fraction(1, 2))
        return tuple(x)

    def search(self, bound: int, shrink: bool = False) -> Iterator[tuple[tuple[int, ...], int]]:
        """Yield every ``(x, f~(x))`` with ``f~(x) <= bound``.

        With ``shrink``, the bound drops to each newly found value, so only
        points at or below the running best are produced.
        """
        f, k = self.f, self.f.k
        state = {"bound": bound}
        x = [0] * k

        def radius() -> Fraction:
            return 2 * (state["bound"] - self.real_min)

        def rec(i: int, used: Fraction) -> Iterator[tuple[tuple[int, ...], int]]:
            rest = radius() - used
            if rest < 0:
                return
            c = self.center[i] - sum(self.mu[i][j] * (x[j] - self.center[j]) for j in range(i + 1, k))
            lo, hi = _int_range(c, rest / self.d[i])
            for v in range(lo, hi + 1):
                part = used + self.d[i] * (v - c) ** 2
                if part > radius():
                    continue
                x[i] = v
                if i == 0:
                    val = eval_cross_tilde(f, x)
                    if val <= state["bound"]:
                        if shrink:
                            state["bound"] = val
                        yield tuple(x), val
                else:
                    yield from rec(i - 1, part)

        if k == 0:
            if 0 <= bound:
                yield (), 0
            return
        if radius() < 0:
            return
        yield from rec(k - 1, Fraction(0))


def _solve(A: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(A)
    m = [row[:] + [rhs[i]] for i, row in enumerate(A)]
    for p in range(n):
        piv = next(r for r in range(p, n) if m[r][p] != 0)
        m[p], m[piv] = m[piv], m[p]
        for r in range(n):
            if r != p and m[r][p]:
                fac = m[r][p] / m[p][p]
                for col in range(p, n + 1):
                    m[r][col] -= fac * m[p][col]
    return [m[i][n] / m[i][i] for i in range(n)]


def _int_range(c: Fraction, t: Fraction) -> tuple[int, int]:
    """Smallest and largest integers ``v`` with ``(v - c)^2 <= t``."""
    s = math.isqrt(math.floor(t)) + 1
    lo = math.floor(c) - s
    hi = math.ceil(c) + s
    while lo <= hi and (lo - c) ** 2 > t:
        lo += 1
    while hi >= lo and (hi - c) ** 2 > t:
        hi -= 1
    return lo, hi


def sublevel_points(f: CrossSum, bound: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """All ``(x, f(x))`` with ``f(x) <= bound``, shift included."""
    for x, val in _Ellipsoid(f).search(bound - f.shift):
        yield x, val + f.shift


def _minimize_block(f: CrossSum) -> MinimizationResult:
    if not f.config.c:
        # pure diagonal: every x_i in {0, -1} gives 0
        mins = itertools.islice(itertools.product((0, -1), repeat=f.k), MINIMIZER_CAP)
        return MinimizationResult(0, list(mins), 2 ** f.k > MINIMIZER_CAP)
    ell = _Ellipsoid(f)
    start = eval_cross_tilde(f, ell.nearest())
    best = start
    for _, val in ell.search(start, shrink=True):
        best = val
    found = []
    cap_hit = False
    for x, val in ell.search(best):
        if len(found) == MINIMIZER_CAP:
            cap_hit = True
            break
        found.append(x)
    return MinimizationResult(best, sorted(found), cap_hit)


def minimize(f: CrossSum | DiagonalSum, ignore_shift: bool = False) -> MinimizationResult:
    """Exact global minimum over ``Z^k`` of ``f~`` (plus the shift unless ignored).

    Blocks are minimized separately; minimizer lists are capped at
    ``MINIMIZER_CAP`` vectors.
    """
    if isinstance(f, DiagonalSum):
        f = f.to_cross()
    total = 0 if ignore_shift else f.shift
    parts = []
    for idx, block in f.blocks():
        res = _minimize_block(block)
        total += res.min_value
        parts.append((idx, res))
    minimizers = []
    cap_hit = any(res.cap_hit for _, res in parts)
    size = math.prod(len(res.minimizers) for _, res in parts)
    for combo in itertools.islice(itertools.product(*(res.minimizers for _, res in parts)), MINIMIZER_CAP):
        x = [0] * f.k
        for (idx, _), sub in zip(parts, combo):
            for pos, v in zip(idx, sub):
                x[pos] = v
        minimizers.append(tuple(x))
    if size > MINIMIZER_CAP:
        cap_hit = True
    return MinimizationResult(total, sorted(minimizers), cap_hit)


def norm_tilde(f: CrossSum | DiagonalSum) -> int:
    """``m~ = -min f~``."""
    return -minimize(f, ignore_shift=True).min_value


def normalize(f: CrossSum | DiagonalSum) -> CrossSum:
    """The normalized polynomial: ``f~`` shifted by ``m~`` so its minimum is 0."""
    if isinstance(f, DiagonalSum):
        f = f.to_cross()
    return f.with_shift(norm_tilde(f))


def is_normalized(f: CrossSum) -> bool:
    return minimize(f).min_value == 0


def block_series(block: CrossSum, P: int) -> tuple[int, list[int]]:
    """``(min f~, counts)`` for a single block, counts indexed by ``f~(x) - min``."""
    if not block.config.c and block.k == 1:
        b = block.b[0]
        return 0, list(diagonal_counts((b,), P, CountConvention.ALL))
    res = _minimize_block(block)
    counts = [0] * (P + 1)
    for _, val in _Ellipsoid(block).search(res.min_value + P):
        counts[val - res.min_value] += 1
    return res.min_value, counts


def cross_counts(f: CrossSum, P: int) -> list[int]:
    """``#{x in Z^k : f(x) = n}`` for ``n = 0..P``.

    The form is split into connected blocks whose series are multiplied;
    the split depends only on the configuration, so results are deterministic.
    """
    if P < 0:
        raise ValueError("precision must be nonnegative")
    offset = f.shift
    series = [1] + [0] * P
    for _, block in f.blocks():
        low, counts = block_series(block, P)
        offset += low
        series = _convolve_support(series, [(v, a) for v, a in enumerate(counts) if a], P)
    if offset < 0:
        raise NotNormalizedError(f"polynomial takes negative values (minimum {offset})")
    return [0] * min(offset, P + 1) + series[: max(P + 1 - offset, 0)]


def count_cross(f: CrossSum, n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not is_normalized(f):
        raise NotNormalizedError("count_cross expects a normalized polynomial (minimum 0)")
    return cross_counts(f, n)[n]


def _odd_preserving_unimodular(k: int, depth: int) -> Iterator[list[list[int]]]:
    rng = range(-depth, depth + 1)
    for flat in itertools.product(rng, repeat=k * k):
        U = [list(flat[r * k:(r + 1) * k]) for r in range(k)]
        if any(sum(row) % 2 == 0 for row in U):
            continue
        if abs(_int_det(U)) == 1:
            yield U


def _int_det(M: list[list[int]]) -> int:
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    return sum(
        (-1) ** col * M[0][col] * _int_det([row[:col] + row[col + 1:] for row in M[1:]])
        for col in range(n) if M[0][col]
    )


ORBIT_LIMIT = 200_000


def norm_estimate(f: CrossSum | DiagonalSum, search_depth: int = 0) -> int:
    """Upper bound on the norm ``m`` (the least ``|m~|`` over the odd class).

    Depth 0 covers signed variable permutations, which all share one ``m~``
    (a sign flip composed with ``x_i -> -x_i - 1`` preserves ``f~``), so
    it is just ``|m~|``. Depth ``d > 0`` also tries every unimodular change
    of variables with entries in ``[-d, d]`` and odd row sums whose image
    keeps even off-diagonal Gram entries. The result is an upper bound only.
    """
    if isinstance(f, DiagonalSum):
        f = f.to_cross()
    best = abs(norm_tilde(f))
    if search_depth <= 0 or best == 0:
        return best
    k = f.k
    if (2 * search_depth + 1) ** (k * k) > ORBIT_LIMIT:
        raise ValueError(f"search depth {search_depth} too large for dimension {k}")
    A = f.gram()
    for U in _odd_preserving_unimodular(k, search_depth):
        G = [[sum(U[r][i] * A[r][s] * U[s][j] for r in range(k) for s in range(k)) for j in range(k)] for i in range(k)]
        if any(G[i][j] % 2 for i in range(k) for j in range(k) if i != j):
            continue
        g = CrossSum([G[i][i] for i in range(k)], CrossConfig(k, {(i, j): G[i][j] // 2 for i in range(k) for j in range(i + 1, k)}))
        best = min(best, abs(norm_tilde(g)))
        if best == 0:
            break
    return best
