"""Cross sums that miss exactly one integer, and the quadratic-gap witness."""

from __future__ import annotations

from dataclasses import dataclass, field

from .forms import CrossConfig, CrossSum, DiagonalSum, direct_sum, direct_sum_all, tri
from .lattice import cross_counts


def build_fN(N: int) -> CrossSum:
    """``N T_x + N T_y + (2xy + x + y) + 1``, the normalized sum of ``N X^2 + N Y^2 + 4 X Y``.

    It takes the values 0 and 1 twice each and nothing else below ``N - 12``.
    """
    if N < 14:
        raise ValueError("N must be at least 14")
    return CrossSum((N, N), CrossConfig(2, {(0, 1): 1}), shift=1)


def g_sum(copies: int, N: int) -> CrossSum:
    """Direct sum of ``copies`` copies of ``f^(N)``; the zero polynomial when ``copies == 0``."""
    if copies == 0:
        return CrossSum(())
    return direct_sum_all(build_fN(N) for _ in range(copies))


@dataclass(frozen=True)
class CounterexampleSpec:
    n: int
    N: int
    assembled: CrossSum


def build_fn(n: int, N: int | None = None) -> CounterexampleSpec:
    """A sum representing every nonnegative integer except ``n``.

    ``g_{n-1} (+) (n+1)(T (+) T (+) T) (+) (2n+1) T``: ``g_{n-1}`` covers
    ``0..n-1`` and first misses ``n``; the scaled three-triangle part fills
    every other residue mod ``n+1``; the last term reaches ``m = n mod (n+1)``
    for ``m > n``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if N is None:
        N = n + 14
    if N <= n + 13:
        raise ValueError(f"need N > n + 13, got N={N} for n={n}")
    tail = CrossSum((n + 1, n + 1, n + 1, 2 * n + 1))
    return CounterexampleSpec(n, N, direct_sum(g_sum(n - 1, N), tail))


@dataclass
class VerificationReport:
    n: int
    bound: int
    counts: list[int] = field(repr=False)
    unexpected_missing: list[int]
    missed_value_count: int

    @property
    def passed(self) -> bool:
        return not self.unexpected_missing and self.missed_value_count == 0

    def record(self) -> dict:
        return {
            "n": self.n,
            "bound": self.bound,
            "passed": self.passed,
            "unexpected_missing": self.unexpected_missing,
            "count_at_n": self.missed_value_count,
        }


def verify_fn(spec: CounterexampleSpec, bound: int) -> VerificationReport:
    """Check that every ``m <= bound`` other than ``n`` is represented and ``n`` is not."""
    if bound < spec.n:
        raise ValueError("bound must be at least n")
    counts = cross_counts(spec.assembled, bound)
    missing = [m for m in range(bound + 1) if m != spec.n and counts[m] == 0]
    return VerificationReport(spec.n, bound, counts, missing, counts[spec.n])


@dataclass
class GapWitness:
    form: CrossSum
    missed: int
    observed: int | None

    @property
    def verified(self) -> bool:
        return self.observed == self.missed


def smallest_missed(f: CrossSum, limit: int) -> int | None:
    counts = cross_counts(f, limit)
    return next((z for z in range(limit + 1) if counts[z] == 0), None)


def gap_witness_form(copies: int, N: int) -> CrossSum:
    """``copies`` copies of ``f^(N)`` plus a lone ``T_y``: values ``{0..copies} + {T_r}``.

    For ``N`` large its first gap is ``T_(copies+2) - 1``.
    """
    return direct_sum(g_sum(copies, N), CrossSum((1,)))


def max_gap_witness(m: int, N: int | None = None) -> GapWitness:
    """A sum of norm below ``m`` whose smallest missed integer is ``T_(m+1) - 1``.

    Uses ``m - 1`` copies of ``f^(N)``; the claim is checked by counting up
    to ``T_(m+1)``, not assumed.
    """
    if m < 1:
        raise ValueError("m must be positive")
    target = tri(m + 1) - 1
    if N is None:
        N = 14 + tri(m + 1)
    if N < 14 + tri(m + 1):
        raise ValueError(f"N must be at least {14 + tri(m + 1)} for m={m}")
    form = gap_witness_form(m - 1, N)
    return GapWitness(form, target, smallest_missed(form, tri(m + 1)))
