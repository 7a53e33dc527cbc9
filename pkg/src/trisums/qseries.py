"""Truncated integer q-series: theta series, eta products, U and V operators."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import lattice
from .forms import CrossSum, DiagonalSum
from .lattice import CountConvention


@dataclass(frozen=True)
class TruncatedSeries:
    """``a(0) + a(1) q + ... + a(P) q^P + O(q^(P+1))`` with integer coefficients."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int], precision: int | None = None):
        cs = [int(c) for c in coeffs]
        if precision is not None:
            if precision < 0:
                raise ValueError("precision must be nonnegative")
            cs = (cs + [0] * (precision + 1))[: precision + 1]
        if not cs:
            raise ValueError("a series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def precision(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> int:
        if not 0 <= n <= self.precision:
            raise IndexError(f"coefficient {n} beyond precision {self.precision}")
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, P: int) -> TruncatedSeries:
        if P > self.precision:
            raise ValueError(f"cannot raise precision from {self.precision} to {P}")
        return TruncatedSeries(self.coeffs[: P + 1])

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        P = min(self.precision, other.precision)
        return TruncatedSeries(a + b for a, b in zip(self.coeffs[: P + 1], other.coeffs[: P + 1]))

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        P = min(self.precision, other.precision)
        return TruncatedSeries(a - b for a, b in zip(self.coeffs[: P + 1], other.coeffs[: P + 1]))

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries(-a for a in self.coeffs)

    def scale(self, k: int) -> TruncatedSeries:
        return TruncatedSeries(k * a for a in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        P = min(self.precision, other.precision)
        out = [0] * (P + 1)
        b = other.coeffs
        for i, a in enumerate(self.coeffs[: P + 1]):
            if a:
                for j in range(P + 1 - i):
                    out[i + j] += a * b[j]
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> TruncatedSeries:
        if e < 0:
            return self.inverse() ** (-e)
        result = TruncatedSeries([1], self.precision)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> TruncatedSeries:
        """Multiplicative inverse; the constant term must be a unit (+1 or -1)."""
        a0 = self.coeffs[0]
        if a0 not in (1, -1):
            raise ValueError("only series with constant term +1 or -1 invert over the integers")
        P = self.precision
        inv = [0] * (P + 1)
        inv[0] = a0
        for n in range(1, P + 1):
            s = sum(self.coeffs[i] * inv[n - i] for i in range(1, n + 1))
            inv[n] = -a0 * s
        return TruncatedSeries(inv)

    def shift(self, k: int) -> TruncatedSeries:
        """Multiply by ``q^k`` (``k >= 0``); precision grows by ``k``."""
        if k < 0:
            raise ValueError("negative shifts would need a Laurent series")
        return TruncatedSeries([0] * k + list(self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def combine(lhs: TruncatedSeries, rhs: TruncatedSeries | None, op: str, k: int = 1) -> TruncatedSeries:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "scale":
        return lhs.scale(k)
    raise ValueError(f"unknown operation {op!r}")


def op_U(s: TruncatedSeries, d: int) -> TruncatedSeries:
    """``a(n) -> a(dn)``."""
    if d < 1:
        raise ValueError("d must be positive")
    return TruncatedSeries(s.coeffs[d * n] for n in range(s.precision // d + 1))


def op_V(s: TruncatedSeries, d: int) -> TruncatedSeries:
    """``q -> q^d``; precision becomes ``d * P``."""
    if d < 1:
        raise ValueError("d must be positive")
    out = [0] * (d * s.precision + 1)
    for n, a in enumerate(s.coeffs):
        out[d * n] = a
    return TruncatedSeries(out)


def theta(f: DiagonalSum | CrossSum, conv: CountConvention | None = None, P: int = 20) -> TruncatedSeries:
    """Generating function ``sum_n #{x : f(x) = n} q^n`` up to ``q^P``.

    Diagonal sums default to NONNEG, cross sums to ALL (the only convention
    that makes sense for them).
    """
    if P < 0:
        raise ValueError("precision must be nonnegative")
    if isinstance(f, DiagonalSum):
        conv = conv or CountConvention.NONNEG
        return TruncatedSeries(lattice.diagonal_counts(f.b, P, conv))
    conv = conv or CountConvention.ALL
    if conv is not CountConvention.ALL:
        raise ValueError("cross sums are counted over all of Z^k")
    return TruncatedSeries(lattice.cross_counts(f, P))


def theta_form(b: Sequence[int], P: int) -> TruncatedSeries:
    """Theta series of the diagonal quadratic form ``sum b_i X_i^2``."""
    return TruncatedSeries(lattice.form_counts(tuple(sorted(b)), P))


def theta_odd(b: Sequence[int], P: int) -> TruncatedSeries:
    """Theta series of ``sum b_i X_i^2`` restricted to odd ``X_i``."""
    return TruncatedSeries(lattice.odd_counts(tuple(sorted(b)), P))


def euler_product(d: int, P: int) -> TruncatedSeries:
    """``prod_{n >= 1} (1 - q^(d n))`` to precision ``P``."""
    out = [0] * (P + 1)
    out[0] = 1
    m = d
    while m <= P:
        for i in range(P, m - 1, -1):
            out[i] -= out[i - m]
        m += d
    return TruncatedSeries(out)


def eta_product(spec: Sequence[tuple[int, int]], P: int) -> tuple[int, TruncatedSeries]:
    """Expand ``prod eta(d z)^r`` for ``(d, r)`` in ``spec``.

    Returns the leading power ``sum d r / 24`` and the series divided by that
    power of ``q`` (so it starts at ``q^0``).
    """
    if P < 0:
        raise ValueError("precision must be nonnegative")
    weight = sum(d * r for d, r in spec)
    if weight % 24:
        raise ValueError(f"leading power {weight}/24 is not an integer")
    out = TruncatedSeries([1], P)
    for d, r in spec:
        if d < 1:
            raise ValueError("multipliers must be positive")
        out = out * euler_product(d, P) ** r
    return weight // 24, out
