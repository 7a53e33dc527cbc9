"""Triangular sums, with and without cross terms.

A diagonal sum is ``b_1 T_{x_1} + ... + b_k T_{x_k}``. A cross sum adds terms
``c_ij (2 x_i x_j + x_i + x_j)`` and a constant shift; its quadratic part is
``Q(X) = sum b_i X_i^2 + sum_{i<j} 4 c_ij X_i X_j`` in the odd variables
``X = 2x + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union


def tri(x: int) -> int:
    """The triangular number ``x(x+1)/2``, defined for every integer ``x``."""
    return x * (x + 1) // 2


def _check_dim(k: int, x: Sequence[int]) -> None:
    if len(x) != k:
        raise ValueError(f"expected a vector of length {k}, got {len(x)}")


@dataclass(frozen=True)
class DiagonalSum:
    """``sum b_i T_{x_i}`` with the coefficients kept sorted.

    The empty sum is allowed; it represents 0 only and is the root of the
    escalator tree.
    """

    b: tuple[int, ...]

    def __init__(self, b: Iterable[int]):
        coeffs = tuple(sorted(int(v) for v in b))
        if any(v < 1 for v in coeffs):
            raise ValueError(f"coefficients must be positive: {coeffs}")
        object.__setattr__(self, "b", coeffs)

    @property
    def k(self) -> int:
        return len(self.b)

    @property
    def total(self) -> int:
        return sum(self.b)

    def __call__(self, x: Sequence[int]) -> int:
        return eval_diagonal(self, x)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.b)) + "]"

    def extend(self, coeff: int) -> DiagonalSum:
        return DiagonalSum(self.b + (coeff,))

    def to_cross(self) -> CrossSum:
        return CrossSum(self.b, CrossConfig(self.k, {}), 0)


@dataclass(frozen=True)
class CrossConfig:
    """Symmetric cross-term pattern ``c_ij`` on ``k`` variables (0-based, i < j)."""

    k: int
    c: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __init__(self, k: int, c: Mapping[tuple[int, int], int] | Iterable = ()):
        items = c.items() if isinstance(c, Mapping) else c
        norm: dict[tuple[int, int], int] = {}
        for key, v in items:
            i, j = key
            if i == j:
                raise ValueError("diagonal entries do not belong in a configuration")
            if not (0 <= i < k and 0 <= j < k):
                raise ValueError(f"index pair {(i, j)} out of range for k={k}")
            i, j = min(i, j), max(i, j)
            if (i, j) in norm and norm[(i, j)] != v:
                raise ValueError(f"conflicting values for pair {(i, j)}")
            if v:
                norm[(i, j)] = int(v)
        object.__setattr__(self, "k", int(k))
        object.__setattr__(self, "c", dict(sorted(norm.items())))

    def __hash__(self) -> int:
        return hash((self.k, tuple(self.c.items())))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CrossConfig):
            return NotImplemented
        return self.k == other.k and self.c == other.c

    def get(self, i: int, j: int) -> int:
        if i == j:
            raise ValueError("c_ii is undefined")
        return self.c.get((min(i, j), max(i, j)), 0)

    def neighbours(self, i: int) -> list[int]:
        return [j for j in range(self.k) if j != i and self.get(i, j)]

    def components(self) -> list[list[int]]:
        """Connected components of the graph with edges ``c_ij != 0``."""
        seen = [False] * self.k
        comps = []
        for start in range(self.k):
            if seen[start]:
                continue
            stack, comp = [start], []
            seen[start] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.neighbours(v):
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    @property
    def connected(self) -> bool:
        return self.k > 0 and len(self.components()) == 1

    @property
    def max_abs(self) -> int:
        return max((abs(v) for v in self.c.values()), default=0)

    def restrict(self, idx: Sequence[int]) -> CrossConfig:
        pos = {v: p for p, v in enumerate(idx)}
        return CrossConfig(
            len(idx),
            {(pos[i], pos[j]): v for (i, j), v in self.c.items() if i in pos and j in pos},
        )

    def triples(self) -> list[list[int]]:
        """1-based ``[i, j, c_ij]`` triples, as used by the text syntax."""
        return [[i + 1, j + 1, v] for (i, j), v in self.c.items()]


def leading_minors(gram: Sequence[Sequence[int]]) -> list[Fraction]:
    """Leading principal minors via exact Gaussian elimination."""
    n = len(gram)
    m = [[Fraction(v) for v in row] for row in gram]
    minors = []
    det = Fraction(1)
    for p in range(n):
        if m[p][p] == 0:
            # a zero pivot means the p-th leading minor is zero
            minors.append(Fraction(0))
            minors.extend(Fraction(0) for _ in range(p + 1, n))
            return minors
        det *= m[p][p]
        minors.append(det)
        for r in range(p + 1, n):
            f = m[r][p] / m[p][p]
            if f:
                for col in range(p, n):
                    m[r][col] -= f * m[p][col]
    return minors


@dataclass(frozen=True)
class CrossSum:
    """A triangular sum with cross terms plus a constant shift.

    ``shift`` is 0 for the unnormalized polynomial and ``-min`` for the
    normalized one. The Gram matrix has ``b_i`` on the diagonal and
    ``2 c_ij`` off it, so it must be positive definite.
    """

    b: tuple[int, ...]
    config: CrossConfig
    shift: int = 0

    def __init__(self, b: Iterable[int], config: CrossConfig | None = None, shift: int = 0):
        coeffs = tuple(int(v) for v in b)
        if any(v < 1 for v in coeffs):
            raise ValueError(f"diagonal coefficients must be positive: {coeffs}")
        if config is None:
            config = CrossConfig(len(coeffs), {})
        if config.k != len(coeffs):
            raise ValueError("configuration dimension does not match coefficients")
        object.__setattr__(self, "b", coeffs)
        object.__setattr__(self, "config", config)
        object.__setattr__(self, "shift", int(shift))
        if any(m <= 0 for m in leading_minors(self.gram())):
            raise ValueError("quadratic part is not positive definite")

    @property
    def k(self) -> int:
        return len(self.b)

    def gram(self) -> list[list[int]]:
        k = self.k
        return [[self.b[i] if i == j else 2 * self.config.get(i, j) for j in range(k)] for i in range(k)]

    def tilde(self, x: Sequence[int]) -> int:
        return eval_cross_tilde(self, x)

    def __call__(self, x: Sequence[int]) -> int:
        return eval_cross_tilde(self, x) + self.shift

    def with_shift(self, shift: int) -> CrossSum:
        return CrossSum(self.b, self.config, shift)

    def negative_constant(self) -> int:
        """Sum of the ``c_ij < 0`` constants that ``f~`` adds."""
        return sum(v for v in self.config.c.values() if v < 0)

    def linear(self) -> list[Fraction]:
        """Linear coefficients ``L`` in ``f~(x) = x^T A x / 2 + L.x + const``."""
        return [
            Fraction(self.b[i], 2) + sum(self.config.get(i, j) for j in range(self.k) if j != i)
            for i in range(self.k)
        ]

    def blocks(self) -> list[tuple[list[int], CrossSum]]:
        """Connected blocks as ``(indices, unshifted block)`` pairs."""
        out = []
        for comp in self.config.components():
            out.append((comp, CrossSum([self.b[i] for i in comp], self.config.restrict(comp), 0)))
        return out

    def describe(self) -> dict:
        return {"b": list(self.b), "c": self.config.triples(), "shift": self.shift}


@dataclass(frozen=True)
class OddFormCorrespondence:
    """``sum b_i T_{x_i} = n``  iff  ``sum b_i X_i^2 = 8n + B`` with ``X_i = 2x_i + 1``."""

    form: tuple[int, ...]
    target_offset: int
    scale: int = 8

    def target(self, n: int) -> int:
        return self.scale * n + self.target_offset

    def lift(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(2 * v + 1 for v in x)


def eval_diagonal(f: DiagonalSum, x: Sequence[int]) -> int:
    _check_dim(f.k, x)
    return sum(bi * tri(xi) for bi, xi in zip(f.b, x))


def eval_cross_tilde(f: CrossSum, x: Sequence[int]) -> int:
    """The unnormalized ``f~(x)``; the shift is ignored and the value may be negative."""
    _check_dim(f.k, x)
    total = sum(bi * tri(xi) for bi, xi in zip(f.b, x))
    for (i, j), c in f.config.c.items():
        term = 2 * x[i] * x[j] + x[i] + x[j]
        total += c * (term + 1) if c < 0 else c * term
    return total


def to_odd_form(f: DiagonalSum) -> OddFormCorrespondence:
    return OddFormCorrespondence(f.b, f.total)


Form = Union[DiagonalSum, CrossSum]


def direct_sum(f: Form, g: Form) -> Form:
    """``f (+) g`` on disjoint variables. Shifts add; diagonal sums stay diagonal."""
    if isinstance(f, DiagonalSum) and isinstance(g, DiagonalSum):
        return DiagonalSum(f.b + g.b)
    if isinstance(f, DiagonalSum):
        f = f.to_cross()
    if isinstance(g, DiagonalSum):
        g = g.to_cross()
    off = f.k
    c = dict(f.config.c)
    c.update({(i + off, j + off): v for (i, j), v in g.config.c.items()})
    return CrossSum(f.b + g.b, CrossConfig(f.k + g.k, c), f.shift + g.shift)


def direct_sum_all(forms: Iterable[Form]) -> Form:
    out: Form | None = None
    for f in forms:
        out = f if out is None else direct_sum(out, f)
    if out is None:
        return DiagonalSum(())
    return out


def flip_variable(f: CrossSum, i: int) -> CrossSum:
    """The sum of the form obtained by ``X_i -> -X_i`` (0-based ``i``)."""
    if not 0 <= i < f.k:
        raise IndexError(f"variable index {i} out of range for k={f.k}")
    c = {(a, b): (-v if i in (a, b) else v) for (a, b), v in f.config.c.items()}
    return CrossSum(f.b, CrossConfig(f.k, c), f.shift)


def permute_variables(f: CrossSum, perm: Sequence[int]) -> CrossSum:
    """Variable ``p`` of the result is variable ``perm[p]`` of ``f``."""
    if sorted(perm) != list(range(f.k)):
        raise ValueError("not a permutation")
    inv = {v: p for p, v in enumerate(perm)}
    c = {(inv[a], inv[b]): v for (a, b), v in f.config.c.items()}
    return CrossSum([f.b[p] for p in perm], CrossConfig(f.k, c), f.shift)
