"""Truants, escalator trees and the block machinery for cross sums."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .forms import CrossConfig, CrossSum, DiagonalSum, direct_sum, eval_cross_tilde, tri
from .lattice import CountConvention, cross_counts, diagonal_counts, norm_tilde, normalize

CHECK_SET = (1, 2, 4, 5, 8)

# Candidate finite check set for norm <= 1 sums, as reported from computer
# search. Reference data; not certified here.
Y1_REFERENCE = (
    1, 2, 3, 4, 5, 6, 8, 9, 10, 11, 12, 13, 14, 16, 17, 19, 20, 23, 24, 25, 26, 29, 32, 33,
    34, 35, 38, 41, 46, 47, 48, 50, 53, 54, 58, 62, 63, 75, 86, 96, 101, 102, 113, 117,
    129, 162, 195, 204, 233,
)


def reachable(b: Sequence[int], cap: int) -> int:
    """Bitmask of the values ``<= cap`` taken by ``sum b_i T_{x_i}``."""
    mask = (1 << (cap + 1)) - 1
    reach = 1
    for bi in b:
        acc = 0
        x = 0
        while bi * tri(x) <= cap:
            acc |= reach << (bi * tri(x))
            x += 1
        reach = acc & mask
    return reach


def represents(f: DiagonalSum, n: int) -> bool:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return bool(reachable(f.b, n) >> n & 1)


def _targets(Z: Iterable[int] | None, cap: int) -> Iterable[int]:
    if Z is None:
        return range(cap + 1)
    return (z for z in sorted(Z) if z <= cap)


def truant_of_mask(mask: int, Z: Iterable[int] | None, cap: int) -> int | None:
    for z in _targets(Z, cap):
        if not mask >> z & 1:
            return z
    return None


def truant(f: DiagonalSum, Z: Iterable[int] | None = None, cap: int = 10_000) -> int | None:
    """Smallest target ``<= cap`` not represented, or None ("no truant up to cap")."""
    return truant_of_mask(reachable(f.b, cap), Z, cap)


def missed_checks(f: DiagonalSum) -> list[int]:
    mask = reachable(f.b, max(CHECK_SET))
    return [t for t in CHECK_SET if not mask >> t & 1]


def is_universal_diagonal(f: DiagonalSum) -> bool:
    """Represents every nonnegative integer iff it represents 1, 2, 4, 5 and 8."""
    return not missed_checks(f)


# -- escalator trees -------------------------------------------------------------


@dataclass
class EscalatorNode:
    path: tuple[int, ...]
    truant: int | None
    status: str  # "leaf_universal", "leaf_up_to_cap", "internal", "truncated_at_cap"
    children: list[EscalatorNode] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "path": list(self.path),
            "truant": self.truant,
            "status": self.status,
            "children": [c.to_json() for c in self.children],
        }

    @classmethod
    def from_json(cls, data: dict) -> EscalatorNode:
        return cls(tuple(data["path"]), data["truant"], data["status"],
                   [cls.from_json(c) for c in data["children"]])

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def leaves(self) -> list[tuple[int, ...]]:
        return [n.path for n in self.walk() if not n.children and n.truant is None]

    def truants(self) -> set[int]:
        return {n.truant for n in self.walk() if n.truant is not None}


def _build(path: tuple[int, ...], Z, truant_cap: int, depth_cap: int,
           coeff_cap: int | None) -> EscalatorNode:
    t = truant(DiagonalSum(path), Z, truant_cap)
    if t is None:
        if Z is None and truant_cap >= max(CHECK_SET):
            return EscalatorNode(path, None, "leaf_universal")
        return EscalatorNode(path, None, "leaf_up_to_cap")
    if len(path) >= depth_cap:
        return EscalatorNode(path, t, "truncated_at_cap")
    lo = path[-1] if path else 1
    hi = t if coeff_cap is None else min(t, coeff_cap)
    node = EscalatorNode(path, t, "internal")
    node.children = [_build(path + (b,), Z, truant_cap, depth_cap, coeff_cap) for b in range(lo, hi + 1)]
    if not node.children:
        node.status = "truncated_at_cap"
    return node


def _build_args(args):
    return _build(*args)


def escalator_tree(Z: Iterable[int] | None = None, truant_cap: int = 10_000, depth_cap: int = 12,
                   coeff_cap: int | None = None, workers: int = 1) -> EscalatorNode:
    """Escalate from the empty sum, fixing each truant ``t`` with ``b_k in [b_{k-1}, t]``.

    ``Z=None`` targets every nonnegative integer; leaves are then certified
    by the check set {1, 2, 4, 5, 8}. For any other target set a leaf only
    means "no truant up to ``truant_cap``". The first level of subtrees can
    be built in worker processes; the result does not depend on ``workers``.
    """
    if truant_cap < 1 or depth_cap < 1:
        raise ValueError("caps must be positive")
    Z = None if Z is None else tuple(sorted(set(Z)))
    t = truant(DiagonalSum(()), Z, truant_cap)
    if t is None:
        return EscalatorNode((), None, "leaf_up_to_cap")
    root = EscalatorNode((), t, "internal")
    hi = t if coeff_cap is None else min(t, coeff_cap)
    jobs = [((b,), Z, truant_cap, depth_cap, coeff_cap) for b in range(1, hi + 1)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            root.children = list(pool.map(_build_args, jobs))
    else:
        root.children = [_build_args(j) for j in jobs]
    return root


# -- relative representation S/T ---------------------------------------------------


@dataclass
class RelativeReport:
    represented: dict[int, bool]

    @property
    def all_represented(self) -> bool:
        return all(self.represented.values())

    @property
    def missing(self) -> list[int]:
        return [s for s, ok in self.represented.items() if not ok]


def represents_S_mod_T(f: DiagonalSum, S: Iterable[int], T: Iterable[int], P: int | None = None) -> RelativeReport:
    """For each ``s`` in ``S``: is the coefficient of ``q^s`` in ``q^T * theta(f)`` positive?"""
    S = sorted(set(S))
    T = sorted(set(T))
    if P is None:
        P = max(S, default=0)
    if S and max(S) > P:
        raise ValueError("every element of S must be within the precision")
    theta = diagonal_counts(f.b, P, CountConvention.NONNEG)
    coeff = [0] * (P + 1)
    for t in T:
        for i in range(max(P + 1 - t, 0)):
            coeff[i + t] += theta[i]
    return RelativeReport({s: coeff[s] > 0 for s in S})


# -- blocks ------------------------------------------------------------------------


def _bfs_order(cfg: CrossConfig) -> list[int]:
    order, seen = [0], {0}
    while len(order) < cfg.k:
        nxt = min(j for j in range(cfg.k) if j not in seen and any(cfg.get(i, j) for i in order))
        order.append(nxt)
        seen.add(nxt)
    return order


@dataclass
class GreedyAssignment:
    x: tuple[int, ...]
    bound: int
    value: int


def greedy_block_assignment(cfg: CrossConfig) -> GreedyAssignment:
    """Pick ``x in {0,-1}^k`` so that ``f~(x) <= -max(max |c_ij|, k - 1)``.

    Start from ``x = 0`` on one vertex, then give each new vertex the value
    that makes its heaviest edge to an already assigned vertex contribute
    ``-|c_ij|``. With every ``x_i`` in {0, -1} all ``T_{x_i}`` vanish, so the
    value does not depend on the diagonal.
    """
    if cfg.k < 2 or not cfg.connected:
        raise ValueError("greedy assignment needs a connected configuration with k >= 2")
    x = [None] * cfg.k
    order = _bfs_order(cfg)
    x[order[0]] = 0
    done = [order[0]]
    for j in order[1:]:
        i = max(done, key=lambda v: (abs(cfg.get(v, j)), -v))
        c = cfg.get(i, j)
        same = c < 0
        x[j] = x[i] if same else -1 - x[i]
        done.append(j)
    value = 0
    for (i, j), c in cfg.c.items():
        term = 2 * x[i] * x[j] + x[i] + x[j]
        value += c * (term + 1) if c < 0 else c * term
    bound = -max(cfg.max_abs, cfg.k - 1)
    return GreedyAssignment(tuple(x), bound, value)


def canonical_config(cfg: CrossConfig) -> tuple:
    """Lexicographically least upper-triangle vector over signed permutations."""
    k = cfg.k
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    best = None
    for perm in itertools.permutations(range(k)):
        base = [cfg.get(perm[i], perm[j]) for i, j in pairs]
        # a global sign change does nothing, so fix the sign of variable 0
        for signs in itertools.product((1, -1), repeat=k - 1):
            s = (1,) + signs
            vec = tuple(s[i] * s[j] * v for (i, j), v in zip(pairs, base))
            if best is None or vec < best:
                best = vec
    return (k, best)


def config_from_canonical(key: tuple) -> CrossConfig:
    k, vec = key
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    return CrossConfig(k, dict(zip(pairs, vec)))


def enumerate_block_configs(m: int) -> list[CrossConfig]:
    """Connected configurations with ``2 <= k <= m+1`` and ``max |c_ij| <= m``, one per signed-permutation class.

    Brute force over all ``(2m+1)^(k(k-1)/2)`` patterns; practical for ``m <= 2``.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    seen = {}
    for k in range(2, m + 2):
        pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
        for vec in itertools.product(range(-m, m + 1), repeat=len(pairs)):
            cfg = CrossConfig(k, dict(zip(pairs, vec)))
            if not cfg.connected:
                continue
            key = canonical_config(cfg)
            if key not in seen:
                seen[key] = config_from_canonical(key)
    return [seen[key] for key in sorted(seen)]


def bound_MX0(cfg: CrossConfig, M_base: int) -> list[int]:
    """Per-variable diagonal bounds ``M_base + 6 sum_j |c_ij|``."""
    return [M_base + 6 * sum(abs(cfg.get(i, j)) for j in range(cfg.k) if j != i) for i in range(cfg.k)]


# -- bounded norm-1 escalation ---------------------------------------------------------


def norm_one_blocks(diag_cap: int) -> list[CrossSum]:
    """Normalized 2-variable blocks ``c_12 = 1`` with ``b_1 <= b_2 <= diag_cap`` and ``m~ = 1``."""
    out = []
    for b1 in range(1, diag_cap + 1):
        for b2 in range(b1, diag_cap + 1):
            if b1 * b2 <= 4:
                continue
            block = CrossSum((b1, b2), CrossConfig(2, {(0, 1): 1}))
            if norm_tilde(block) == 1:
                out.append(normalize(block))
    return out


def _cross_truant(f: CrossSum, cap: int) -> int | None:
    counts = cross_counts(f, cap)
    return next((z for z in range(1, cap + 1) if not counts[z]), None)


def bounded_norm_one_truants(diag_cap: int = 12, truant_cap: int = 64, depth_cap: int = 8) -> list[int]:
    """Truants met when escalating each norm-1 block by diagonal terms.

    A bounded exploration only: block and escalation coefficients are capped
    at ``diag_cap`` and truants looked for up to ``truant_cap``.
    """
    found: set[int] = set()

    def grow(f: CrossSum, last: int, depth: int) -> None:
        t = _cross_truant(f, truant_cap)
        if t is None:
            return
        found.add(t)
        if depth >= depth_cap:
            return
        for b in range(last, min(t, diag_cap) + 1):
            grow(direct_sum(f, CrossSum((b,))), b, depth + 1)

    for block in norm_one_blocks(diag_cap):
        grow(block, 1, 0)
    return sorted(found)
