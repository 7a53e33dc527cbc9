"""Brute-force oracles, deliberately independent of the library's enumeration paths."""

import itertools


def T(x):
    return x * (x + 1) // 2


def box(k, r):
    return itertools.product(range(-r, r + 1), repeat=k)


def brute_tri_count(b, n, nonneg=True):
    """Count x with sum b_i T(x_i) = n by scanning every coordinate range."""
    rng = []
    for bi in b:
        xs = [x for x in range(0 if nonneg else -n - 2, n + 2) if bi * T(x) <= n]
        rng.append(xs)
    return sum(1 for x in itertools.product(*rng) if sum(bi * T(xi) for bi, xi in zip(b, x)) == n)


def brute_odd_count(b, m):
    r = int(m ** 0.5) + 1
    odds = [X for X in range(-r, r + 1) if X % 2]
    return sum(1 for X in itertools.product(odds, repeat=len(b)) if sum(bi * Xi * Xi for bi, Xi in zip(b, X)) == m)


def brute_form_count(b, m):
    r = int(m ** 0.5) + 1
    return sum(1 for X in itertools.product(range(-r, r + 1), repeat=len(b))
               if sum(bi * Xi * Xi for bi, Xi in zip(b, X)) == m)


def ftilde(b, c, x):
    """c: dict {(i, j): c_ij} with i < j."""
    v = sum(bi * T(xi) for bi, xi in zip(b, x))
    for (i, j), cij in c.items():
        t = 2 * x[i] * x[j] + x[i] + x[j]
        v += cij * (t + 1) if cij < 0 else cij * t
    return v


def brute_values(b, c, r):
    return [ftilde(b, c, x) for x in box(len(b), r)]


def brute_class_number6(N):
    """6 H(N) by scanning all (a, b, c) with a <= c and |b| <= a, then reducing by the usual rules."""
    if N % 4 not in (0, 3):
        return 0
    total = 0
    for a in range(1, N + 1):
        for b in range(-a, a + 1):
            if (b * b + N) % (4 * a):
                continue
            c = (b * b + N) // (4 * a)
            if c < a:
                continue
            if (abs(b) == a or a == c) and b < 0:
                continue
            if a == b == c:
                total += 2
            elif b == 0 and a == c:
                total += 3
            else:
                total += 6
    return total


def brute_three_squares(N):
    r = int(N ** 0.5) + 1
    return sum(1 for x in range(-r, r + 1) for y in range(-r, r + 1) for z in range(-r, r + 1)
               if x * x + y * y + z * z == N)


def brute_represented(b, limit):
    vals = {0}
    for bi in b:
        vals = {v + bi * T(x) for v in vals for x in range(0, limit + 2) if v + bi * T(x) <= limit}
    return vals
