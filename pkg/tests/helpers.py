"""Shared generators and brute-force checkers for the test suite."""

from fractions import Fraction

from linmin import ExtFun, INF, Measure, Space
from linmin.lp import EQ, GE, LE


def rand_rational(rng, lo=-8, hi=8, den=4):
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def rand_metric(rng, n):
    # positive symmetric seed, then shortest-path closure for the triangle law
    d = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d[i][j] = d[j][i] = Fraction(rng.randint(1, 8), rng.randint(1, 2))
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if i != j and d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return d


def rand_space(rng, n, with_metric=False):
    return Space(
        tuple(f"p{i}" for i in range(n)),
        metric=rand_metric(rng, n) if with_metric else None,
    )


def rand_finite_fun(space, rng):
    return ExtFun(space, tuple(rand_rational(rng) for _ in range(space.n)))


def rand_ext_fun(space, rng, p_inf=Fraction(1, 4)):
    vals = [
        INF if rng.random() < p_inf else rand_rational(rng) for _ in range(space.n)
    ]
    if not any(v is not INF for v in vals):
        vals[0] = Fraction(0)
    return ExtFun(space, tuple(vals))


def rand_outside_measure(space, rng):
    while True:
        w = [rand_rational(rng) for _ in range(space.n)]
        Q = Measure(space, tuple(w))
        if any(v < 0 for v in w) or Q.total() != 1:
            return Q


def constraint_violation(lp, point):
    """Largest violation of the program's constraints at the point (0 = feasible)."""
    worst = Fraction(0)
    for coeffs, rel, rhs in lp.constraints:
        dot = sum(Fraction(c) * p for c, p in zip(coeffs, point))
        if rel == LE:
            v = dot - Fraction(rhs)
        elif rel == GE:
            v = Fraction(rhs) - dot
        else:
            v = abs(dot - Fraction(rhs))
        if v > worst:
            worst = v
    for k, flag in enumerate(lp.nonneg):
        if flag and -point[k] > worst:
            worst = -point[k]
    return worst


def is_valid_ray(lp, ray):
    """A ray must be a feasible direction along which the objective improves."""
    for coeffs, rel, _rhs in lp.constraints:
        dot = sum(Fraction(c) * r for c, r in zip(coeffs, ray))
        if rel == LE and dot > 0:
            return False
        if rel == GE and dot < 0:
            return False
        if rel == EQ and dot != 0:
            return False
    for k, flag in enumerate(lp.nonneg):
        if flag and ray[k] < 0:
            return False
    slope = sum(Fraction(c) * r for c, r in zip(lp.objective, ray))
    return slope > 0 if lp.maximize else slope < 0


def _solve_square(rows, rhs):
    """Gaussian elimination over Fractions; None if singular."""
    n = len(rows)
    A = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        inv = A[col][col]
        A[col] = [v / inv for v in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return [A[r][n] for r in range(n)]


def brute_force_optimum(lp):
    """Enumerate basic points (all n-subsets of tight constraints) and pick
    the best feasible one.  Only sound for bounded feasible programs."""
    from itertools import combinations

    n = len(lp.variables)
    eqs = []
    for coeffs, rel, rhs in lp.constraints:
        eqs.append(([Fraction(c) for c in coeffs], Fraction(rhs)))
    for k, flag in enumerate(lp.nonneg):
        if flag:
            row = [Fraction(0)] * n
            row[k] = Fraction(1)
            eqs.append((row, Fraction(0)))
    best = None
    best_point = None
    for subset in combinations(range(len(eqs)), n):
        rows = [eqs[i][0] for i in subset]
        rhs = [eqs[i][1] for i in subset]
        point = _solve_square(rows, rhs)
        if point is None:
            continue
        if constraint_violation(lp, point) != 0:
            continue
        val = sum(Fraction(c) * p for c, p in zip(lp.objective, point))
        if best is None or (val > best if lp.maximize else val < best):
            best = val
            best_point = point
    return best, best_point
