"""Independent oracles for the test suite.

Deliberately naive and derived by a different route than the library:
feasibility and optimal values come from Fourier-Motzkin elimination,
optima are cross-checked by brute-force vertex enumeration. Exponential,
but exact, and fine at the problem sizes the tests use.
"""

from __future__ import annotations

import itertools

from hblab.linalg import rank, solve
from hblab.lp import LinearProgram
from hblab.ratmath import Q, QZERO


def _as_leq_rows(lp: LinearProgram):
    """All constraints (including nonneg bounds) as rows a.x <= b."""
    rows = []
    for a, rel, b in lp.constraints:
        if rel in ("<=", "="):
            rows.append((tuple(a), b))
        if rel in (">=", "="):
            rows.append((tuple(-c for c in a), -b))
    nonneg = lp.nonneg or (False,) * lp.n_vars
    for j, flag in enumerate(nonneg):
        if flag:
            row = [QZERO] * lp.n_vars
            row[j] = Q(-1)
            rows.append((tuple(row), QZERO))
    return rows


def _fm_eliminate(rows, j):
    """Project a system of a.x <= b rows along variable j."""
    zero, pos, neg = [], [], []
    for a, b in rows:
        if a[j] == 0:
            zero.append((a, b))
        elif a[j] > 0:
            pos.append((a, b))
        else:
            neg.append((a, b))
    out = list(zero)
    for (ap, bp) in pos:
        for (an, bn) in neg:
            # combine so the j coefficient cancels
            cp, cn = ap[j], -an[j]
            a = tuple(cn * x + cp * y for x, y in zip(ap, an))
            out.append((a, cn * bp + cp * bn))
    return out


def fm_feasible(rows, n) -> bool:
    for j in range(n):
        rows = _fm_eliminate(rows, j)
    return all(b >= 0 for _a, b in rows)


def _recession_rows(lp: LinearProgram):
    """Rows a.d <= 0 describing the recession cone."""
    return [(a, QZERO) for a, _b in _as_leq_rows(lp)]


def fm_classify(lp: LinearProgram):
    """('infeasible',) | ('unbounded',) | ('optimal', value)."""
    rows = _as_leq_rows(lp)
    if not fm_feasible(list(rows), lp.n_vars):
        return ("infeasible",)
    c = lp.objective if lp.sense == "max" else tuple(-x for x in lp.objective)
    # unbounded iff some recession direction has c.d = 1
    rec = _recession_rows(lp)
    rec = rec + [(tuple(-x for x in c), Q(-1)), (c, Q(1))]
    if fm_feasible(rec, lp.n_vars):
        return ("unbounded",)
    # optimal value: project {constraints, t <= c.x} onto t and read off
    # the tightest upper bound on t
    ext = [(a + (QZERO,), b) for a, b in rows]
    ext.append((tuple(-x for x in c) + (Q(1),), QZERO))  # t - c.x <= 0
    for j in range(lp.n_vars):
        ext = _fm_eliminate(ext, j)
    best = None
    for a, b in ext:
        coef = a[-1]
        if coef > 0:
            bound = b / coef
            if best is None or bound < best:
                best = bound
    assert best is not None, "bounded problems must bound t from above"
    value = best if lp.sense == "max" else -best
    return ("optimal", value)


def enumerate_vertices(lp: LinearProgram):
    """All vertices of the feasible region, by brute force over
    n-subsets of the bounding hyperplanes."""
    rows = _as_leq_rows(lp)
    n = lp.n_vars
    verts = set()
    for combo in itertools.combinations(range(len(rows)), n):
        sub = tuple(rows[i][0] for i in combo)
        if rank(sub) < n:
            continue
        pt = solve(sub, tuple(rows[i][1] for i in combo))
        if pt is None:
            continue
        if all(sum(ai * xi for ai, xi in zip(a, pt)) <= b for a, b in rows):
            verts.add(pt)
    return sorted(verts)


def satisfies(lp: LinearProgram, point) -> bool:
    nonneg = lp.nonneg or (False,) * lp.n_vars
    if any(flag and x < 0 for flag, x in zip(nonneg, point)):
        return False
    for a, rel, b in lp.constraints:
        v = sum((ai * xi for ai, xi in zip(a, point)), QZERO)
        if rel == "<=" and not v <= b:
            return False
        if rel == ">=" and not v >= b:
            return False
        if rel == "=" and v != b:
            return False
    return True


def objective_at(lp: LinearProgram, point):
    return sum((c * x for c, x in zip(lp.objective, point)), QZERO)
