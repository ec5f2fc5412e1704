"""Exact simplex over rationals with optimality / unboundedness /
infeasibility certificates.

The solver runs a two-phase primal simplex with Bland's pivot rule
(smallest index enters, smallest basic index leaves on ties), so it
terminates on every input and is fully deterministic. Variables are free
by default; a per-variable nonnegativity flag avoids the usual +/- split
for internal epigraph variables.

Certificate conventions, stated for the constraints exactly as written
(rows ``a_k . x  rel_k  b_k``):

* ``Infeasible.certificate`` is a vector ``lam`` with ``lam_k >= 0`` for
  "<=" rows, ``lam_k <= 0`` for ">=" rows, free for "=" rows, such that
  ``sum_k lam_k a_k`` vanishes on free variables, is nonnegative on
  nonnegative variables, and ``sum_k lam_k b_k < 0``.
* ``Optimal.dual`` is a vector ``y`` with the same sign conventions such
  that ``w = sum_k y_k a_k`` equals the (max-oriented) objective on free
  variables, dominates it on nonnegative variables, and ``y . b`` equals
  the optimal value. For minimization the certificate is reported for
  the negated objective.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from .linalg import Vec, solve, vec
from .ratmath import Q, QZERO, Rational, as_q

Relation = str  # "<=", "=", ">="


@dataclass(frozen=True)
class LinearProgram:
    n_vars: int
    objective: Vec
    sense: str  # "max" or "min"
    constraints: tuple  # of (Vec, Relation, Q)
    nonneg: tuple = ()  # per-variable flags; empty means all free

    def __post_init__(self):
        if self.sense not in ("max", "min"):
            raise ValueError(f"bad sense {self.sense!r}")
        if len(self.objective) != self.n_vars:
            raise ValueError("objective length mismatch")
        for row, rel, _ in self.constraints:
            if len(row) != self.n_vars:
                raise ValueError("constraint row length mismatch")
            if rel not in ("<=", "=", ">="):
                raise ValueError(f"bad relation {rel!r}")
        if self.nonneg and len(self.nonneg) != self.n_vars:
            raise ValueError("nonneg flags length mismatch")


@dataclass(frozen=True)
class Optimal:
    value: Q
    point: Vec
    dual: Vec


@dataclass(frozen=True)
class Unbounded:
    ray: Vec


@dataclass(frozen=True)
class Infeasible:
    certificate: Vec


LpResult = Union[Optimal, Unbounded, Infeasible]


def _pivot(rows, zrow, basis, r, e):
    prow = rows[r]
    inv = 1 / prow[e]
    if inv != 1:
        rows[r] = prow = [inv * x for x in prow]
    for i, row in enumerate(rows):
        if i != r and row[e] != 0:
            f = row[e]
            rows[i] = [a - f * b for a, b in zip(row, prow)]
    if zrow[e] != 0:
        f = zrow[e]
        for j in range(len(zrow)):
            if prow[j] != 0:
                zrow[j] -= f * prow[j]
    basis[r] = e


def _bland(rows, zrow, basis, ncols):
    """Run Bland-rule pivots; returns None on optimum, else entering col
    proving unboundedness."""
    while True:
        enter = next((j for j in range(ncols) if zrow[j] > 0), None)
        if enter is None:
            return None
        best = None  # (ratio, basis_var, row_index)
        for i, row in enumerate(rows):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return enter
        _pivot(rows, zrow, basis, best[1], enter)


def solve_lp(lp: LinearProgram) -> LpResult:
    n = lp.n_vars
    nonneg = lp.nonneg or tuple(False for _ in range(n))
    maximize = lp.sense == "max"
    cobj = list(lp.objective) if maximize else [-c for c in lp.objective]

    # Standard columns: one per nonneg var, a +/- pair per free var.
    col_of: list[list[tuple[int, int]]] = []  # var -> [(col, sign), ...]
    ncols = 0
    for j in range(n):
        if nonneg[j]:
            col_of.append([(ncols, 1)])
            ncols += 1
        else:
            col_of.append([(ncols, 1), (ncols + 1, -1)])
            ncols += 2
    nstruct = ncols

    # Equality rows with slack columns; track origin and sign flips.
    eqrows: list[list] = []
    row_orig: list[tuple[int, int]] = []  # (constraint index, sigma*orient)
    slack_cols = 0
    for k, (arow, rel, _b) in enumerate(lp.constraints):
        if rel == "<=" or rel == ">=":
            slack_cols += 1
    ncols_total = nstruct + slack_cols

    slack_at = nstruct
    for k, (arow, rel, b) in enumerate(lp.constraints):
        orient = -1 if rel == ">=" else 1
        coeffs = [QZERO] * ncols_total
        for j, aj in enumerate(arow):
            if aj != 0:
                for col, sign in col_of[j]:
                    coeffs[col] = orient * sign * aj
        rhs = orient * as_q(b)
        if rel != "=":
            coeffs[slack_at] = Q(1)
            slack_at += 1
        sigma = 1
        if rhs < 0:
            sigma = -1
            coeffs = [-c for c in coeffs]
            rhs = -rhs
        eqrows.append(coeffs + [rhs])
        row_orig.append((k, sigma * orient))

    nrows = len(eqrows)
    art_start = ncols_total
    rows = []
    for i, er in enumerate(eqrows):
        row = er[:-1] + [QZERO] * nrows + [er[-1]]
        row[art_start + i] = Q(1)
        rows.append(row)
    width = ncols_total + nrows + 1
    basis = [art_start + i for i in range(nrows)]

    # Phase 1: maximize -(sum of artificials).
    zrow = [QZERO] * width
    for row in rows:
        for j in range(width):
            if row[j] != 0:
                zrow[j] += row[j]
    for i in range(nrows):
        zrow[art_start + i] = QZERO  # basic columns reduced to zero

    _bland(rows, zrow, basis, ncols_total)  # artificials never re-enter
    phase1_obj = -zrow[-1]

    def dual_from_basis(costs_of_col) -> Vec:
        # Solve B^T y = c_B over the retained rows, then map to the
        # as-written constraint multipliers.
        if not rows:
            return vec([0] * len(lp.constraints))
        bt = [[rows_mat[i][basis[t]] for i in range(len(rows))] for t in range(len(rows))]
        cb = tuple(costs_of_col(basis[t]) for t in range(len(rows)))
        y = solve(tuple(tuple(r) for r in bt), cb)
        assert y is not None, "basis matrix must be invertible"
        lam = [QZERO] * len(lp.constraints)
        for i, yi in enumerate(y):
            k, factor = row_orig_live[i]
            lam[k] += factor * yi
        return tuple(lam)

    # Keep a copy of the original equality matrix for dual extraction
    # (rows may be dropped below; track live rows).
    rows_mat = [er[:-1] + [QZERO] * nrows for er in eqrows]
    for i in range(nrows):
        rows_mat[i][art_start + i] = Q(1)
    row_orig_live = list(row_orig)

    if phase1_obj != 0:
        lam = dual_from_basis(lambda col: Q(-1) if col >= art_start else QZERO)
        return Infeasible(certificate=lam)

    # Drive artificials out of the basis; drop redundant rows.
    i = 0
    while i < len(rows):
        if basis[i] >= art_start:
            enter = next((j for j in range(ncols_total) if rows[i][j] != 0), None)
            if enter is None:
                del rows[i]
                del basis[i]
                del rows_mat[i]
                del row_orig_live[i]
                continue
            _pivot(rows, zrow, basis, i, enter)
        i += 1

    # Phase 2 objective row.
    cost = [QZERO] * width
    for j in range(n):
        for col, sign in col_of[j]:
            cost[col] = sign * cobj[j]
    zrow = [QZERO] * width
    for j in range(ncols_total):
        zrow[j] = cost[j]
    for i, row in enumerate(rows):
        f = cost[basis[i]]
        if f != 0:
            for j in range(width):
                if row[j] != 0:
                    zrow[j] -= f * row[j]

    enter = _bland(rows, zrow, basis, ncols_total)
    if enter is not None:
        dstd = [QZERO] * ncols_total
        dstd[enter] = Q(1)
        for i, row in enumerate(rows):
            if basis[i] < ncols_total:
                dstd[basis[i]] = -row[enter]
        ray = _to_original(dstd, col_of, n)
        return Unbounded(ray=ray)

    xstd = [QZERO] * ncols_total
    for i, row in enumerate(rows):
        if basis[i] < ncols_total:
            xstd[basis[i]] = row[-1]
    point = _to_original(xstd, col_of, n)
    value_max = -zrow[-1]
    value = value_max if maximize else -value_max

    def phase2_cost(col):
        return cost[col]

    dual = dual_from_basis(phase2_cost)
    return Optimal(value=value, point=point, dual=dual)


def _to_original(xstd, col_of, n) -> Vec:
    out = []
    for j in range(n):
        v = QZERO
        for col, sign in col_of[j]:
            v += sign * xstd[col]
        out.append(v)
    return tuple(out)


# ---------------------------------------------------------------------------
# Small modelling layer used by the rest of the package.


class LinExpr:
    """Affine expression sum(coeff_i * var_i) + const over builder vars."""

    __slots__ = ("terms", "const")

    def __init__(self, terms: Mapping[int, Q] | None = None, const: Rational = 0):
        self.terms: dict[int, Q] = {}
        if terms:
            for v, c in terms.items():
                cq = as_q(c)
                if cq != 0:
                    self.terms[v] = cq
        self.const = as_q(const)

    def __add__(self, other) -> "LinExpr":
        if not isinstance(other, LinExpr):
            return LinExpr(self.terms, self.const + as_q(other))
        terms = dict(self.terms)
        for v, c in other.terms.items():
            nc = terms.get(v, QZERO) + c
            if nc == 0:
                terms.pop(v, None)
            else:
                terms[v] = nc
        return LinExpr(terms, self.const + other.const)

    __radd__ = __add__

    def __neg__(self) -> "LinExpr":
        return LinExpr({v: -c for v, c in self.terms.items()}, -self.const)

    def __sub__(self, other) -> "LinExpr":
        other = other if isinstance(other, LinExpr) else LinExpr(const=other)
        return self + (-other)

    def __rsub__(self, other) -> "LinExpr":
        return (-self) + other

    def __mul__(self, scalar: Rational) -> "LinExpr":
        s = as_q(scalar)
        return LinExpr({v: s * c for v, c in self.terms.items()}, s * self.const)

    __rmul__ = __mul__

    def value_at(self, point: Vec) -> Q:
        return sum((c * point[v] for v, c in self.terms.items()), self.const)


def lterm(var: int, coeff: Rational = 1) -> LinExpr:
    return LinExpr({var: as_q(coeff)})


def lconst(c: Rational) -> LinExpr:
    return LinExpr(const=c)


def lsum(exprs: Iterable[LinExpr]) -> LinExpr:
    acc = LinExpr()
    for e in exprs:
        acc = acc + e
    return acc


@dataclass
class LpBuilder:
    """Incremental LP model over free / nonnegative rational variables."""

    _nonneg: list = field(default_factory=list)
    _constraints: list = field(default_factory=list)

    def var(self, nonneg: bool = False) -> int:
        self._nonneg.append(nonneg)
        return len(self._nonneg) - 1

    def vars(self, k: int, nonneg: bool = False) -> list[int]:
        return [self.var(nonneg) for _ in range(k)]

    @property
    def n_vars(self) -> int:
        return len(self._nonneg)

    def _add(self, lhs: LinExpr, rel: Relation, rhs) -> None:
        rhs = rhs if isinstance(rhs, LinExpr) else LinExpr(const=rhs)
        diff = lhs - rhs
        self._constraints.append((dict(diff.terms), rel, -diff.const))

    def le(self, lhs: LinExpr, rhs=0) -> None:
        self._add(lhs, "<=", rhs)

    def ge(self, lhs: LinExpr, rhs=0) -> None:
        self._add(lhs, ">=", rhs)

    def eq(self, lhs: LinExpr, rhs=0) -> None:
        self._add(lhs, "=", rhs)

    def abs_le(self, expr: LinExpr, bound: LinExpr) -> None:
        """|expr| <= bound via the two linear inequalities."""
        self.le(expr, bound)
        self.le(-expr, bound)

    def _to_lp(self, objective: LinExpr, sense: str) -> LinearProgram:
        n = self.n_vars
        obj = [QZERO] * n
        for v, c in objective.terms.items():
            obj[v] = c
        cons = []
        for terms, rel, rhs in self._constraints:
            row = [QZERO] * n
            for v, c in terms.items():
                row[v] = c
            cons.append((tuple(row), rel, rhs))
        return LinearProgram(
            n_vars=n,
            objective=tuple(obj),
            sense=sense,
            constraints=tuple(cons),
            nonneg=tuple(self._nonneg),
        )

    def solve_max(self, objective: LinExpr) -> LpResult:
        res = solve_lp(self._to_lp(objective, "max"))
        if isinstance(res, Optimal):
            res = Optimal(res.value + objective.const, res.point, res.dual)
        return res

    def solve_min(self, objective: LinExpr) -> LpResult:
        res = solve_lp(self._to_lp(objective, "min"))
        if isinstance(res, Optimal):
            res = Optimal(res.value + objective.const, res.point, res.dual)
        return res
