"""Dual gauges of polyhedral seminorms and minimal-norm extensions.

The dual gauge of a seminorm rho at a functional f is the supremum of
|f(x)| over the unit ball {rho <= 1}. It is finite exactly when f kills
the kernel of rho, which is decided by exact linear algebra before any
LP is set up; the finite value itself is an LP optimum.

The same quantity has a dual description: the unit ball of the dual
gauge of a sum of atoms is the Minkowski sum of the atoms' polar balls.
That description linearizes constraints of the form
``dual_gauge(rho, g) <= bound`` with g itself a variable, which is what
extension polytopes and best-approximation problems need.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import linalg
from .linalg import Subspace, Vec, dot, mat_t_vec, restrict_functional, vec
from .lp import LinExpr, LpBuilder, Optimal, lsum, lterm
from .ratmath import ExtRat, INFINITY, Q, QZERO
from .seminorms import PolyhedralSeminorm, SeminormFamily, encode_epigraph


def _kills_kernel(kernel: Subspace, f: Vec) -> bool:
    return all(dot(f, b) == 0 for b in kernel.basis)


def dual_gauge(rho: PolyhedralSeminorm, f: Vec) -> ExtRat:
    """sup { |f(x)| : rho(x) <= 1 }, exactly, possibly infinite."""
    if len(f) != rho.ambient_dim:
        raise ValueError("dimension mismatch")
    if not _kills_kernel(rho.kernel_subspace(), f):
        return INFINITY
    b = LpBuilder()
    xs = [lterm(b.var()) for _ in range(rho.ambient_dim)]
    b.le(encode_epigraph(b, rho, xs), 1)
    res = b.solve_max(lsum(xs[j] * f[j] for j in range(len(f))))
    assert isinstance(res, Optimal), "kernel pre-check guarantees a finite optimum"
    return ExtRat(res.value)


def dual_gauge_on_subspace(rho: PolyhedralSeminorm, f_on_y: Vec, y: Subspace) -> ExtRat:
    """Dual gauge of the trace of rho on y, at a functional given in
    y-basis coordinates. Works for quotient seminorms too."""
    if len(f_on_y) != y.dim:
        raise ValueError("functional has wrong length for the subspace")
    if y.ambient_dim != rho.ambient_dim:
        raise ValueError("subspace lives in the wrong space")
    if not _kills_kernel(_kernel_on_subspace(rho, y), f_on_y):
        return INFINITY
    b = LpBuilder()
    cs = [lterm(b.var()) for _ in range(y.dim)]
    xs = [
        lsum(cs[i] * y.basis[i][j] for i in range(y.dim))
        for j in range(y.ambient_dim)
    ]
    b.le(encode_epigraph(b, rho, xs), 1)
    res = b.solve_max(lsum(cs[i] * f_on_y[i] for i in range(y.dim)))
    assert isinstance(res, Optimal), "kernel pre-check guarantees a finite optimum"
    return ExtRat(res.value)


def _kernel_on_subspace(rho: PolyhedralSeminorm, y: Subspace) -> Subspace:
    """{c : the embedded vector lies in ker(rho)}, in y coordinates."""
    ann = linalg.annihilator(rho.kernel_subspace())
    rows = tuple(restrict_functional(g, y) for g in ann.basis)
    return linalg.kernel(rows, y.dim)


def encode_dual_gauge_le(
    b: LpBuilder,
    rho: PolyhedralSeminorm,
    g_exprs: Sequence[LinExpr],
    bound: LinExpr,
) -> None:
    """Constrain dual_gauge(rho, g) <= bound, with g given by expressions.

    Uses the polar decomposition: the dual ball of a sum of atoms is the
    Minkowski sum of the atoms' polar balls, so g must split as a sum of
    per-atom combinations of generators whose coefficient mass stays
    within the bound (total mass for a max atom, per-generator mass for
    a sum atom).
    """
    if len(g_exprs) != rho.ambient_dim:
        raise ValueError("dimension mismatch")
    if rho.is_quotient:
        w = rho.quotient_of
        n = w.base.ambient_dim
        pulled = [
            lsum(g_exprs[i] * w.projection[i][j] for i in range(len(g_exprs)))
            for j in range(n)
        ]
        encode_dual_gauge_le(b, w.base, pulled, bound)
        return
    n = rho.ambient_dim
    totals = [LinExpr() for _ in range(n)]
    for atom in rho.atoms:
        contribs = []
        for gen in atom.generators:
            lp = lterm(b.var(nonneg=True))
            lm = lterm(b.var(nonneg=True))
            contribs.append((lp, lm, gen))
        if atom.combine == "max":
            b.le(lsum(lp + lm for lp, lm, _ in contribs), bound)
        else:
            for lp, lm, _ in contribs:
                b.le(lp + lm, bound)
        for j in range(n):
            totals[j] = totals[j] + lsum(
                (lp - lm) * gen[j] for lp, lm, gen in contribs if gen[j] != 0
            )
    for j in range(n):
        b.eq(totals[j], g_exprs[j])


def dual_gauge_by_representation(rho: PolyhedralSeminorm, f: Vec) -> ExtRat:
    """Dual gauge via the polar decomposition LP; agrees with dual_gauge.

    Kept as an independently-derived route for cross-checking: the primal
    route maximizes over the unit ball, this one minimizes over
    representations of f by the seminorm's generators.
    """
    b = LpBuilder()
    t = lterm(b.var(nonneg=True))
    encode_dual_gauge_le(b, rho, [LinExpr(const=c) for c in f], t)
    res = b.solve_min(t)
    if not isinstance(res, Optimal):
        return INFINITY
    return ExtRat(res.value)


@dataclass(frozen=True)
class Pair:
    """A functional on a subspace together with a seminorm whose trace
    gives it a finite dual gauge; the canonical extension-problem datum."""

    f_on_y: Vec
    y: Subspace
    rho: PolyhedralSeminorm
    bound: Q = None  # dual gauge of f on y, filled in by make_pair

    @property
    def ambient_dim(self) -> int:
        return self.y.ambient_dim


def make_pair(f_on_y, y: Subspace, rho: PolyhedralSeminorm) -> Pair:
    f_on_y = vec(f_on_y)
    c = dual_gauge_on_subspace(rho, f_on_y, y)
    if not c.is_finite:
        raise ValueError(
            f"({list(map(str, f_on_y))}, {rho.label}) is not a valid pair: "
            "the restricted dual gauge is infinite"
        )
    return Pair(f_on_y, y, rho, c.unwrap())


def finite_support_witness(f: Vec, fam: SeminormFamily) -> Optional[PolyhedralSeminorm]:
    """First family member giving f a finite dual gauge, if any.

    A finite family may have no such member even for continuous f; the
    absence is reported as None rather than raised."""
    for m in fam.members:
        if dual_gauge(m, f).is_finite:
            return m
    return None


def extension_variables(b: LpBuilder, pair: Pair) -> list[LinExpr]:
    """Fresh ambient-functional variables constrained to extend pair.f_on_y."""
    gs = [lterm(b.var()) for _ in range(pair.ambient_dim)]
    for i, row in enumerate(pair.y.basis):
        b.eq(lsum(gs[j] * row[j] for j in range(len(row))), pair.f_on_y[i])
    return gs


def minimal_extension(pair: Pair) -> Vec:
    """One norm-preserving extension: an ambient functional agreeing with
    f on y whose dual gauge equals the restricted dual gauge."""
    b = LpBuilder()
    gs = extension_variables(b, pair)
    t = lterm(b.var(nonneg=True))
    encode_dual_gauge_le(b, pair.rho, gs, t)
    res = b.solve_min(t)
    assert isinstance(res, Optimal), "a valid pair always admits an extension"
    assert res.value == pair.bound, "extension norm must match the restricted gauge"
    return tuple(res.point[: pair.ambient_dim])


# Contract-vocabulary aliases for the primary operations.
chi = dual_gauge
chi_on_subspace = dual_gauge_on_subspace
one_hbe = minimal_extension
