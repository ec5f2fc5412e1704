"""Best approximation in subspaces, exactly, for seminorms and dual gauges.

Distance problems to a subspace are LPs; the set of minimizers is again
a polytope, so uniqueness of a best approximation is decided by
coordinate LPs with explicit witnesses, in the same style as extension
uniqueness. The dual-gauge variant (approximating a functional from a
subspace of the dual) may have infinite distance, in which case every
point of the subspace trivially minimizes; such degenerate cases are
reported, never silently treated as unique.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import linalg
from .linalg import Subspace, Vec, vec
from .lp import Infeasible, LinExpr, LpBuilder, Optimal, Unbounded, lsum, lterm
from .ratmath import ExtRat, INFINITY, Q, QZERO
from .seminorms import (
    PolyhedralSeminorm,
    SeminormFamily,
    encode_epigraph,
    subfamily_above,
)
from .gauge import dual_gauge_on_subspace, encode_dual_gauge_le

UNIQUE = "UNIQUE"
MULTIPLE = "MULTIPLE"
DEGENERATE = "DEGENERATE"  # infinite distance: every point minimizes


@dataclass(frozen=True)
class BestApproxResult:
    distance: ExtRat
    verdict: str
    witness: Optional[Vec]  # ambient minimizer
    second_witness: Optional[Vec]

    @property
    def is_unique(self) -> bool:
        return self.verdict == UNIQUE


def _polytope_uniqueness(setup, dim: int, embed):
    """Coordinate LPs over a nonempty polyhedron in R^dim; returns
    (verdict, witness, second) with points mapped through embed. An
    unbounded coordinate (possible when a seminorm's kernel meets the
    subspace) is certified as MULTIPLE via a recession ray."""
    ref = None
    second = None
    for j in range(dim):
        extremes = []
        for sense in ("min", "max"):
            b = LpBuilder()
            cs = setup(b)
            res = b.solve_min(cs[j]) if sense == "min" else b.solve_max(cs[j])
            if isinstance(res, Unbounded):
                if ref is None:
                    b2 = LpBuilder()
                    setup(b2)
                    feas = b2.solve_max(LinExpr())
                    assert isinstance(feas, Optimal), "polyhedron is nonempty"
                    ref = tuple(feas.point[:dim])
                ray = tuple(res.ray[:dim])
                other = tuple(a + d for a, d in zip(ref, ray))
                return MULTIPLE, embed(ref), embed(other)
            assert isinstance(res, Optimal), "minimizer polyhedron is nonempty"
            extremes.append(res)
        lo, hi = extremes
        if ref is None:
            ref = tuple(lo.point[:dim])
        if second is None and lo.value != hi.value:
            cand = tuple(hi.point[:dim])
            second = cand if cand != ref else tuple(lo.point[:dim])
    if ref is None:  # zero-dimensional subspace
        ref = ()
    if second is None:
        return UNIQUE, embed(ref), None
    return MULTIPLE, embed(ref), embed(second)


def best_approx_in_subspace(
    x0: Vec, y: Subspace, rho: PolyhedralSeminorm
) -> BestApproxResult:
    """Minimize rho(x0 - y) over the subspace; always a finite distance."""
    x0 = vec(x0)

    def diff_exprs(b: LpBuilder) -> tuple:
        cs = [lterm(b.var()) for _ in range(y.dim)]
        exprs = [
            LinExpr(const=x0[j]) - lsum(cs[i] * y.basis[i][j] for i in range(y.dim))
            for j in range(len(x0))
        ]
        return cs, exprs

    b = LpBuilder()
    cs, exprs = diff_exprs(b)
    res = b.solve_min(encode_epigraph(b, rho, exprs))
    assert isinstance(res, Optimal), "seminorm distances are always attained"
    d = res.value

    def setup(bb: LpBuilder):
        cs2, exprs2 = diff_exprs(bb)
        bb.le(encode_epigraph(bb, rho, exprs2), d)
        return cs2

    verdict, w, w2 = _polytope_uniqueness(setup, y.dim, y.embed)
    return BestApproxResult(ExtRat(d), verdict, w, w2)


def gauge_best_approx(
    f: Vec,
    w: Subspace,
    rho: PolyhedralSeminorm,
    offset: Optional[Vec] = None,
) -> BestApproxResult:
    """Best approximation of the functional f from the (possibly affine)
    set offset + w, measured by the dual gauge of rho."""
    f = vec(f)
    if offset is not None:
        f = linalg.vsub(f, vec(offset))

    def diff_exprs(b: LpBuilder) -> tuple:
        cs = [lterm(b.var()) for _ in range(w.dim)]
        exprs = [
            LinExpr(const=f[j]) - lsum(cs[i] * w.basis[i][j] for i in range(w.dim))
            for j in range(len(f))
        ]
        return cs, exprs

    b = LpBuilder()
    cs, exprs = diff_exprs(b)
    t = lterm(b.var(nonneg=True))
    encode_dual_gauge_le(b, rho, exprs, t)
    res = b.solve_min(t)
    if isinstance(res, Infeasible):
        return BestApproxResult(INFINITY, DEGENERATE, None, None)
    assert isinstance(res, Optimal)
    d = res.value

    def setup(bb: LpBuilder):
        cs2, exprs2 = diff_exprs(bb)
        encode_dual_gauge_le(bb, rho, exprs2, LinExpr(const=d))
        return cs2

    def embed(coords):
        pt = w.embed(coords)
        return pt if offset is None else linalg.vadd(pt, vec(offset))

    verdict, wit, wit2 = _polytope_uniqueness(setup, w.dim, embed)
    return BestApproxResult(ExtRat(d), verdict, wit, wit2)


def dist_to_annihilator(
    f: Vec, y: Subspace, rho: PolyhedralSeminorm
) -> BestApproxResult:
    """Distance from f to the annihilator of y under the dual gauge.

    The value always equals the restricted dual gauge of f on y (in the
    extended sense, infinite on both sides together); this identity is
    asserted on every call as an internal consistency check.
    """
    f = vec(f)
    result = gauge_best_approx(f, linalg.annihilator(y), rho)
    restricted = dual_gauge_on_subspace(rho, linalg.restrict_functional(f, y), y)
    if result.distance != restricted:
        raise RuntimeError(
            f"distance {result.distance} to the annihilator disagrees with "
            f"the restricted gauge {restricted}; LP layers are inconsistent"
        )
    return result


@dataclass(frozen=True)
class SimultaneousReport:
    """Outcome of asking one point of the subspace to minimize every
    member's distance at once, each minimizer being unique."""

    point: Optional[Vec]
    per_member: dict  # label -> BestApproxResult
    obstruction: Optional[tuple]  # (label, reason) for the first failure


def simultaneous_best_approx(
    x0: Vec, y: Subspace, fam: SeminormFamily
) -> SimultaneousReport:
    x0 = vec(x0)
    per = {}
    point = None
    obstruction = None
    for m in fam.members:
        r = best_approx_in_subspace(x0, y, m)
        per[m.label] = r
        if obstruction is not None:
            continue
        if r.verdict != UNIQUE:
            obstruction = (m.label, "non-unique minimizer")
        elif point is None:
            point = r.witness
        elif r.witness != point:
            obstruction = (m.label, "minimizer differs from earlier members")
    if obstruction is not None:
        point = None
    return SimultaneousReport(point, per, obstruction)


@dataclass(frozen=True)
class HaarPointVerdict:
    point: Vec
    holds: bool
    certifying_mu: Optional[str]
    # per candidate mu: (label, reason) explaining why it failed
    obstructions: tuple


@dataclass(frozen=True)
class HaarReport:
    subspace_dim: int
    verdicts: tuple  # HaarPointVerdict per test point

    @property
    def holds_on_sample(self) -> bool:
        return all(v.holds for v in self.verdicts)


def haar_probe(
    w: Subspace,
    fam: SeminormFamily,
    points: Sequence[Vec],
    offset: Optional[Vec] = None,
) -> HaarReport:
    """For each test functional, search for a member mu such that the
    point has one and the same unique best approximation in offset + w
    under the dual gauge of every member dominating mu (up to scale).

    This is the dual-side uniqueness notion that mirrors unique-extension
    behaviour through annihilators; an infinite distance under any
    relevant gauge disqualifies the candidate mu (every point of the
    subspace would minimize trivially)."""
    verdicts = []
    for p in points:
        p = vec(p)
        cert = None
        obstructions = []
        for mu in fam.members:
            reason = None
            shared = None
            for rho in subfamily_above(fam, mu, order="topological"):
                r = gauge_best_approx(p, w, rho, offset=offset)
                if r.verdict == DEGENERATE and w.dim > 0:
                    reason = (mu.label, f"infinite distance under {rho.label}")
                    break
                if r.verdict == MULTIPLE:
                    reason = (mu.label, f"multiple minimizers under {rho.label}")
                    break
                if shared is None:
                    shared = r.witness
                elif r.witness != shared:
                    reason = (mu.label, f"minimizer changes at {rho.label}")
                    break
            if reason is None:
                cert = mu.label
                break
            obstructions.append(reason)
        verdicts.append(
            HaarPointVerdict(p, cert is not None, cert, tuple(obstructions))
        )
    return HaarReport(w.dim, tuple(verdicts))
