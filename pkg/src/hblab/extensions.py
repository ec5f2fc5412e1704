"""Extension polytopes, uniqueness certificates and two-sided witnesses.

The set of norm-preserving extensions of a functional from a subspace is
a polytope: extension is a linear condition and the dual-gauge bound
linearizes through the polar decomposition. Uniqueness is therefore
decidable by 2n coordinate LPs, and non-uniqueness always comes with two
explicit distinct witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import linalg
from .linalg import Subspace, Vec, dot, vec
from .lp import Infeasible, LinExpr, LpBuilder, Optimal, lsum, lterm
from .ratmath import Q, Rational, as_q
from .seminorms import (
    PolyhedralSeminorm,
    SeminormFamily,
    dominates,
    encode_epigraph,
)
from .gauge import (
    Pair,
    dual_gauge,
    dual_gauge_on_subspace,
    encode_dual_gauge_le,
    extension_variables,
    make_pair,
    minimal_extension,
)

UNIQUE = "UNIQUE"
MULTIPLE = "MULTIPLE"


@dataclass(frozen=True)
class UniquenessCertificate:
    verdict: str  # UNIQUE or MULTIPLE
    witness: Vec
    second_witness: Optional[Vec]
    coordinate_bounds: tuple  # per ambient coordinate: (min, max)

    @property
    def is_unique(self) -> bool:
        return self.verdict == UNIQUE


@dataclass(frozen=True)
class ExtensionPolytope:
    """All extensions g of pair.f_on_y with dual_gauge(pair.rho, g) <= bound.

    With bound equal to the pair's restricted gauge this is the set of
    norm-preserving extensions; every member then attains the bound
    exactly, because any extension already has gauge >= the restriction.
    """

    pair: Pair
    bound: Q

    def _setup(self, b: LpBuilder) -> list[LinExpr]:
        gs = extension_variables(b, self.pair)
        encode_dual_gauge_le(b, self.pair.rho, gs, LinExpr(const=self.bound))
        return gs

    def contains(self, g: Vec) -> bool:
        g = vec(g)
        if len(g) != self.pair.ambient_dim:
            raise ValueError("dimension mismatch")
        extends = all(
            dot(g, row) == fi for row, fi in zip(self.pair.y.basis, self.pair.f_on_y)
        )
        return extends and dual_gauge(self.pair.rho, g) <= self.bound

    def a_point(self) -> Vec:
        b = LpBuilder()
        gs = self._setup(b)
        res = b.solve_max(LinExpr())
        if isinstance(res, Infeasible):
            # A valid pair always has an extension attaining its bound;
            # emptiness means the LP layers disagree with each other.
            raise RuntimeError("extension polytope is empty; internal inconsistency")
        assert isinstance(res, Optimal)
        return tuple(res.point[: self.pair.ambient_dim])

    def coordinate_bounds(self) -> tuple:
        out = []
        for j in range(self.pair.ambient_dim):
            lo = self._extreme(j, "min")
            hi = self._extreme(j, "max")
            out.append((lo, hi))
        return tuple(out)

    def _extreme(self, j: int, sense: str):
        b = LpBuilder()
        gs = self._setup(b)
        res = b.solve_min(gs[j]) if sense == "min" else b.solve_max(gs[j])
        assert isinstance(res, Optimal), "extension polytope is bounded and nonempty"
        return res

    def certify(self) -> UniquenessCertificate:
        ref = None
        second = None
        bounds = []
        for j in range(self.pair.ambient_dim):
            lo = self._extreme(j, "min")
            hi = self._extreme(j, "max")
            bounds.append((lo.value, hi.value))
            if ref is None:
                ref = tuple(lo.point[: self.pair.ambient_dim])
            if second is None and lo.value != hi.value:
                cand = tuple(hi.point[: self.pair.ambient_dim])
                second = cand if cand != ref else tuple(lo.point[: self.pair.ambient_dim])
        verdict = UNIQUE if second is None else MULTIPLE
        return UniquenessCertificate(verdict, ref, second, tuple(bounds))


def extension_polytope(pair: Pair) -> ExtensionPolytope:
    return ExtensionPolytope(pair, pair.bound)


def certify_extension_uniqueness(pair: Pair) -> UniquenessCertificate:
    """Decide whether the norm-preserving extension of the pair is unique."""
    return extension_polytope(pair).certify()


@dataclass(frozen=True)
class CommonExtensionReport:
    feasible: bool
    witness: Optional[Vec]
    verdict: Optional[str]  # UNIQUE / MULTIPLE when feasible
    second_witness: Optional[Vec]


def common_extension_certificate(
    f_on_y: Vec, y: Subspace, requirements: Sequence[tuple[PolyhedralSeminorm, Q]]
) -> CommonExtensionReport:
    """Extensions of f satisfying dual_gauge(rho_k, g) <= c_k for every k.

    Reports feasibility and, when feasible, uniqueness with witnesses.
    """
    f_on_y = vec(f_on_y)

    def setup(b: LpBuilder) -> list[LinExpr]:
        gs = [lterm(b.var()) for _ in range(y.ambient_dim)]
        for i, row in enumerate(y.basis):
            b.eq(lsum(gs[j] * row[j] for j in range(len(row))), f_on_y[i])
        for rho, c in requirements:
            encode_dual_gauge_le(b, rho, gs, LinExpr(const=as_q(c)))
        return gs

    b = LpBuilder()
    gs = setup(b)
    res = b.solve_max(LinExpr())
    if isinstance(res, Infeasible):
        return CommonExtensionReport(False, None, None, None)
    assert isinstance(res, Optimal)
    ref = None
    second = None
    for j in range(y.ambient_dim):
        extremes = []
        for sense in ("min", "max"):
            bb = LpBuilder()
            gsj = setup(bb)
            r = bb.solve_min(gsj[j]) if sense == "min" else bb.solve_max(gsj[j])
            assert isinstance(r, Optimal), "bounded: every requirement bounds the gauge"
            extremes.append(r)
        lo, hi = extremes
        if ref is None:
            ref = tuple(lo.point[: y.ambient_dim])
        if second is None and lo.value != hi.value:
            cand = tuple(hi.point[: y.ambient_dim])
            second = cand if cand != ref else tuple(lo.point[: y.ambient_dim])
    verdict = UNIQUE if second is None else MULTIPLE
    return CommonExtensionReport(True, ref, verdict, second)


def e1_gap(
    f_on_y: Vec,
    y: Subspace,
    x: Vec,
    rho: PolyhedralSeminorm,
    mu: PolyhedralSeminorm,
    c_rho,
    c_mu,
) -> tuple:
    """Both sides of the sandwich inequality tying two extension bounds
    together at an outside point x: returns (lhs, rhs) where
    lhs = sup over v in y of f(v) - c_rho * rho(v + x) and
    rhs = inf over v in y of -f(v) + c_mu * mu(v - x).

    c_rho and c_mu must equal the restricted dual gauges of f under rho
    and mu (validated); x must lie outside y. Unboundedness of either LP
    is a hard error: it signals an invalid pair, which the gauge
    pre-checks should have rejected."""
    f_on_y = vec(f_on_y)
    x = vec(x)
    if y.contains(x):
        raise ValueError("x must lie outside the subspace")
    c_rho = as_q(c_rho)
    c_mu = as_q(c_mu)
    if dual_gauge_on_subspace(rho, f_on_y, y) != c_rho:
        raise ValueError("c_rho is not the restricted dual gauge of f under rho")
    if dual_gauge_on_subspace(mu, f_on_y, y) != c_mu:
        raise ValueError("c_mu is not the restricted dual gauge of f under mu")

    def side(seminorm_, coeff, x_sign, f_sign, sense):
        b = LpBuilder()
        cs = [lterm(b.var()) for _ in range(y.dim)]
        exprs = [
            lsum(cs[i] * y.basis[i][j] for i in range(y.dim)) + LinExpr(const=x_sign * x[j])
            for j in range(len(x))
        ]
        val = encode_epigraph(b, seminorm_, exprs)
        obj = lsum(cs[i] * (f_sign * f_on_y[i]) for i in range(y.dim)) + val * coeff
        res = b.solve_max(obj) if sense == "max" else b.solve_min(obj)
        if not isinstance(res, Optimal):
            raise RuntimeError("gap side unbounded; the pair data is inconsistent")
        return res.value

    lhs = side(rho, -c_rho, Q(1), Q(1), "max")
    rhs = side(mu, c_mu, Q(-1), Q(-1), "min")
    return (lhs, rhs)


@dataclass(frozen=True)
class TwoExtensions:
    first: Vec
    second: Vec
    mu_label: str
    radius: Q


def two_extensions_at_radius(
    f_on_y: Vec,
    y: Subspace,
    fam: SeminormFamily,
    rho_prime_label: str,
    r: Rational,
    rho_label: Optional[str] = None,
) -> TwoExtensions:
    """Two distinct extensions of f whose dual gauge under a common
    dominating family member equals exactly r.

    rho_prime_label names the seminorm giving some annihilator direction
    a nonzero finite gauge; rho_label optionally names the seminorm of
    the original pair (defaults to the same member). Requires a member
    dominating both and r strictly above the restricted gauge of f under
    that dominating member; each failure raises with the specific
    obstruction.
    """
    f_on_y = vec(f_on_y)
    r = as_q(r)
    rho = fam.member(rho_label if rho_label is not None else rho_prime_label)
    rho_p = fam.member(rho_prime_label)
    mu = next(
        (m for m in fam.members if dominates(m, rho) and dominates(m, rho_p)),
        None,
    )
    if mu is None:
        raise ValueError("no family member dominates both seminorms")
    pair = make_pair(f_on_y, y, mu)
    if r <= pair.bound:
        raise ValueError(
            f"radius {r} must exceed the restricted gauge {pair.bound}"
        )
    g = _annihilator_direction(y, rho_p)
    if g is None:
        raise ValueError(
            "no annihilator direction has nonzero finite gauge under "
            f"{rho_prime_label!r}"
        )
    base = minimal_extension(pair)

    # {alpha : dual_gauge(mu, base + alpha*g) <= r} is a bounded interval
    # with 0 in its interior; its endpoints land exactly on radius r.
    def endpoint(sense: str) -> Q:
        b = LpBuilder()
        a = lterm(b.var())
        exprs = [LinExpr(const=base[j]) + a * g[j] for j in range(len(g))]
        encode_dual_gauge_le(b, mu, exprs, LinExpr(const=r))
        res = b.solve_max(a) if sense == "max" else b.solve_min(a)
        assert isinstance(res, Optimal), "interval is nonempty and bounded"
        return res.value

    alpha = endpoint("max")
    beta = endpoint("min")
    assert alpha > 0 > beta, "r above the restricted gauge keeps 0 interior"
    first = linalg.vadd(base, linalg.vscale(alpha, g))
    second = linalg.vadd(base, linalg.vscale(beta, g))
    return TwoExtensions(first, second, mu.label, r)


def _annihilator_direction(y: Subspace, rho_p: PolyhedralSeminorm) -> Optional[Vec]:
    basis = linalg.annihilator(y).basis
    candidates = list(basis)
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            candidates.append(linalg.vadd(basis[i], basis[j]))
    for g in candidates:
        val = dual_gauge(rho_p, g)
        if val.is_finite and val.unwrap() > 0:
            return g
    return None


# Contract-vocabulary aliases for the primary operations.
HbePolytope = ExtensionPolytope
hbe_set = extension_polytope
hbe_unique = certify_extension_uniqueness
