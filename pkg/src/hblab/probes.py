"""Uniqueness-property probes, dual-membership tests and model transports.

Each probe is per-functional: a FAILS verdict always carries two distinct
extension witnesses with their seminorms (re-verifiable through the
extension machinery), while HOLDS names the certifying member. Because
the underlying quantifier ("for every functional on Y") ranges over a
continuum, reports carry an explicit quantifier mode: EXACT when the
direction sphere of Y* is finite up to scaling and negation (dim Y <= 1),
SAMPLED otherwise.

Throughout, the subfamily above a member mu is taken in the up-to-scale
order (kernel inclusion): a finite model is a truncation of a directed
family whose cofinal tail absorbs constants, so scale-blind domination
is the faithful finite surrogate for "all rho beyond mu".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import linalg
from .linalg import Mat, Subspace, Vec, dot, mat, unit, vec
from .ratmath import ExtRat, Q, QZERO, Rational, as_q
from .seminorms import (
    Atom,
    PolyhedralSeminorm,
    SeminormFamily,
    quotient_seminorm,
    seminorm,
    subfamily_above,
)
from .gauge import (
    chi,
    chi_on_subspace,
    dual_gauge_by_representation,
    make_pair,
)
from .extensions import (
    MULTIPLE,
    UNIQUE,
    common_extension_certificate,
    hbe_unique,
)

HOLDS = "HOLDS"
FAILS = "FAILS"
NO_PAIR = "NO_PAIR"  # no family member gives the functional a finite gauge


@dataclass(frozen=True)
class FunctionalVerdict:
    f: Vec
    verdict: str  # HOLDS | FAILS | NO_PAIR
    certifying_mu: Optional[str]
    witness: Optional[Vec]  # the shared extension when HOLDS
    # when FAILS: ((label1, witness1), (label2, witness2)), two distinct
    # extensions with the seminorms under which they are norm-preserving
    witness_pair: Optional[tuple]


@dataclass(frozen=True)
class ProbeReport:
    subject: str
    quantifier_mode: str
    verdicts: tuple

    @property
    def holds(self) -> bool:
        return all(v.verdict == HOLDS for v in self.verdicts)


def _canonical_fs(y: Subspace, fs, seed: Optional[int]):
    if y.dim == 0:
        return ((),), "EXACT"
    if y.dim == 1:
        return ((Q(1),),), "EXACT"
    fs = tuple(vec(f) for f in fs)
    mode = f"SAMPLED(n={len(fs)}" + (f", seed={seed})" if seed is not None else ")")
    return fs, mode


def _extension_run(y: Subspace, fam_members, f: Vec):
    """Certify each pair (f, rho) in turn; returns (ok, shared_record,
    fail_pair) where records are (label, witness)."""
    shared = None
    for rho in fam_members:
        cert = hbe_unique(make_pair(f, y, rho))
        if cert.verdict == MULTIPLE:
            return False, None, (
                (rho.label, cert.witness),
                (rho.label, cert.second_witness),
            )
        if shared is None:
            shared = (rho.label, cert.witness)
        elif cert.witness != shared[1]:
            return False, None, (shared, (rho.label, cert.witness))
    return True, shared, None


def _snp_single(y: Subspace, fam: SeminormFamily, f: Vec) -> FunctionalVerdict:
    candidates = [
        mu for mu in fam.members if chi_on_subspace(mu, f, y).is_finite
    ]
    if not candidates:
        return FunctionalVerdict(f, NO_PAIR, None, None, None)
    first_fail = None
    for mu in candidates:
        above = subfamily_above(fam, mu, order="topological")
        ok, shared, fail = _extension_run(y, above, f)
        if ok:
            return FunctionalVerdict(f, HOLDS, mu.label, shared[1], None)
        if first_fail is None:
            first_fail = fail
    return FunctionalVerdict(f, FAILS, None, None, first_fail)


def _usnp_single(y: Subspace, fam: SeminormFamily, f: Vec) -> FunctionalVerdict:
    p_f = [m for m in fam.members if chi_on_subspace(m, f, y).is_finite]
    if not p_f:
        return FunctionalVerdict(f, NO_PAIR, None, None, None)
    ok, shared, fail = _extension_run(y, p_f, f)
    if ok:
        return FunctionalVerdict(f, HOLDS, None, shared[1], None)
    return FunctionalVerdict(f, FAILS, None, None, fail)


def snp_probe(
    y: Subspace, fam: SeminormFamily, fs: Sequence[Vec] = (), seed: Optional[int] = None
) -> ProbeReport:
    """Eventual-uniqueness probe: per functional, HOLDS iff some member mu
    makes every pair above mu share one unique extension."""
    fs, mode = _canonical_fs(y, fs, seed)
    return ProbeReport(
        subject=f"snp(dimY={y.dim}, family={fam.labels()})",
        quantifier_mode=mode,
        verdicts=tuple(_snp_single(y, fam, f) for f in fs),
    )


def usnp_probe(
    y: Subspace, fam: SeminormFamily, fs: Sequence[Vec] = (), seed: Optional[int] = None
) -> ProbeReport:
    """Uniform-uniqueness probe: per functional, HOLDS iff every valid
    pair has the same unique extension."""
    fs, mode = _canonical_fs(y, fs, seed)
    return ProbeReport(
        subject=f"usnp(dimY={y.dim}, family={fam.labels()})",
        quantifier_mode=mode,
        verdicts=tuple(_usnp_single(y, fam, f) for f in fs),
    )


@dataclass(frozen=True)
class SharpMembership:
    g: Vec
    certifying_mu: Optional[str]

    @property
    def present(self) -> bool:
        return self.certifying_mu is not None


def ysharp_membership(g: Vec, y: Subspace, fam: SeminormFamily) -> SharpMembership:
    """Does some member mu make g gauge-faithful to its restriction
    (ambient gauge = restricted gauge, finite) for everything above mu?"""
    g = vec(g)
    g_y = linalg.restrict_functional(g, y)
    for mu in fam.members:
        ok = True
        for rho in subfamily_above(fam, mu, order="topological"):
            cx = chi(rho, g)
            if not cx.is_finite or cx != chi_on_subspace(rho, g_y, y):
                ok = False
                break
        if ok:
            return SharpMembership(g, mu.label)
    return SharpMembership(g, None)


@dataclass(frozen=True)
class DecompositionResult:
    found: bool
    sharp_part: Optional[Vec]
    annihilator_part: Optional[Vec]
    unique: Optional[bool]
    certifying_mu: Optional[str]
    alternative: Optional[Vec]  # a second gauge-faithful extension, if any


def sharp_decomposition(f: Vec, y: Subspace, fam: SeminormFamily) -> DecompositionResult:
    """Split an ambient functional as (gauge-faithful part) + (annihilator
    part), if possible, and decide whether the split is unique.

    The candidates for the faithful part are the extensions g of f
    restricted to y whose ambient gauge meets the restricted gauge for
    every member above some mu: since any extension's gauge already
    dominates the restricted one, these are exactly the points of the
    common extension polytope at the restricted bounds. A second point in
    any such polytope (for any mu) is a second valid decomposition."""
    f = vec(f)
    f_y = linalg.restrict_functional(f, y)
    g = None
    used = None
    unique = True
    alternative = None
    for mu in fam.members:
        above = subfamily_above(fam, mu, order="topological")
        bounds = [chi_on_subspace(rho, f_y, y) for rho in above]
        if any(not b.is_finite for b in bounds):
            continue  # nothing faithful above this mu extends f_y
        rep = common_extension_certificate(
            f_y, y, [(rho, b.unwrap()) for rho, b in zip(above, bounds)]
        )
        if not rep.feasible:
            continue
        if g is None:
            g = rep.witness
            used = mu.label
        for cand in (rep.witness, rep.second_witness):
            if cand is not None and cand != g:
                unique = False
                alternative = cand
    if g is None:
        return DecompositionResult(False, None, None, None, None, None)
    h = linalg.vsub(f, g)
    return DecompositionResult(True, g, h, unique, used, alternative)


def sharp_sum_check(f1: Vec, f2: Vec, y: Subspace, fam: SeminormFamily) -> bool:
    """Given two certified gauge-faithful functionals whose sum kills y,
    report whether the sum is exactly zero."""
    f1, f2 = vec(f1), vec(f2)
    if not ysharp_membership(f1, y, fam).present:
        raise ValueError("f1 is not certified gauge-faithful for this subspace")
    if not ysharp_membership(f2, y, fam).present:
        raise ValueError("f2 is not certified gauge-faithful for this subspace")
    s = linalg.vadd(f1, f2)
    if any(dot(s, row) != 0 for row in y.basis):
        raise ValueError("f1 + f2 does not vanish on the subspace")
    return linalg.is_zero_vec(s)


# ---------------------------------------------------------------------------
# Quotient models


@dataclass(frozen=True)
class QuotientModel:
    z: Subspace
    family: SeminormFamily
    projection: Mat  # q rows of length n: coordinates of the projection
    section: Mat  # q rows of length n: images of the quotient basis in X

    def __iter__(self):
        return iter((self.family, self.projection, self.section))

    def project_point(self, x: Vec) -> Vec:
        return linalg.mat_vec(self.projection, x)

    def project_subspace(self, y: Subspace) -> Subspace:
        return Subspace.span(
            len(self.projection), [self.project_point(b) for b in y.basis]
        )

    def pull_back_functional(self, f: Vec) -> Vec:
        """f composed with the projection, as an ambient covector."""
        return linalg.mat_t_vec(self.projection, f)

    def transport_functional(self, f_on_y: Vec, y: Subspace) -> Vec:
        """Transport a functional on y (vanishing on z) to the projected
        subspace's coordinates, so that values match through the
        projection."""
        yq = self.project_subspace(y)
        rows = tuple(
            tuple(dot(p, b) for b in y.basis) for p in self.projection
        )  # projection of y-coordinates
        out = []
        for bq in yq.basis:
            c = linalg.solve(rows, bq)
            assert c is not None, "projected basis vectors lift into y"
            out.append(dot(vec(f_on_y), c))
        return tuple(out)


def quotient_model(x_fam: SeminormFamily, z: Subspace) -> QuotientModel:
    """Wrap every family member as a quotient seminorm modulo z, with a
    deterministic complement basis.

    The identity "ambient gauge of the pulled-back functional = quotient
    gauge" is asserted on the coordinate functionals at construction, by
    running the primal quotient LP against the pulled-back representation
    LP — two independent pipelines."""
    n = x_fam.ambient_dim
    if z.ambient_dim != n:
        raise ValueError("subspace lives in the wrong space")
    section = linalg.complement_basis(z)
    q = len(section)
    # rows of M are the chosen basis of X: complement first, then z.
    m_rows = section + z.basis
    projection = []
    for r in range(q):
        # row r of M^{-T}: the covector reading off the r-th coordinate
        prow = linalg.solve(m_rows, unit(n, r))  # dot(m_rows[i], p) = delta_ir
        assert prow is not None
        projection.append(prow)
    projection = tuple(projection)
    members = tuple(
        quotient_seminorm(f"{m.label}~", m, z, section, projection)
        for m in x_fam.members
    )
    fam_q = SeminormFamily(members, directed=x_fam.directed)
    model = QuotientModel(z, fam_q, projection, section)
    for qm, base in zip(members, x_fam.members):
        for r in range(q):
            f = unit(q, r)
            primal = chi(qm, f)
            pulled = dual_gauge_by_representation(base, model.pull_back_functional(f))
            if primal != pulled:
                raise RuntimeError(
                    f"quotient gauge identity failed for {base.label}: "
                    f"{primal} != {pulled}"
                )
    return model


@dataclass(frozen=True)
class TransportVerdict:
    f: Vec
    upstairs: FunctionalVerdict
    downstairs: FunctionalVerdict

    @property
    def agree(self) -> bool:
        return self.upstairs.verdict == self.downstairs.verdict


@dataclass(frozen=True)
class TransportReport:
    verdicts: tuple

    @property
    def all_agree(self) -> bool:
        return all(v.agree for v in self.verdicts)


def quotient_usnp_crosscheck(
    y: Subspace, fam: SeminormFamily, fs: Sequence[Vec]
) -> TransportReport:
    """For each sampled nonzero functional on y: quotient by its kernel
    hyperplane inside y and compare the uniform-uniqueness verdict for
    (y in X) at f against (y/Z in X/Z) at the transported functional."""
    out = []
    for f in fs:
        f = vec(f)
        if linalg.is_zero_vec(f):
            raise ValueError("transport crosscheck needs nonzero functionals")
        ker_coords = linalg.kernel_basis((f,), y.dim)
        z = Subspace.span(y.ambient_dim, [y.embed(c) for c in ker_coords])
        model = quotient_model(fam, z)
        yq = model.project_subspace(y)
        fq = model.transport_functional(f, y)
        up = _usnp_single(y, fam, f)
        down = _usnp_single(yq, model.family, fq)
        out.append(TransportVerdict(f, up, down))
    return TransportReport(tuple(out))


# ---------------------------------------------------------------------------
# Weak-topology bridge


def weak_family(
    norm: PolyhedralSeminorm, dual_sample: Sequence[Vec], cap: int
) -> SeminormFamily:
    """Family of max-seminorms over subsets of sampled dual-ball
    functionals, the finite surrogate of a weak topology.

    Every sample point must lie in the norm's dual unit ball (checked
    exactly); subsets are capped by size, and a truncating cap is flagged
    on the family rather than silently applied."""
    sample = [vec(f) for f in dual_sample]
    if not sample:
        raise ValueError("dual sample must be nonempty")
    for f in sample:
        if not (chi(norm, f) <= 1):
            raise ValueError(
                f"sample functional {tuple(map(str, f))} lies outside the dual ball"
            )
    members = []
    top = min(cap, len(sample))
    if top < 1:
        raise ValueError("cap must allow at least singletons")
    for size in range(1, top + 1):
        for combo in itertools.combinations(range(len(sample)), size):
            gens = tuple(sample[i] for i in combo)
            label = "rho_" + "-".join(str(i) for i in combo)
            members.append(seminorm(label, [Atom("max", gens)]))
    truncated = cap < len(sample)
    return SeminormFamily(
        tuple(members), directed=not truncated, closure_truncated=truncated
    )


@dataclass(frozen=True)
class BridgeVerdict:
    f: Vec
    norm_unique: bool
    weak_verdict: str
    sample_size: int

    @property
    def agree(self) -> bool:
        return self.norm_unique == (self.weak_verdict == HOLDS)


@dataclass(frozen=True)
class BridgeReport:
    verdicts: tuple
    quantifier_mode: str

    @property
    def all_agree(self) -> bool:
        return all(v.agree for v in self.verdicts)


def property_u_bridge(
    norm: PolyhedralSeminorm,
    y: Subspace,
    fs: Sequence[Vec] = (),
    seed: Optional[int] = None,
) -> BridgeReport:
    """Compare classic unique-extension behaviour under a single norm with
    the eventual-uniqueness probe over a finite weak-topology family.

    The weak family is built from the normalized coordinate duals and, on
    a non-unique functional, enriched with the two extension witnesses
    scaled into the dual ball — the finite analogue of adjoining the
    offending extensions to the generating sets. Agreement is relative to
    the sample; a FAILS is exact, a HOLDS holds for the sampled family."""
    fs, mode = _canonical_fs(y, fs, seed)
    n = norm.ambient_dim
    base_sample = []
    for i in range(n):
        e = unit(n, i)
        c = chi(norm, e)
        if c.is_finite and c.unwrap() > 0:
            base_sample.append(linalg.vscale(1 / c.unwrap(), e))
    out = []
    for f in fs:
        pair = make_pair(f, y, norm)
        cert = hbe_unique(pair)
        norm_unique = cert.verdict == UNIQUE
        sample = list(base_sample)
        if not norm_unique and pair.bound > 0:
            for w in (cert.witness, cert.second_witness):
                scaled = linalg.vscale(1 / pair.bound, w)
                if scaled not in sample:
                    sample.append(scaled)
        fam = weak_family(norm, sample, cap=len(sample))
        verdict = _snp_single(y, fam, f)
        out.append(BridgeVerdict(f, norm_unique, verdict.verdict, len(sample)))
    return BridgeReport(tuple(out), mode)


# ---------------------------------------------------------------------------
# Extension-vs-approximation duality crosscheck


@dataclass(frozen=True)
class DualityVerdict:
    f: Vec
    extension_verdict: str
    approximation_holds: bool
    uniform_extension_verdict: str
    uniform_approximation_holds: bool

    @property
    def agree(self) -> bool:
        return (self.extension_verdict == HOLDS) == self.approximation_holds and (
            self.uniform_extension_verdict == HOLDS
        ) == self.uniform_approximation_holds


@dataclass(frozen=True)
class DualityReport:
    verdicts: tuple

    @property
    def all_agree(self) -> bool:
        return all(v.agree for v in self.verdicts)


def duality_crosscheck(
    y: Subspace, fam: SeminormFamily, fs: Sequence[Vec]
) -> DualityReport:
    """Per ambient functional: the extension-side uniqueness verdicts
    (eventual and uniform, at the restriction) against the best-
    approximation-side verdicts in the annihilator of y, computed by
    independent LPs. The two sides are linked by the exact bijection
    g -> f - g between best approximations and norm-preserving
    extensions."""
    from .approximation import DEGENERATE, gauge_best_approx

    ann = linalg.annihilator(y)
    out = []
    for f in fs:
        f = vec(f)
        f_y = linalg.restrict_functional(f, y)
        snp_v = _snp_single(y, fam, f_y)
        usnp_v = _usnp_single(y, fam, f_y)

        def approx_run(members) -> bool:
            shared = None
            for rho in members:
                r = gauge_best_approx(f, ann, rho)
                if r.verdict == DEGENERATE and ann.dim > 0:
                    return False
                if r.verdict == MULTIPLE:
                    return False
                if shared is None:
                    shared = r.witness
                elif r.witness != shared:
                    return False
            return True

        candidates = [
            mu for mu in fam.members if chi_on_subspace(mu, f_y, y).is_finite
        ]
        haar_side = any(
            approx_run(subfamily_above(fam, mu, order="topological"))
            for mu in candidates
        )
        p_f = [m for m in fam.members if chi_on_subspace(m, f_y, y).is_finite]
        uniform_side = bool(p_f) and approx_run(p_f)
        out.append(
            DualityVerdict(
                f,
                snp_v.verdict,
                haar_side,
                usnp_v.verdict,
                uniform_side,
            )
        )
    return DualityReport(tuple(out))


@dataclass(frozen=True)
class LineCheckVerdict:
    direction: Vec
    offset: Vec
    line_unique_on_sample: bool
    kernel_snp_verdict: str

    @property
    def agree(self) -> bool:
        return self.line_unique_on_sample == (self.kernel_snp_verdict == HOLDS)


def line_haar_check(
    fam: SeminormFamily, lines: Sequence[tuple], test_points: Sequence[Vec]
) -> tuple:
    """For each (direction, offset) line in the dual: compare unique
    best approximation onto the line (translation-reduced to the span of
    the direction) at sampled functionals with the eventual-uniqueness
    verdict of the direction's kernel hyperplane."""
    from .approximation import haar_probe

    out = []
    for direction, offset in lines:
        direction = vec(direction)
        offset = vec(offset)
        if linalg.is_zero_vec(direction):
            raise ValueError("line direction must be nonzero")
        span = Subspace.span(len(direction), [direction])
        shifted = [linalg.vsub(vec(p), offset) for p in test_points]
        report = haar_probe(span, fam, shifted)
        ker = linalg.kernel((direction,), len(direction))
        snp = snp_probe(ker, fam, [linalg.restrict_functional(vec(p), ker) for p in test_points])
        line_ok = report.holds_on_sample
        # the kernel probe is per-functional; compare aggregate verdicts
        snp_verdict = HOLDS if snp.holds else FAILS
        out.append(LineCheckVerdict(direction, offset, line_ok, snp_verdict))
    return tuple(out)
