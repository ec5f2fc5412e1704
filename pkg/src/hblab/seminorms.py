"""Polyhedral seminorms, quotients, domination order and finite families.

A seminorm here is a finite sum of atoms; each atom combines absolute
values of linear functionals by max or by sum. This closed class covers
weighted l1 / l-infinity norms, pointwise-evaluation seminorms and all
their finite sums, and is stable under the directed-closure operation
(sums of members are again members of the class).

A quotient wrapper evaluates ``inf { base(x - z) : z in Z }`` exactly by
linear programming rather than projecting the polytope, which keeps the
representation small.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import linalg
from .linalg import Mat, Subspace, Vec, dot, mat, mat_t_vec
from .lp import LinExpr, LpBuilder, Optimal, lsum, lterm
from .ratmath import Q, QZERO, Rational

MAX = "max"
SUM = "sum"

# Guard for operations that expand sum-atoms into their linear pieces.
PIECE_CAP = 4096
VERTEX_ENUM_DIM_CAP = 5


@dataclass(frozen=True)
class Atom:
    combine: str  # MAX or SUM
    generators: Mat  # rows are linear functionals, weights folded in

    def __post_init__(self):
        if self.combine not in (MAX, SUM):
            raise ValueError(f"bad combine mode {self.combine!r}")
        if not self.generators:
            raise ValueError("atom needs at least one generator")
        n = len(self.generators[0])
        if any(len(g) != n for g in self.generators):
            raise ValueError("generator length mismatch")

    @property
    def ambient_dim(self) -> int:
        return len(self.generators[0])

    def value(self, x: Vec) -> Q:
        vals = [abs(dot(g, x)) for g in self.generators]
        return max(vals) if self.combine == MAX else sum(vals, QZERO)

    def pieces(self) -> list[Vec]:
        """Linear functionals whose pointwise max equals this atom."""
        if self.combine == MAX:
            out = []
            for g in self.generators:
                out.append(g)
                out.append(tuple(-c for c in g))
            return out
        k = len(self.generators)
        if 2**k > PIECE_CAP:
            raise ValueError(f"sum atom with {k} generators has too many linear pieces")
        out = []
        for signs in itertools.product((1, -1), repeat=k):
            acc = linalg.zeros(self.ambient_dim)
            for s, g in zip(signs, self.generators):
                acc = linalg.vadd(acc, linalg.vscale(s, g))
            out.append(acc)
        return out


def max_atom(generators: Iterable[Iterable[Rational]]) -> Atom:
    return Atom(MAX, mat(generators))


def sum_atom(generators: Iterable[Iterable[Rational]]) -> Atom:
    return Atom(SUM, mat(generators))


@dataclass(frozen=True)
class QuotientWrap:
    base: "PolyhedralSeminorm"
    z: Subspace
    # fixed complement coordinates: section embeds quotient coordinates
    # into the base space, projection maps the base space onto them
    section: Mat  # q rows of length n: quotient basis vectors in X
    projection: Mat  # q rows of length n: coordinate functionals of pi


@dataclass(frozen=True)
class PolyhedralSeminorm:
    label: str
    atoms: tuple = ()
    quotient_of: Optional[QuotientWrap] = None

    def __post_init__(self):
        if self.quotient_of is None:
            if not self.atoms:
                raise ValueError("seminorm needs at least one atom")
            n = self.atoms[0].ambient_dim
            if any(a.ambient_dim != n for a in self.atoms):
                raise ValueError("atom ambient dimension mismatch")
        elif self.atoms:
            raise ValueError("quotient seminorm carries no atoms of its own")

    @property
    def ambient_dim(self) -> int:
        if self.quotient_of is not None:
            return len(self.quotient_of.section)
        return self.atoms[0].ambient_dim

    @property
    def is_quotient(self) -> bool:
        return self.quotient_of is not None

    def generator_matrix(self) -> Mat:
        if self.is_quotient:
            raise ValueError("quotient seminorm has no flat generator matrix")
        return tuple(g for a in self.atoms for g in a.generators)

    def kernel_subspace(self) -> Subspace:
        """{x : value is 0}; for quotients this is pi(ker(base) + Z)."""
        if not self.is_quotient:
            return linalg.kernel(self.generator_matrix(), self.ambient_dim)
        w = self.quotient_of
        upstairs = linalg.subspace_sum(w.base.kernel_subspace(), w.z)
        projected = [linalg.mat_vec(w.projection, b) for b in upstairs.basis]
        return Subspace.span(self.ambient_dim, projected)

    def pullback_covector(self, f: Vec) -> Vec:
        """f composed with the quotient projection, as a covector upstairs."""
        if not self.is_quotient:
            raise ValueError("not a quotient seminorm")
        return mat_t_vec(self.quotient_of.projection, f)


def seminorm(label: str, atoms: Iterable[Atom]) -> PolyhedralSeminorm:
    return PolyhedralSeminorm(label, tuple(atoms))


def scaled_linf(label: str, n: int, scale: Rational = 1) -> PolyhedralSeminorm:
    gens = [linalg.vscale(scale, linalg.unit(n, i)) for i in range(n)]
    return seminorm(label, [Atom(MAX, tuple(gens))])


def scaled_l1(label: str, n: int, scale: Rational = 1) -> PolyhedralSeminorm:
    gens = [linalg.vscale(scale, linalg.unit(n, i)) for i in range(n)]
    return seminorm(label, [Atom(SUM, tuple(gens))])


def seminorm_sum(label: str, parts: Sequence[PolyhedralSeminorm]) -> PolyhedralSeminorm:
    if any(p.is_quotient for p in parts):
        raise ValueError("sum of quotient seminorms is not representable by atoms")
    return seminorm(label, tuple(a for p in parts for a in p.atoms))


def quotient_seminorm(
    label: str, base: PolyhedralSeminorm, z: Subspace, section: Mat, projection: Mat
) -> PolyhedralSeminorm:
    if base.is_quotient:
        raise ValueError("nested quotients are not supported")
    if z.ambient_dim != base.ambient_dim:
        raise ValueError("subspace lives in the wrong space")
    return PolyhedralSeminorm(label, (), QuotientWrap(base, z, section, projection))


# ---------------------------------------------------------------------------
# Evaluation and LP encodings


def encode_epigraph(b: LpBuilder, rho: PolyhedralSeminorm, x_exprs: Sequence[LinExpr]) -> LinExpr:
    """Add constraints so the returned expression can be driven down to
    rho(x); valid wherever the expression appears with a nonnegative
    weight in a minimized objective (or bounded above)."""
    if len(x_exprs) != rho.ambient_dim:
        raise ValueError("dimension mismatch")
    if rho.is_quotient:
        w = rho.quotient_of
        zvars = b.vars(w.z.dim)
        n = w.z.ambient_dim
        lifted = []
        for j in range(n):
            e = lsum(x_exprs[i] * w.section[i][j] for i in range(len(x_exprs)))
            e = e - lsum(lterm(zv) * w.z.basis[t][j] for t, zv in enumerate(zvars))
            lifted.append(e)
        return encode_epigraph(b, w.base, lifted)
    parts = []
    for atom in rho.atoms:
        if atom.combine == MAX:
            t = lterm(b.var(nonneg=True))
            for g in atom.generators:
                b.abs_le(lsum(x_exprs[j] * g[j] for j in range(len(g))), t)
            parts.append(t)
        else:
            for g in atom.generators:
                s = lterm(b.var(nonneg=True))
                b.abs_le(lsum(x_exprs[j] * g[j] for j in range(len(g))), s)
                parts.append(s)
    return lsum(parts)


def evaluate(rho: PolyhedralSeminorm, x: Vec) -> Q:
    """Exact seminorm value; quotient values solved by LP."""
    if len(x) != rho.ambient_dim:
        raise ValueError("dimension mismatch")
    if not rho.is_quotient:
        return sum((a.value(x) for a in rho.atoms), QZERO)
    b = LpBuilder()
    val = encode_epigraph(b, rho, [LinExpr(const=c) for c in x])
    res = b.solve_min(val)
    assert isinstance(res, Optimal), "quotient evaluation LP must be solvable"
    return res.value


def restrict(rho: PolyhedralSeminorm, y: Subspace) -> PolyhedralSeminorm:
    """Trace of the seminorm on a subspace, in that subspace's coordinates."""
    if rho.is_quotient:
        raise ValueError("restrict a quotient by composing with the section instead")
    if y.ambient_dim != rho.ambient_dim:
        raise ValueError("dimension mismatch")
    new_atoms = tuple(
        Atom(a.combine, tuple(linalg.restrict_functional(g, y) for g in a.generators))
        for a in rho.atoms
    )
    return PolyhedralSeminorm(f"{rho.label}|sub", new_atoms)


def linear_pieces(rho: PolyhedralSeminorm) -> list[Vec]:
    """Functionals whose pointwise max is rho (non-quotient only)."""
    per_atom = [a.pieces() for a in rho.atoms]
    total = 1
    for p in per_atom:
        total *= len(p)
        if total > PIECE_CAP:
            raise ValueError("too many linear pieces")
    out = []
    for combo in itertools.product(*per_atom):
        acc = linalg.zeros(rho.ambient_dim)
        for p in combo:
            acc = linalg.vadd(acc, p)
        out.append(acc)
    return out


def _sup_linear_on_ball(rho: PolyhedralSeminorm, ell: Vec) -> Q:
    """sup ell . x over {rho <= 1}, assuming ker(rho) <= ker(ell)."""
    b = LpBuilder()
    xs = [lterm(b.var()) for _ in range(rho.ambient_dim)]
    b.le(encode_epigraph(b, rho, xs), 1)
    res = b.solve_max(lsum(xs[j] * ell[j] for j in range(len(ell))))
    assert isinstance(res, Optimal), "bounded by the kernel pre-check"
    return res.value


def _unit_ball_vertices(rho: PolyhedralSeminorm) -> list[Vec]:
    """Vertices of {rho <= 1} modulo ker(rho), embedded in the ambient
    space. Used for quotient domination checks at desk scale."""
    if rho.is_quotient:
        w = rho.quotient_of
        base_verts = _unit_ball_vertices(w.base)
        return [linalg.mat_vec(w.projection, v) for v in base_verts]
    k = rho.kernel_subspace()
    comp = Subspace(rho.ambient_dim, linalg.complement_basis(k))
    if comp.dim > VERTEX_ENUM_DIM_CAP:
        raise ValueError("vertex enumeration capped at low dimension")
    restricted = restrict(rho, comp)
    rows = linear_pieces(restricted)
    verts = _hpoly_vertices(rows, [Q(1)] * len(rows), comp.dim)
    return [comp.embed(v) for v in verts]


def _hpoly_vertices(rows: list[Vec], rhs: list[Q], dim: int) -> list[Vec]:
    if dim == 0:
        return [()]
    verts: set = set()
    for combo in itertools.combinations(range(len(rows)), dim):
        sub = tuple(rows[i] for i in combo)
        if linalg.rank(sub) < dim:
            continue
        pt = linalg.solve(sub, tuple(rhs[i] for i in combo))
        if pt is None:
            continue
        if all(dot(rows[i], pt) <= rhs[i] for i in range(len(rows))):
            verts.add(pt)
    return sorted(verts)


def dominates(rho: PolyhedralSeminorm, mu: PolyhedralSeminorm) -> bool:
    """Pointwise domination: mu(x) <= rho(x) for every x, decided exactly.

    Kernel inclusion is checked first; afterwards mu is compared piece by
    piece against the rho-unit ball (one LP per linear piece of mu), or,
    when quotients are involved, by evaluating mu at the vertices of the
    rho-ball.
    """
    if rho.ambient_dim != mu.ambient_dim:
        raise ValueError("dimension mismatch")
    if not _kernel_leq(rho, mu):
        return False
    if not rho.is_quotient and not mu.is_quotient:
        return all(_sup_linear_on_ball(rho, ell) <= 1 for ell in _half_pieces(mu))
    for v in _unit_ball_vertices(rho):
        if evaluate(mu, v) > 1:
            return False
    return True


def _kernel_leq(rho: PolyhedralSeminorm, mu: PolyhedralSeminorm) -> bool:
    """ker(rho) contained in ker(mu)."""
    return all(evaluate(mu, v) == 0 for v in rho.kernel_subspace().basis)


def _half_pieces(mu: PolyhedralSeminorm) -> list[Vec]:
    # By symmetry only one of each +/- pair of pieces needs testing.
    pieces = linear_pieces(mu)
    seen = set()
    out = []
    for p in pieces:
        neg = tuple(-c for c in p)
        if p in seen or neg in seen:
            continue
        seen.add(p)
        out.append(p)
    return out


def dominates_up_to_scale(rho: PolyhedralSeminorm, mu: PolyhedralSeminorm) -> bool:
    """True iff mu <= c * rho for some positive rational c.

    In finite dimension this is exactly kernel inclusion, which is the
    order relevant to finite truncations of unbounded directed families:
    it is blind to the constants that a cofinal tail would absorb.
    """
    if rho.ambient_dim != mu.ambient_dim:
        raise ValueError("dimension mismatch")
    return _kernel_leq(rho, mu)


# ---------------------------------------------------------------------------
# Families


@dataclass(frozen=True)
class SeminormFamily:
    members: tuple
    directed: bool = False
    closure_truncated: bool = False

    def __post_init__(self):
        labels = [m.label for m in self.members]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate seminorm labels in family")
        dims = {m.ambient_dim for m in self.members}
        if len(dims) > 1:
            raise ValueError("family members live in different spaces")

    @property
    def ambient_dim(self) -> int:
        return self.members[0].ambient_dim

    def member(self, label: str) -> PolyhedralSeminorm:
        for m in self.members:
            if m.label == label:
                return m
        raise KeyError(f"no seminorm labelled {label!r}")

    def labels(self) -> list[str]:
        return [m.label for m in self.members]


def family(members: Iterable[PolyhedralSeminorm], directed: bool = False) -> SeminormFamily:
    return SeminormFamily(tuple(members), directed=directed)


def verify_directed(fam: SeminormFamily) -> bool:
    """Check that every pair of members is pointwise dominated by some member."""
    ms = fam.members
    for i, a in enumerate(ms):
        for bm in ms[i:]:
            if not any(dominates(c, a) and dominates(c, bm) for c in ms):
                return False
    return True


def directed_closure(fam: SeminormFamily, cap: int) -> SeminormFamily:
    """Extend by pairwise sums until directed or the cap is reached.

    A truncated closure is flagged, never silent.
    """
    if cap < len(fam.members):
        raise ValueError("cap below current member count")
    members = list(fam.members)

    def dominated(a, bm):
        return any(dominates(c, a) and dominates(c, bm) for c in members)

    changed = True
    while changed:
        changed = False
        for i in range(len(members)):
            for j in range(i, len(members)):
                if dominated(members[i], members[j]):
                    continue
                if len(members) >= cap:
                    return SeminormFamily(tuple(members), directed=False, closure_truncated=True)
                s = seminorm_sum(f"{members[i].label}+{members[j].label}", [members[i], members[j]])
                members.append(s)
                changed = True
    return SeminormFamily(tuple(members), directed=True)


def subfamily_above(
    fam: SeminormFamily, mu: PolyhedralSeminorm, order: str = "pointwise"
) -> list[PolyhedralSeminorm]:
    """Members dominating mu; ``order`` picks pointwise or up-to-scale."""
    if all(m.label != mu.label for m in fam.members):
        raise KeyError(f"{mu.label!r} is not a member of the family")
    test = dominates if order == "pointwise" else dominates_up_to_scale
    if order not in ("pointwise", "topological"):
        raise ValueError(f"unknown order {order!r}")
    return [m for m in fam.members if test(m, mu)]
