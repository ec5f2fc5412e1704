"""Exact linear algebra over rationals: vectors, matrices, subspaces.

Vectors are tuples of gmpy2.mpq; matrices are tuples of row vectors.
Everything is immutable and all elimination is exact, so ranks and
kernels are stable under row permutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .ratmath import Q, QZERO, Rational, as_q

Vec = tuple
Mat = tuple


def vec(entries: Iterable[Rational]) -> Vec:
    return tuple(as_q(e) for e in entries)


def mat(rows: Iterable[Iterable[Rational]]) -> Mat:
    return tuple(vec(r) for r in rows)


def zeros(n: int) -> Vec:
    return tuple(QZERO for _ in range(n))


def unit(n: int, i: int) -> Vec:
    return tuple(Q(1) if j == i else QZERO for j in range(n))


def dot(a: Vec, b: Vec) -> Q:
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return sum((x * y for x, y in zip(a, b)), QZERO)


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vscale(t: Rational, a: Vec) -> Vec:
    tq = as_q(t)
    return tuple(tq * x for x in a)


def is_zero_vec(a: Vec) -> bool:
    return all(x == 0 for x in a)


def mat_vec(m: Mat, x: Vec) -> Vec:
    return tuple(dot(row, x) for row in m)


def mat_t_vec(m: Mat, y: Vec) -> Vec:
    """Transpose product: y^T m, i.e. a covector pulled through m's rows."""
    if len(m) != len(y):
        raise ValueError("dimension mismatch")
    n = len(m[0]) if m else 0
    out = [QZERO] * n
    for yi, row in zip(y, m):
        if yi != 0:
            for j, r in enumerate(row):
                out[j] += yi * r
    return tuple(out)


def rref(rows: Sequence[Vec]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = 1 / m[r][c]
        m[r] = [inv * x for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r] + [[QZERO] * ncols for _ in range(len(m) - r)], pivots


def rank(rows: Sequence[Vec]) -> int:
    return len(rref(rows)[1])


def kernel_basis(rows: Sequence[Vec], ncols: int) -> list[Vec]:
    """Basis of {x : rows @ x = 0}."""
    red, pivots = rref(rows)
    red = red[: len(pivots)]
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [QZERO] * ncols
        x[fc] = Q(1)
        for prow, pc in zip(red, pivots):
            x[pc] = -prow[fc]
        basis.append(tuple(x))
    return basis


def solve(rows: Sequence[Vec], rhs: Vec) -> Vec | None:
    """One exact solution of rows @ x = rhs, or None if inconsistent."""
    if not rows:
        return zeros(0) if all(b == 0 for b in rhs) else None
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    for row in red:
        if all(x == 0 for x in row[:-1]) and row[-1] != 0:
            return None
    x = [QZERO] * ncols
    for prow, pc in zip(red, pivots):
        if pc == ncols:
            return None
        x[pc] = prow[-1]
    return tuple(x)


@dataclass(frozen=True)
class Subspace:
    """A linear subspace given by an exact basis (rows span the space)."""

    ambient_dim: int
    basis: Mat

    def __post_init__(self):
        for row in self.basis:
            if len(row) != self.ambient_dim:
                raise ValueError("basis row has wrong length")
        if self.basis and rank(self.basis) != len(self.basis):
            raise ValueError("basis rows are linearly dependent")

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Iterable[Rational]]) -> "Subspace":
        rows = mat(vectors)
        red, pivots = rref(rows)
        return cls(ambient_dim, tuple(tuple(r) for r in red[: len(pivots)]))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, tuple(unit(ambient_dim, i) for i in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def embed(self, coords: Vec) -> Vec:
        """Map coordinates in this basis to an ambient vector."""
        if len(coords) != self.dim:
            raise ValueError("coordinate vector has wrong length")
        out = zeros(self.ambient_dim)
        for c, row in zip(coords, self.basis):
            out = vadd(out, vscale(c, row))
        return out

    def coordinates(self, x: Vec) -> Vec | None:
        """Coordinates of x in this basis, or None if x is outside the span."""
        if not self.basis:
            return () if is_zero_vec(x) else None
        cols = tuple(tuple(row[j] for row in self.basis) for j in range(self.ambient_dim))
        return solve(cols, x)

    def contains(self, x: Vec) -> bool:
        return self.coordinates(x) is not None

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.contains_subspace(other)
            and other.contains_subspace(self)
        )

    def __hash__(self):
        red, pivots = rref(self.basis)
        return hash((self.ambient_dim, tuple(tuple(r) for r in red[: len(pivots)])))


def kernel(m: Mat, ncols: int | None = None) -> Subspace:
    """Kernel of a matrix as a Subspace of its column space."""
    if ncols is None:
        if not m:
            raise ValueError("empty matrix needs an explicit column count")
        ncols = len(m[0])
    return Subspace(ncols, tuple(kernel_basis(m, ncols)))


def annihilator(y: Subspace) -> Subspace:
    """Functionals (in dual coordinates) vanishing on y."""
    return kernel(y.basis, y.ambient_dim)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    return Subspace.span(a.ambient_dim, a.basis + b.basis)


def restrict_functional(f: Vec, y: Subspace) -> Vec:
    """Coefficients of f in the dual of y's basis coordinates."""
    if len(f) != y.ambient_dim:
        raise ValueError("functional has wrong length")
    return tuple(dot(f, row) for row in y.basis)


def complement_basis(z: Subspace) -> Mat:
    """Greedy standard-basis completion of z to the whole space.

    Deterministic: scans e_1, e_2, ... and keeps the vectors that increase
    rank, so repeated runs pick the same complement.
    """
    rows = list(z.basis)
    chosen = []
    r = len(rows)
    for i in range(z.ambient_dim):
        e = unit(z.ambient_dim, i)
        if rank(rows + [e]) > r:
            rows.append(e)
            chosen.append(e)
            r += 1
    return tuple(chosen)
