"""Exact linear algebra invariants."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from hblab import linalg
from hblab.linalg import (
    Subspace,
    annihilator,
    complement_basis,
    dot,
    kernel,
    kernel_basis,
    mat,
    rank,
    restrict_functional,
    rref,
    solve,
    unit,
    vec,
)
from hblab.ratmath import Q

rationals = st.fractions(
    min_value=-5, max_value=5, max_denominator=4
).map(Q)


def rand_mat(rng, rows, cols):
    return mat(
        [[Q(rng.randint(-3, 3), rng.choice([1, 2])) for _ in range(cols)] for _ in range(rows)]
    )


def test_rref_rank_examples():
    m = mat([[1, 2], [2, 4]])
    assert rank(m) == 1
    m2 = mat([[1, 0, 1], [0, 1, 1], [1, 1, 2]])
    assert rank(m2) == 2


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_kernel_annihilates(seed):
    rng = random.Random(seed)
    rows, cols = rng.randint(1, 4), rng.randint(1, 4)
    m = rand_mat(rng, rows, cols)
    kb = kernel_basis(m, cols)
    for k in kb:
        for row in m:
            assert dot(row, k) == 0
    assert rank(m) + len(kb) == cols  # rank-nullity


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_solve_consistency(seed):
    rng = random.Random(seed)
    rows, cols = rng.randint(1, 4), rng.randint(1, 4)
    m = rand_mat(rng, rows, cols)
    x0 = vec([rng.randint(-3, 3) for _ in range(cols)])
    rhs = linalg.mat_vec(m, x0)
    x = solve(m, rhs)
    assert x is not None
    assert linalg.mat_vec(m, x) == rhs


def test_solve_inconsistent():
    m = mat([[1, 1], [1, 1]])
    assert solve(m, vec([1, 2])) is None


def test_subspace_membership_and_coordinates():
    y = Subspace.span(3, [vec([1, 1, 0]), vec([0, 0, 1])])
    assert y.dim == 2
    assert y.contains(vec([2, 2, 5]))
    assert not y.contains(vec([1, 0, 0]))
    c = y.coordinates(vec([2, 2, 5]))
    assert y.embed(c) == vec([2, 2, 5])


def test_subspace_rejects_dependent_basis():
    with pytest.raises(ValueError):
        Subspace(2, mat([[1, 1], [2, 2]]))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_annihilator_duality(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    k = rng.randint(0, n)
    y = Subspace.span(n, [vec([rng.randint(-2, 2) for _ in range(n)]) for _ in range(k)])
    ann = annihilator(y)
    assert ann.dim == n - y.dim
    for f in ann.basis:
        for b in y.basis:
            assert dot(f, b) == 0
    # double annihilator returns the subspace
    assert annihilator(ann) == y


def test_complement_basis_deterministic():
    z = Subspace.span(3, [vec([1, 0, 0])])
    comp = complement_basis(z)
    assert comp == (unit(3, 1), unit(3, 2))
    assert rank(z.basis + comp) == 3


def test_restrict_functional():
    y = Subspace.span(3, [vec([1, 1, 0]), vec([0, 0, 1])])
    f = vec([2, 0, -1])
    fy = restrict_functional(f, y)
    # value on basis vectors must match
    assert fy == (dot(f, y.basis[0]), dot(f, y.basis[1]))
