import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from biseriality.linalg import (
    Subspace,
    count_projective_points,
    inverse,
    is_prime,
    matmul_mod,
    nullspace,
    projective_points,
    quotient_basis_complement,
    rank,
    rref,
    solve,
    subspace_intersect,
    subspace_sum,
)


def mats(p=3, max_side=5):
    shape = st.tuples(st.integers(1, max_side), st.integers(1, max_side))
    return shape.flatmap(lambda s: arrays(np.int64, s, elements=st.integers(0, p - 1)))


def test_rref_zero():
    r, k, piv = rref(np.zeros((2, 2), dtype=np.int64), 3)
    assert k == 0 and piv == [] and not r.any()


def test_rref_identity():
    r, k, piv = rref(np.eye(3, dtype=np.int64), 3)
    assert k == 3 and piv == [0, 1, 2] and (r == np.eye(3)).all()


def test_rref_dependent_rows():
    r, k, piv = rref([[1, 2], [2, 4]], 3)
    assert k == 1 and piv == [0]
    assert r[0].tolist() == [1, 2] and not r[1].any()


def test_solve_examples():
    assert solve(np.eye(2, dtype=np.int64), [1, 2], 3).tolist() == [1, 2]
    assert solve([[1], [2]], [1, 2], 3).tolist() == [1]
    assert solve([[0]], [1], 3) is None
    with pytest.raises(ValueError):
        solve([[1, 0]], [1, 2], 3)


def test_subspace_examples():
    e1, e2 = Subspace.span([1, 0], 2, 3), Subspace.span([0, 1], 2, 3)
    assert subspace_sum(e1, e2).dim == 2
    assert subspace_intersect(e1, e2).dim == 0
    u = Subspace.span([[1, 1], [0, 1]], 2, 3)
    assert subspace_intersect(u, e1) == e1
    assert e1 + e1 == e1 and (e1 & e1) == e1


def test_complement_requires_containment():
    with pytest.raises(ValueError):
        quotient_basis_complement(Subspace.span([1, 0], 2, 3), Subspace.span([0, 1], 2, 3))
    comp = quotient_basis_complement(Subspace.full(3, 3), Subspace.span([1, 1, 0], 3, 3))
    assert comp.shape == (2, 3)
    assert Subspace.span(np.vstack([comp, [1, 1, 0]]), 3, 3).dim == 3


def test_field_helpers():
    assert [n for n in range(12) if is_prime(n)] == [2, 3, 5, 7, 11]
    assert all(x * inverse(x, 7) % 7 == 1 for x in range(1, 7))
    assert len(list(projective_points(2, 3))) == count_projective_points(2, 3) == 4


def test_all_lines_of_plane():
    # 4 lines in GF(3)^2, pairwise meeting in 0
    lines = [Subspace.span(v, 2, 3) for v in projective_points(2, 3)]
    assert len({ln.key() for ln in lines}) == 4
    for a in lines:
        for b in lines:
            assert (a & b).dim == (1 if a == b else 0)


def test_matmul_large_entries():
    a = np.full((3, 40), 6, dtype=np.int64)
    assert (matmul_mod(a, a.T, 7) == (36 * 40) % 7).all()


@given(mats())
def test_rref_idempotent(m):
    r, k, _ = rref(m, 3)
    r2, k2, _ = rref(r, 3)
    assert k == k2 and (r == r2).all()


@given(mats(), st.integers(0, 10**6))
def test_rref_canonical_under_row_ops(m, seed):
    g = np.random.default_rng(seed)
    while True:
        t = g.integers(0, 3, size=(m.shape[0], m.shape[0]))
        if rank(t, 3) == m.shape[0]:
            break
    assert (rref(m, 3)[0] == rref(matmul_mod(t, m, 3), 3)[0]).all()


@given(mats(p=5), st.data())
def test_solve_correct(a, data):
    x = data.draw(arrays(np.int64, a.shape[1], elements=st.integers(0, 4)))
    b = matmul_mod(a, x, 5)
    sol = solve(a, b, 5)
    assert sol is not None and (matmul_mod(a, sol, 5) == b).all()


@given(mats())
def test_nullspace(m):
    ns = nullspace(m, 3)
    assert ns.shape[0] == m.shape[1] - rank(m, 3)
    if ns.shape[0]:
        assert not matmul_mod(m, ns.T, 3).any()


@given(mats(max_side=6), mats(max_side=6))
def test_grassmann(a, b):
    n = max(a.shape[1], b.shape[1])
    a = np.pad(a, ((0, 0), (0, n - a.shape[1])))
    b = np.pad(b, ((0, 0), (0, n - b.shape[1])))
    u, v = Subspace.span(a, n, 3), Subspace.span(b, n, 3)
    assert (u + v).dim + (u & v).dim == u.dim + v.dim
    assert (u + v).contains_space(u) and u.contains_space(u & v)
