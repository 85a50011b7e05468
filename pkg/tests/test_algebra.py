import itertools

import numpy as np
import pytest

from biseriality.algebra import (
    AdmissibilityUndecided,
    AlgebraPresentation,
    MalformedRelation,
    build_algebra,
    idempotent_subalgebra,
    irreducible_paths,
)
from biseriality.quiver import Quiver

from conftest import make


def test_dimensions(a3, loops, twisted, five):
    assert (a3.dim, a3.nilpotency) == (6, 3)
    assert (loops.dim, loops.nilpotency) == (3, 2)
    assert (twisted.dim, twisted.nilpotency) == (9, 3)
    assert (five.dim, five.nilpotency) == (17, 4)


def test_idempotents(a3):
    e = [a3.idempotent(v) for v in a3.quiver.vertices]
    for i, j in itertools.product(range(3), repeat=2):
        prod = a3.multiply(e[i], e[j])
        assert (prod == (e[i] if i == j else 0)).all()
    assert (sum(e) % 3 == a3.one()).all()


def test_twisted_products(twisted):
    q = twisted.quiver
    assert (twisted.normal_form(q.path("a", "x")) == twisted.normal_form(q.path("b", "x"))).all()
    assert (twisted.normal_form(q.path("a", "y")) == twisted.normal_form(q.path("b", "y"))).all()
    assert twisted.normal_form(q.path("a", "x")).any()
    assert [s.dim for s in twisted.radical_powers] == [9, 6, 2, 0]


def test_radical_cube_vanishes(a3):
    assert a3.radical_power(3).dim == 0
    assert a3.radical_power(2).dim == 1


def test_opposite(a3, loops, twisted):
    for alg in (a3, loops, twisted):
        op = alg.opposite
        assert op.dim == alg.dim
        assert op.opposite is alg
        assert op.presentation.opposite() == alg.presentation
        assert [s.dim for s in op.radical_powers] == [s.dim for s in alg.radical_powers]


def test_to_opposite_reverses_products(twisted):
    alg, op = twisted, twisted.opposite
    g = np.random.default_rng(1)
    for _ in range(20):
        u, v = g.integers(0, 3, alg.dim), g.integers(0, 3, alg.dim)
        lhs = alg.to_opposite(alg.multiply(u, v))
        rhs = op.multiply(alg.to_opposite(v), alg.to_opposite(u))
        assert (lhs == rhs).all()


def test_associativity(five):
    g = np.random.default_rng(2)
    for _ in range(20):
        u, v, w = (g.integers(0, 3, five.dim) for _ in range(3))
        assert (five.multiply(five.multiply(u, v), w) == five.multiply(u, five.multiply(v, w))).all()


def test_admissibility_undecided():
    q = Quiver(["1"], [("x", "1", "1")])
    with pytest.raises(AdmissibilityUndecided):
        build_algebra(AlgebraPresentation(q, 3, ()), max_nilpotency=5)


def test_malformed_relations():
    q = Quiver(["1", "2"], [("a", "1", "2"), ("b", "2", "1")])
    with pytest.raises(MalformedRelation):
        AlgebraPresentation(q, 3, (((1, q.path("a")),),))
    with pytest.raises(MalformedRelation):
        AlgebraPresentation(q, 3, (((1, q.path("b", "a")), (1, q.path("a", "b"))),))
    with pytest.raises(MalformedRelation):
        AlgebraPresentation(q, 3, (((3, q.path("b", "a")),),))


def test_inhomogeneous_length_nilpotency():
    # x*x = x*x*x = ... = x^4 = 0, so x*x dies only through the ideal
    alg = make(["1"], [("x", "1", "1")], [[(1, "x*x"), (-1, "x*x*x")], [(1, "x*x*x*x")]])
    assert alg.dim == 2 and alg.nilpotency == 2
    assert alg.is_admissible_certificate()


def test_subalgebra_whole_and_single(a3, five):
    sub = idempotent_subalgebra(a3, a3.quiver.vertices)
    assert sub.algebra.dim == a3.dim
    assert set(sub.origins) == {"a", "b"}
    assert idempotent_subalgebra(a3, ["1"]).algebra.dim == 1


def test_subalgebra_five_vertex(five):
    sub = idempotent_subalgebra(five, ["1", "3", "4"])
    assert {str(p) for p in sub.origins.values()} == {"x", "a"}
    assert sub.algebra.dim == 6
    assert "u2*u1*u" in {str(p) for p in irreducible_paths(five, ["1", "3", "4"])}


def test_subalgebra_dimension_counts(five):
    for r in range(1, 6):
        for s in itertools.combinations(five.quiver.vertices, r):
            sub = idempotent_subalgebra(five, s)
            inside = set(s)
            count = sum(1 for p in five.basis if p.source in inside and p.target in inside)
            assert sub.algebra.dim == count
            assert sub.algebra.radical_power(1).dim == count - len(s)
