import numpy as np
import pytest

from biseriality.criteria import (
    Direction,
    ObstructionWitness,
    Variant,
    WitnessUnavailable,
    certify_obstruction,
    condition_a,
    condition_b,
    condition_c,
    cyclic_candidate,
    decide_biserial,
    kind_one_witness,
    loewy_two_check,
    neighbor_sets,
    subalgebra_criterion,
)
from biseriality.quiver import Quiver

from conftest import make


def test_neighbor_sets(d4, a3):
    ns = neighbor_sets(d4, "0")
    assert ns.neighbors == ("1", "2", "3") and ns.j_sets == (("1", "2", "3"),)
    assert neighbor_sets(a3, "2").neighbors == ("1", "3")
    star = make(["0", "1", "2", "3", "4"], [("a", "1", "0"), ("b", "2", "0"), ("c", "0", "3"), ("d", "0", "4")])
    assert len(neighbor_sets(star, "0").j_sets) == 4


def test_subalgebra_criterion(fixture_algebras, expected):
    for name, alg in fixture_algebras.items():
        for variant in Variant:
            rep = subalgebra_criterion(alg, variant)
            assert rep.biserial == expected[name]["biserial"], (name, variant)
    rep = subalgebra_criterion(fixture_algebras["twisted-square"], Variant.FULL)
    whole = [c for c in rep.checks if c.vertices == ("1", "2", "3")]
    assert whole and not whole[0].biserial and whole[0].dim == 9


def test_loewy_two(d4, a3, twisted):
    for direction in Direction:
        assert loewy_two_check(d4, 3, direction)
        assert not loewy_two_check(d4, 3, direction, colocal=True)
        assert not loewy_two_check(a3, 2, direction)
        assert loewy_two_check(twisted, 2, direction)
        assert loewy_two_check(twisted, 2, direction, colocal=True)
    with pytest.raises(ValueError):
        loewy_two_check(a3, 0, Direction.BY_QUIVER)


def test_kind_one(d4, a3):
    w = kind_one_witness(d4)
    assert w.kind == 1 and certify_obstruction(d4, w)[0]
    assert kind_one_witness(a3) is None


def test_kind_two(fixture_algebras):
    alg = fixture_algebras["d4-inward"]
    v = decide_biserial(alg)
    assert not v.biserial and v.obstruction.kind == 2
    assert v.obstruction.module.algebra is alg
    assert certify_obstruction(alg, v.obstruction)[0]


def test_twisted_kind_three_at_vertex_two_fails_a(twisted):
    # a and b act identically on x, so (a) fails
    rep, b0 = cyclic_candidate(twisted, "1", twisted.arrow("x"))
    assert not condition_a(rep, twisted.arrow("x"), twisted.arrow("a"), twisted.arrow("b"), b0)


def test_twisted_kind_four_by_hand(twisted):
    op = twisted.opposite
    a1 = op.arrow("a")
    rep, b0 = cyclic_candidate(op, "3", a1)
    a2, a3_ = op.arrow("x"), op.arrow("y")
    assert condition_a(rep, a1, a2, a3_, b0) and condition_b(rep, a1, b0)
    log = []
    assert condition_c(rep, "2", "3", a1, a2, a3_, b0, log)
    assert len([ln for ln in log if "infeasible" in ln]) == 12  # ordered pairs of lines
    w = ObstructionWitness(4, rep, "2", "3", a1, a2, a3_, b0, log)
    assert certify_obstruction(twisted, w)[0]


def test_path_algebra_kind_three():
    alg = make(["1", "2", "3", "4"], [("x", "1", "2"), ("a", "2", "3"), ("b", "2", "4")])
    rep, b0 = cyclic_candidate(alg, "1", alg.arrow("x"))
    w = ObstructionWitness(3, rep, "2", "1", alg.arrow("x"), alg.arrow("a"), alg.arrow("b"), b0)
    ok, problems = certify_obstruction(alg, w)
    assert ok, problems
    # the path algebra is biserial only if this module is not an obstruction
    assert not decide_biserial(alg).biserial


def test_condition_c_can_fail():
    # two arrows into 2 absorb the two branches: a*x = 0 and b*y = 0
    alg = make(["1", "2", "3", "4"], [("x", "1", "2"), ("y", "1", "2"), ("a", "2", "3"), ("b", "2", "4")],
               [[(1, "a*x")], [(1, "b*y")]])
    a1 = (alg.arrow("x") + alg.arrow("y")) % 3
    rep, b0 = cyclic_candidate(alg, "1", a1)
    assert condition_a(rep, a1, alg.arrow("a"), alg.arrow("b"), b0)
    assert not condition_c(rep, "2", "1", a1, alg.arrow("a"), alg.arrow("b"), b0)
    assert decide_biserial(alg).biserial


def test_certifier_rejects_malformed(twisted, d4):
    w = kind_one_witness(d4)
    assert not certify_obstruction(twisted, w)[0]
    op = twisted.opposite
    rep, b0 = cyclic_candidate(op, "3", op.arrow("a"))
    bad = ObstructionWitness(4, rep, "2", "3", op.idempotent("3"), op.arrow("x"), op.arrow("y"), b0)
    ok, problems = certify_obstruction(twisted, bad)
    assert not ok and "a1 is not in e_i rad A e_j" in problems


def test_decide(fixture_algebras, expected):
    for name, alg in fixture_algebras.items():
        v = decide_biserial(alg)
        assert v.biserial == expected[name]["biserial"] == v.witness_verdict == v.decided, name
        if v.obstruction is not None:
            assert v.obstruction.kind in expected[name]["obstruction_kinds"]
            replay = ObstructionWitness.from_json(alg, v.obstruction.to_json())
            assert certify_obstruction(alg, replay)[0]


def test_witness_unavailable(twisted):
    with pytest.raises(WitnessUnavailable):
        decide_biserial(twisted, obstruction_budget=0, require_witness=True)
    v = decide_biserial(twisted, obstruction_budget=0)
    assert v.biserial is False and v.witness_verdict is None and v.decided is False
