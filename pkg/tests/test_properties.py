"""Invariants checked on random presented algebras."""

import random

import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from biseriality.algebra import AlgebraPresentation, build_algebra
from biseriality.bisected import BudgetExhausted, search_bisected_witness, verify_bisected_witness
from biseriality.criteria import Variant, decide_biserial, subalgebra_criterion
from biseriality.fuller import SearchBudgetExceeded, is_biserial_fuller, is_nakayama, verify_fuller_certificate
from biseriality.generate import NormalFormConfig, RandomConfig, generate_normal_form_instance, random_presentation
from biseriality.quiver import Arrow, Quiver

SMALL = RandomConfig(max_vertices=3, max_arrows=4, max_nilpotency=3, max_rad_dim=10)
seeds = st.integers(0, 2**32 - 1)


def random_alg(seed, cfg=SMALL):
    return random_presentation(random.Random(seed), cfg)[1]


@given(seeds, st.data())
def test_associative(seed, data):
    alg = random_alg(seed)
    vec = st.lists(st.integers(0, alg.p - 1), min_size=alg.dim, max_size=alg.dim).map(
        lambda xs: np.array(xs, dtype=np.int64)
    )
    u, v, w = data.draw(vec), data.draw(vec), data.draw(vec)
    left = alg.multiply(alg.multiply(u, v), w)
    right = alg.multiply(u, alg.multiply(v, w))
    assert (left == right).all()
    assert (alg.multiply(alg.one(), u) == u % alg.p).all()


@given(seeds)
def test_radical_filtration(seed):
    alg = random_alg(seed)
    dims = [s.dim for s in alg.radical_powers]
    assert dims == sorted(dims, reverse=True) and dims[-1] == 0
    assert dims[0] == alg.dim and alg.dim - dims[1] == len(alg.quiver.vertices)
    assert dims[1] - dims[2] == len(alg.quiver.arrows)


@given(seeds)
def test_opposite_involution(seed):
    alg = random_alg(seed)
    op = alg.opposite
    assert op.opposite is alg
    assert op.dim == alg.dim and op.nilpotency == alg.nilpotency
    assert op.presentation.opposite() == alg.presentation


@given(seeds, st.data())
def test_opposite_antihomomorphism(seed, data):
    alg = random_alg(seed)
    i, j = data.draw(st.integers(0, alg.dim - 1)), data.draw(st.integers(0, alg.dim - 1))
    u, v = alg.zero(), alg.zero()
    u[i], v[j] = 1, 1
    lhs = alg.to_opposite(alg.multiply(u, v))
    rhs = alg.opposite.multiply(alg.to_opposite(v), alg.to_opposite(u))
    assert (lhs == rhs).all()


@settings(max_examples=25)
@given(seeds)
def test_fuller_duality(seed):
    alg = random_alg(seed)
    try:
        here, cert = is_biserial_fuller(alg)
        there, _ = is_biserial_fuller(alg.opposite)
    except SearchBudgetExceeded:
        assume(False)
    assert here == there
    if here:
        assert verify_fuller_certificate(alg, cert)


@settings(max_examples=25)
@given(seeds)
def test_subalgebra_agrees_with_fuller(seed):
    alg = random_alg(seed)
    try:
        expected, _ = is_biserial_fuller(alg)
        for variant in Variant:
            assert subalgebra_criterion(alg, variant).biserial == expected
    except SearchBudgetExceeded:
        assume(False)


@settings(max_examples=20)
@given(seeds)
def test_witness_flip(seed):
    alg = random_alg(seed)
    try:
        w = search_bisected_witness(alg)
    except BudgetExhausted:
        assume(False)
    assume(w is not None)
    assert verify_bisected_witness(alg, w)[0]
    assert verify_bisected_witness(alg, w.flipped())[0]
    assert verify_bisected_witness(alg, w.flipped().flipped())[0]


@settings(max_examples=15)
@given(seeds)
def test_normal_form_instances_biserial(seed):
    _, _, _, alg = generate_normal_form_instance(random.Random(seed), NormalFormConfig(max_vertices=3, max_arrows=5))
    assert is_biserial_fuller(alg)[0]


@settings(max_examples=25)
@given(st.integers(1, 5), st.booleans(), st.integers(2, 4))
def test_degree_one_quivers_are_nakayama(n, cyclic, m):
    vs = [str(k + 1) for k in range(n)]
    arrows = [Arrow("a%d" % k, vs[k], vs[k + 1]) for k in range(n - 1)]
    if cyclic:
        arrows.append(Arrow("c", vs[-1], vs[0]))
    q = Quiver(vs, arrows)
    rels = tuple(((1, pth),) for pth in q.paths(m, min_len=m))
    alg = build_algebra(AlgebraPresentation(q, 3, rels))
    assert max(q.max_out_degree(), q.max_in_degree()) <= 1
    assert is_nakayama(alg)
    verdict = decide_biserial(alg)
    assert verdict.biserial and verdict.witness_verdict
