import itertools

import numpy as np
import pytest

from biseriality.fuller import (
    FullerCertificate,
    SearchBudgetExceeded,
    is_biserial_fuller,
    is_nakayama,
    is_special_biserial,
    uniserial_pair,
    verify_fuller_certificate,
)
from biseriality.modules import projective_module

from conftest import make


def test_fixture_verdicts(fixture_algebras, expected):
    for name, alg in fixture_algebras.items():
        ok, cert = is_biserial_fuller(alg)
        assert ok == expected[name]["biserial"], name
        assert is_nakayama(alg) == expected[name]["nakayama"], name
        assert is_special_biserial(alg)[0] == expected[name]["special_biserial"], name
        if ok:
            assert verify_fuller_certificate(alg, cert)
            assert verify_fuller_certificate(alg, FullerCertificate.from_json(cert.to_json()))


def test_loops_certificate(loops):
    u, v = uniserial_pair(projective_module(loops, "1"))
    assert u.any() and v.any()


def test_special_bisection_for_loops(loops):
    ok, b = is_special_biserial(loops)
    assert ok
    assert b.s["x"] != b.s["y"] and b.t["x"] != b.t["y"]


def test_tampered_certificate_rejected(loops):
    ok, cert = is_biserial_fuller(loops)
    cert.entries[0].v = cert.entries[0].u.copy()
    assert not verify_fuller_certificate(loops, cert)
    ok, cert = is_biserial_fuller(loops)
    cert.entries.pop()
    assert not verify_fuller_certificate(loops, cert)


def test_budget_guard():
    words = ["*".join(w) for w in itertools.product("xy", repeat=4)]
    alg = make(["1"], [("x", "1", "1"), ("y", "1", "1")], [[(1, w)] for w in words])
    assert alg.dim == 15
    with pytest.raises(SearchBudgetExceeded):
        is_biserial_fuller(alg, max_rad_dim=10)
    with pytest.raises(SearchBudgetExceeded):
        is_biserial_fuller(alg, budget=5)


def test_nakayama_implies_biserial(fixture_algebras):
    for alg in fixture_algebras.values():
        if is_nakayama(alg):
            assert is_biserial_fuller(alg)[0]
        if is_special_biserial(alg)[0]:
            assert is_biserial_fuller(alg)[0]
