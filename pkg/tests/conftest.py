import json
from pathlib import Path

import hypothesis
import numpy as np
import pytest

from biseriality.algebra import AlgebraPresentation, build_algebra
from biseriality.instance import load_instance
from biseriality.quiver import Quiver

hypothesis.settings.register_profile("ci", deadline=None, max_examples=40)
hypothesis.settings.load_profile("ci")

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


def make(vertices, arrows, relations=(), p=3):
    """Algebra from vertex ids, ``(name, src, dst)`` arrows and relations as
    lists of ``(coeff, "b*a")`` pairs."""
    q = Quiver(vertices, arrows)
    rels = tuple(tuple((c, q.path(*w.split("*"))) for c, w in rel) for rel in relations)
    return build_algebra(AlgebraPresentation(q, p, rels))


@pytest.fixture(scope="session")
def expected():
    return json.loads((FIXTURES / "expected.json").read_text())


@pytest.fixture(scope="session")
def fixture_algebras():
    out = {}
    for fp in sorted(FIXTURES.glob("*.alg")):
        inst = load_instance(fp)
        out[fp.stem] = build_algebra(inst.presentation)
    return out


@pytest.fixture(scope="session")
def a3(fixture_algebras):
    return fixture_algebras["a3-linear"]


@pytest.fixture(scope="session")
def loops(fixture_algebras):
    return fixture_algebras["local-loops"]


@pytest.fixture(scope="session")
def d4(fixture_algebras):
    return fixture_algebras["d4-outward"]


@pytest.fixture(scope="session")
def twisted(fixture_algebras):
    return fixture_algebras["twisted-square"]


@pytest.fixture(scope="session")
def five(fixture_algebras):
    return fixture_algebras["five-vertex"]


@pytest.fixture
def rng():
    return np.random.default_rng(0)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line("%s criterion %d: %s" % ("PASS" if ok else "FAIL", n, detail))
    missing = [n for n in range(1, 9) if n not in results]
    for n in missing:
        terminalreporter.write_line("FAIL criterion %d: did not run to completion" % n)
