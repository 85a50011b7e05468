"""Biseriality through subalgebras and through obstruction modules.

Obstruction modules come in four kinds.  Kinds 1 and 2 are modules of Loewy
length two whose radical (resp. top modulo socle) has length three.  Kind 3
is a local module ``M`` with elements ``a1 in e_i rad A e_j``, ``a2, a3 in rad
A`` and ``b0 in M`` such that

    (a) ``a2 a1 b0`` and ``a3 a1 b0`` are linearly independent,
    (b) ``rad^2 A . a1 b0 = 0``,
    (c) no ``h1, h1' in e_i rad A e_j`` and ``h2, h3`` in the span of ``a2, a3``
        with independent classes modulo ``rad^2`` satisfy
        ``h1 b0 + h1' b0 = a1 b0``, ``h2 h1' b0 = 0`` and ``h3 h1 b0 = 0``.

Kind 4 is kind 3 for right modules; it is stored as kind-3 data over the
opposite algebra.  For fixed lines ``h2, h3`` the conditions in (c) are linear
in ``(h1, h1')``, so (c) is decided by one rank computation per pair of lines.
"""

from __future__ import annotations

import enum
import itertools
import time
from dataclasses import dataclass, field

import numpy as np

from .algebra import FiniteDimAlgebra, idempotent_subalgebra
from .bisected import (
    DEFAULT_LOCAL_BUDGET,
    BisectedWitness,
    BudgetExhausted,
    corner_candidates,
    local_presentation,
    search_bisected_witness,
    verify_bisected_witness,
)
from .fuller import (
    DEFAULT_CANDIDATE_BUDGET,
    DEFAULT_MAX_RAD_DIM,
    FullerCertificate,
    is_biserial_fuller,
)
from .linalg import Subspace, projective_points, solve
from .modules import (
    Representation,
    dual,
    element_in_projective,
    is_colocal,
    is_local,
    loewy_length,
    projective_module,
    quotient,
    quotient_by_cyclic,
    radical_of,
    socle,
    submodule_generated,
)

DEFAULT_OBSTRUCTION_BUDGET = 3000
ALPHA_READING = "k-span"


class WitnessUnavailable(RuntimeError):
    """The verdict is known but no certificate was produced within budget."""


# -- neighbour sets and the subalgebra criterion ---------------------------------


@dataclass(frozen=True)
class NeighborSets:
    vertex: str
    neighbors: tuple[str, ...]
    j_sets: tuple[tuple[str, ...], ...]


def neighbor_sets(alg: FiniteDimAlgebra, l: str) -> NeighborSets:
    """``N(l)`` and the sets ``J`` tested together with ``l``.

    ``J`` is ``N(l)`` itself when it has fewer than four members and otherwise
    runs over its 3-element subsets.
    """
    q = alg.quiver
    nbrs = tuple(q.neighbors(l))
    if len(nbrs) < 4:
        js = (nbrs,)
    else:
        js = tuple(itertools.combinations(nbrs, 3))
    return NeighborSets(l, nbrs, js)


class Variant(enum.Enum):
    FULL = "full"
    D4 = "d4"


@dataclass
class SubalgebraCheck:
    vertices: tuple[str, ...]
    dim: int
    biserial: bool


@dataclass
class SubalgebraReport:
    variant: Variant
    biserial: bool
    checks: list[SubalgebraCheck] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "variant": self.variant.value,
            "biserial": self.biserial,
            "checks": [
                {"vertices": list(c.vertices), "dim": c.dim, "biserial": c.biserial} for c in self.checks
            ],
        }


def subalgebra_sets(alg: FiniteDimAlgebra, variant: Variant) -> list[tuple[str, ...]]:
    q = alg.quiver
    out, seen = [], set()
    for l in q.vertices:
        ns = neighbor_sets(alg, l)
        groups = (ns.neighbors,) if variant is Variant.FULL else ns.j_sets
        for js in groups:
            s = tuple(v for v in q.vertices if v == l or v in js)
            if s not in seen:
                seen.add(s)
                out.append(s)
    return out


def subalgebra_criterion(
    alg: FiniteDimAlgebra,
    variant: Variant = Variant.FULL,
    max_rad_dim: int = DEFAULT_MAX_RAD_DIM,
    budget: int = DEFAULT_CANDIDATE_BUDGET,
    stop_early: bool = False,
) -> SubalgebraReport:
    """Biserial iff every ``eAe`` over ``{l} + J`` is biserial."""
    report = SubalgebraReport(variant, True)
    for s in subalgebra_sets(alg, variant):
        sub = idempotent_subalgebra(alg, s).algebra
        ok, _ = is_biserial_fuller(sub, max_rad_dim, budget)
        report.checks.append(SubalgebraCheck(s, sub.dim, ok))
        if not ok:
            report.biserial = False
            if stop_early:
                break
    return report


# -- modules of Loewy length two -------------------------------------------------


def _top_quotient(alg: FiniteDimAlgebra, v: str) -> Representation:
    """``A e_v / rad^2 A e_v``."""
    proj = projective_module(alg, v)
    rad = radical_of(proj, proj.whole())
    rep, _ = quotient(proj, radical_of(proj, rad))
    return rep


def local_loewy_two(alg: FiniteDimAlgebra, m: int) -> Representation | None:
    """A local module of Loewy length two with ``l(rad M) = m``, or None.

    Every such module is a quotient of some ``A e_v / rad^2 A e_v``, and any
    subspace of its (semisimple) radical is a submodule, so it suffices to
    cut the radical down to dimension ``m``.
    """
    if m < 1:
        raise ValueError("m must be positive")
    for v in alg.quiver.vertices:
        top = _top_quotient(alg, v)
        rad = radical_of(top, top.whole())
        if rad.dim < m:
            continue
        extra = rad.basis[m:]
        rep, _ = quotient(top, Subspace.span(extra, top.dim, top.p)) if len(extra) else (top, None)
        return rep
    return None


def colocal_loewy_two(alg: FiniteDimAlgebra, m: int) -> Representation | None:
    """A colocal module of Loewy length two with ``l(M / soc M) = m``, or None."""
    local = local_loewy_two(alg.opposite, m)
    if local is None:
        return None
    return dual(local, target=alg)


def has_local_loewy_two(rep: Representation, m: int) -> bool:
    return is_local(rep) and loewy_length(rep) == 2 and radical_of(rep, rep.whole()).dim == m


def has_colocal_loewy_two(rep: Representation, m: int) -> bool:
    return is_colocal(rep) and loewy_length(rep) == 2 and rep.dim - socle(rep).dim == m


class Direction(enum.Enum):
    BY_QUIVER = "quiver"
    BY_MODULE_SEARCH = "modules"


def loewy_two_check(alg: FiniteDimAlgebra, m: int, direction: Direction, colocal: bool = False) -> bool:
    """Whether a (co)local module of Loewy length two with length-``m`` radical
    (resp. top over socle) exists, decided from the quiver or by building one."""
    if m < 1:
        raise ValueError("m must be positive")
    q = alg.quiver
    if direction is Direction.BY_QUIVER:
        deg = q.max_in_degree() if colocal else q.max_out_degree()
        return deg >= m
    if colocal:
        rep = colocal_loewy_two(alg, m)
        return rep is not None and has_colocal_loewy_two(rep, m)
    rep = local_loewy_two(alg, m)
    return rep is not None and has_local_loewy_two(rep, m)


# -- obstruction witnesses -------------------------------------------------------


@dataclass
class ObstructionWitness:
    """Module data for one of the four obstruction kinds.

    ``module`` lives over the algebra for kinds 1-3 and over its opposite for
    kind 4, and so do ``a1, a2, a3`` (coefficient vectors in that algebra's
    basis) and ``b0`` (a vector of the module).
    """

    kind: int
    module: Representation
    i: str | None = None
    j: str | None = None
    a1: np.ndarray | None = None
    a2: np.ndarray | None = None
    a3: np.ndarray | None = None
    b0: np.ndarray | None = None
    transcript: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "module": self.module.to_json(), "reading": ALPHA_READING}
        if self.kind in (3, 4):
            out.update(
                i=self.i, j=self.j,
                a1=self.a1.tolist(), a2=self.a2.tolist(), a3=self.a3.tolist(), b0=self.b0.tolist(),
            )
        out["transcript"] = list(self.transcript)
        return out

    @classmethod
    def from_json(cls, alg: FiniteDimAlgebra, data: dict) -> "ObstructionWitness":
        kind = int(data["kind"])
        base = alg.opposite if kind == 4 else alg
        rep = Representation.from_json(base, data["module"])
        w = cls(kind, rep, transcript=list(data.get("transcript", [])))
        if kind in (3, 4):
            w.i, w.j = data["i"], data["j"]
            w.a1, w.a2, w.a3, w.b0 = (np.array(data[k], dtype=np.int64) for k in ("a1", "a2", "a3", "b0"))
        return w


def _same_presentation(a: FiniteDimAlgebra, b: FiniteDimAlgebra) -> bool:
    return a is b or a.presentation == b.presentation


def _corner_basis(alg: FiniteDimAlgebra, target: str, source: str) -> np.ndarray:
    idx = alg.corner_indices(target, source, radical=True)
    out = np.zeros((len(idx), alg.dim), dtype=np.int64)
    out[np.arange(len(idx)), idx] = 1
    return out


def _in_span(alg: FiniteDimAlgebra, u, rows: np.ndarray) -> bool:
    if rows.shape[0] == 0:
        return not np.asarray(u).any()
    return Subspace.span(rows, alg.dim, alg.p).contains(np.asarray(u) % alg.p)


def condition_a(rep: Representation, a1, a2, a3, b0) -> bool:
    v = rep.act(a1, b0)
    pair = np.array([rep.act(a2, v), rep.act(a3, v)])
    return Subspace.span(pair, rep.dim, rep.p).dim == 2


def condition_b(rep: Representation, a1, b0) -> bool:
    v = rep.act(a1, b0)
    rad2 = rep.algebra.radical_power(2)
    return all(not rep.act(r, v).any() for r in rad2.basis)


def condition_c(
    rep: Representation, i: str, j: str, a1, a2, a3, b0, transcript: list[str] | None = None
) -> bool:
    """True iff no ``(h1, h1', h2, h3)`` as in (c) exists."""
    alg = rep.algebra
    p = alg.p
    log = transcript if transcript is not None else []
    log.append("reading of the span in (alpha): %s" % ALPHA_READING)
    w = Subspace.span(np.array([a2, a3]), alg.dim, p)
    if w.dim < 2 or w.intersect(alg.radical_power(2)).dim > 0:
        log.append("span of a2, a3 has fewer than two independent classes mod rad^2: (c) holds vacuously")
        return True
    basis = _corner_basis(alg, i, j)
    n = basis.shape[0]
    target = rep.act(a1, b0)
    if n == 0:
        log.append("e_i rad A e_j = 0: (beta) forces a1 b0 = 0")
        return bool(target.any())
    eb = np.array([rep.act(row, b0) for row in basis], dtype=np.int64)  # n x d
    lines = [(c @ w.basis) % p for c in projective_points(2, p)]
    d = rep.dim
    for h2, h3 in itertools.permutations(lines, 2):
        m2 = rep.element_matrix(h2)
        m3 = rep.element_matrix(h3)
        top = np.hstack([(m3 @ eb.T) % p, np.zeros((d, n), dtype=np.int64)])
        mid = np.hstack([np.zeros((d, n), dtype=np.int64), (m2 @ eb.T) % p])
        bot = np.hstack([eb.T, eb.T])
        mat = np.vstack([top, mid, bot]) % p
        rhs = np.concatenate([np.zeros(2 * d, dtype=np.int64), target])
        sol = solve(mat, rhs, p)
        tag = "h2=%s h3=%s" % (alg.format_element(h2), alg.format_element(h3))
        if sol is not None:
            h1 = (sol[:n] @ basis) % p
            h1p = (sol[n:] @ basis) % p
            log.append("%s: solvable with h1=%s h1'=%s" % (tag, alg.format_element(h1), alg.format_element(h1p)))
            return False
        log.append("%s: infeasible" % tag)
    return True


def certify_obstruction(alg: FiniteDimAlgebra, w: ObstructionWitness) -> tuple[bool, list[str]]:
    """Re-check an obstruction witness from scratch."""
    problems: list[str] = []
    rep = w.module
    if w.kind in (1, 2, 3):
        base = alg
    elif w.kind == 4:
        base = alg.opposite
    else:
        return False, ["unknown kind %r" % w.kind]
    if not _same_presentation(rep.algebra, base):
        return False, ["module is over the wrong algebra"]
    if not rep.satisfies_relations():
        return False, ["module does not satisfy the relations"]
    if w.kind == 1:
        if not has_local_loewy_two(rep, 3):
            problems.append("not a local module of Loewy length two with l(rad M) = 3")
        return not problems, problems
    if w.kind == 2:
        if not has_colocal_loewy_two(rep, 3):
            problems.append("not a colocal module of Loewy length two with l(M/soc M) = 3")
        return not problems, problems

    q = base.quiver
    if w.i not in q.vertices or w.j not in q.vertices:
        return False, ["unknown vertices"]
    for name, u in (("a1", w.a1), ("a2", w.a2), ("a3", w.a3)):
        if u is None or np.shape(u) != (base.dim,):
            return False, ["%s is missing or has the wrong length" % name]
    if w.b0 is None or np.shape(w.b0) != (rep.dim,):
        return False, ["b0 is missing or has the wrong length"]
    if not _in_span(base, w.a1, _corner_basis(base, w.i, w.j)):
        problems.append("a1 is not in e_i rad A e_j")
    if not (base.in_radical(w.a2) and base.in_radical(w.a3)):
        problems.append("a2 or a3 is not in rad A")
    if problems:
        return False, problems
    if not is_local(rep):
        problems.append("module is not local")
    if not condition_a(rep, w.a1, w.a2, w.a3, w.b0):
        problems.append("(a) fails: a2 a1 b0 and a3 a1 b0 are dependent")
    if not condition_b(rep, w.a1, w.b0):
        problems.append("(b) fails: rad^2 A a1 b0 != 0")
    if problems:
        return False, problems
    log: list[str] = []
    if not condition_c(rep, w.i, w.j, w.a1, w.a2, w.a3, w.b0, log):
        problems.append("(c) fails: " + log[-1])
    return not problems, problems


# -- building obstruction witnesses ----------------------------------------------


def kind_one_witness(alg: FiniteDimAlgebra) -> ObstructionWitness | None:
    rep = local_loewy_two(alg, 3)
    return None if rep is None else ObstructionWitness(1, rep, transcript=["quotient of A e_v / rad^2 A e_v"])


def kind_two_witness(alg: FiniteDimAlgebra) -> ObstructionWitness | None:
    rep = colocal_loewy_two(alg, 3)
    return None if rep is None else ObstructionWitness(2, rep, transcript=["dual of a local module over A^op"])


def cyclic_candidate(base: FiniteDimAlgebra, j: str, a1) -> tuple[Representation, np.ndarray]:
    """``M = A e_j / rad^2 A a1`` together with ``b0``, the class of ``e_j``."""
    proj = projective_module(base, j)
    gens = [element_in_projective(proj, base.multiply(r, a1)) for r in base.radical_power(2).basis]
    if gens:
        rep, proj_map = quotient_by_cyclic(proj, np.array(gens))
    else:
        rep, proj_map = quotient(proj, submodule_generated(proj, np.zeros((0, proj.dim))))
    b0 = (proj_map @ element_in_projective(proj, base.idempotent(j))) % base.p
    return rep, b0


def _w_pairs(base: FiniteDimAlgebra, l: str, identity_only: bool):
    """Pairs ``(a2, a3)`` of images of the two arrows leaving ``l``."""
    q = base.quiver
    outs = q.out_arrows(l)
    if len(outs) != 2:
        return
    a, b = outs
    if identity_only:
        yield base.arrow(a.name), base.arrow(b.name)
        return
    ca = corner_candidates(base, a.target, l, preferred=base.arrow(a))
    cb = corner_candidates(base, b.target, l, preferred=base.arrow(b))
    rad2 = base.radical_power(2)
    for u, v in itertools.product(ca, cb):
        if Subspace.span(rad2.reduce(np.array([u, v])), base.dim, base.p).dim == 2:
            yield u, v


def _a1_choices(base: FiniteDimAlgebra, l: str, identity_only: bool):
    for x in base.quiver.in_arrows(l):
        if identity_only:
            yield x.source, base.arrow(x.name)
        else:
            for u in corner_candidates(base, l, x.source, preferred=base.arrow(x)):
                yield x.source, u


@dataclass
class _Budget:
    limit: int
    spent: int = 0

    def take(self) -> None:
        self.spent += 1
        if self.spent > self.limit:
            raise BudgetExhausted("obstruction search budget of %d exceeded" % self.limit)


def _kind_three_at(base, kind, l, identity_only, budget, cache) -> ObstructionWitness | None:
    for j, a1 in _a1_choices(base, l, identity_only):
        key = (j, tuple(a1))
        if key not in cache:
            cache[key] = cyclic_candidate(base, j, a1)
        rep, b0 = cache[key]
        for a2, a3 in _w_pairs(base, l, identity_only):
            budget.take()
            if not condition_a(rep, a1, a2, a3, b0) or not condition_b(rep, a1, b0):
                continue
            log: list[str] = []
            if condition_c(rep, l, j, a1, a2, a3, b0, log):
                return ObstructionWitness(kind, rep, l, j, a1, a2, a3, b0, log)
    return None


def find_obstruction(
    alg: FiniteDimAlgebra, vertices=None, budget: int = DEFAULT_OBSTRUCTION_BUDGET
) -> ObstructionWitness | None:
    """Search the proof's family of obstruction modules, arrow images first."""
    q = alg.quiver
    if q.max_out_degree() >= 3:
        return kind_one_witness(alg)
    if q.max_in_degree() >= 3:
        return kind_two_witness(alg)
    verts = list(q.vertices if vertices is None else vertices)
    counter = _Budget(budget)
    caches = {3: {}, 4: {}}
    for identity_only in (True, False):
        for l in verts:
            for kind, base in ((3, alg), (4, alg.opposite)):
                w = _kind_three_at(base, kind, l, identity_only, counter, caches[kind])
                if w is not None:
                    return w
    return None


# -- the decision procedure ------------------------------------------------------


@dataclass
class Verdict:
    """``biserial`` is Fuller's answer; ``witness_verdict`` is what the
    certificate (if any) proves on its own."""

    biserial: bool
    fuller_certificate: FullerCertificate | None = None
    bisected: BisectedWitness | None = None
    obstruction: ObstructionWitness | None = None
    witness_verdict: bool | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def decided(self) -> bool:
        return self.biserial if self.witness_verdict is None else self.witness_verdict

    def witness_json(self) -> dict | None:
        if self.bisected is not None:
            return {"type": "bisected", **self.bisected.to_json()}
        if self.obstruction is not None:
            return {"type": "obstruction", **self.obstruction.to_json()}
        return None


def decide_biserial(
    alg: FiniteDimAlgebra,
    local_budget: int = DEFAULT_LOCAL_BUDGET,
    obstruction_budget: int = DEFAULT_OBSTRUCTION_BUDGET,
    max_rad_dim: int = DEFAULT_MAX_RAD_DIM,
    candidate_budget: int = DEFAULT_CANDIDATE_BUDGET,
    require_witness: bool = False,
) -> Verdict:
    fuller, cert = is_biserial_fuller(alg, max_rad_dim, candidate_budget)
    v = Verdict(fuller, cert)
    q = alg.quiver
    bad, exhausted = [], []
    if q.is_biserial():
        for l in q.vertices:
            try:
                if local_presentation(alg, l, local_budget) is None:
                    bad.append(l)
            except BudgetExhausted:
                exhausted.append(l)
    if exhausted:
        v.notes.append("local search budget exhausted at vertices %s" % ", ".join(exhausted))
    if q.is_biserial() and not bad and not exhausted:
        w = search_bisected_witness(alg, local_budget)
        ok, problems = verify_bisected_witness(alg, w)
        if ok:
            v.bisected, v.witness_verdict = w, True
        else:
            v.notes.append("bisected witness failed verification: %s" % problems)
    else:
        if bad:
            v.notes.append("no bisected presentation at vertices %s" % ", ".join(bad))
        try:
            ob = find_obstruction(alg, (bad + exhausted) or None, obstruction_budget)
        except BudgetExhausted as exc:
            ob = None
            v.notes.append(str(exc))
        if ob is not None:
            ok, problems = certify_obstruction(alg, ob)
            if ok:
                v.obstruction, v.witness_verdict = ob, False
            else:
                v.notes.append("obstruction failed certification: %s" % problems)
        else:
            v.notes.append("no obstruction found in the searched family")
    if v.witness_verdict is None and require_witness:
        raise WitnessUnavailable("; ".join(v.notes))
    if v.witness_verdict is not None and v.witness_verdict != fuller:
        v.notes.append("certificate contradicts the Fuller verdict")
    return v


def timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, (time.perf_counter() - t0) * 1000.0
