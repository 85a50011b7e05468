"""Bisected presentations: verification, the ``(a - d_ax) x`` normal form, and
a search for witnesses.

Every condition in a bisected presentation is local to a vertex ``l``: the
bad products at ``l`` only involve sigma and ``q`` on arrows leaving ``l``
and tau and ``p`` on arrows entering ``l``, and surjectivity only asks that
the ``p``-images of parallel arrows (all entering the same vertex) and the
``q``-images of parallel arrows (all leaving the same vertex) have independent
classes modulo ``rad^2``.  The search therefore solves one small problem per
vertex and glues the answers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraPresentation, FiniteDimAlgebra, build_algebra
from .linalg import Subspace, matmul_mod, nullspace, projective_points, quotient_basis_complement
from .quiver import Bisection, Path, Quiver, is_good

DEFAULT_LOCAL_BUDGET = 20000


class BudgetExhausted(RuntimeError):
    """The witness search ran out of budget; this says nothing about biseriality."""


@dataclass
class BisectedWitness:
    bisection: Bisection
    p_images: dict[str, np.ndarray]
    q_images: dict[str, np.ndarray]

    def flipped(self) -> "BisectedWitness":
        return BisectedWitness(self.bisection.flipped(), dict(self.p_images), dict(self.q_images))

    def to_json(self) -> dict:
        return {
            "sigma": dict(self.bisection.sigma),
            "tau": dict(self.bisection.tau),
            "p": {a: v.tolist() for a, v in self.p_images.items()},
            "q": {a: v.tolist() for a, v in self.q_images.items()},
        }

    @classmethod
    def from_json(cls, data: dict) -> "BisectedWitness":
        return cls(
            Bisection.from_maps({a: int(s) for a, s in data["sigma"].items()}, {a: int(s) for a, s in data["tau"].items()}),
            {a: np.array(v, dtype=np.int64) for a, v in data["p"].items()},
            {a: np.array(v, dtype=np.int64) for a, v in data["q"].items()},
        )


def _in_corner(alg: FiniteDimAlgebra, u, target: str, source: str) -> bool:
    idx = set(alg.corner_indices(target, source, radical=True))
    return all(k in idx for k in np.flatnonzero(np.asarray(u) % alg.p))


def verify_bisected_witness(alg: FiniteDimAlgebra, w: BisectedWitness) -> tuple[bool, list[str]]:
    """Check a witness clause by clause; returns ``(ok, violated clauses)``."""
    q = alg.quiver
    problems: list[str] = []
    if not q.is_bisection(w.bisection):
        problems.append("(sigma, tau) is not a bisection of the quiver")
    for label, images in (("p", w.p_images), ("q", w.q_images)):
        if set(images) != {a.name for a in q.arrows}:
            problems.append("%s is not defined on exactly the arrows" % label)
            continue
        for a in q.arrows:
            u = np.asarray(images[a.name])
            if u.shape != (alg.dim,):
                problems.append("%s(%s) has the wrong length" % (label, a.name))
            elif not _in_corner(alg, u, a.target, a.source):
                problems.append(
                    "%s(%s) is not in e_%s rad A e_%s" % (label, a.name, a.target, a.source)
                )
        if any(s.startswith(label + "(") for s in problems):
            continue
        rows = [alg.idempotent(v) for v in q.vertices] + [images[a.name] for a in q.arrows]
        span = alg.radical_power(2).add_vectors(np.array(rows, dtype=np.int64))
        if span.dim != alg.dim:
            problems.append("%s is not surjective: images do not span A/rad^2 A" % label)
    if problems:
        return False, problems
    for a_name, x_name in q.length_two_paths():
        if w.bisection.is_bad_pair(a_name, x_name):
            prod = alg.multiply(w.q_images[a_name], w.p_images[x_name])
            if prod.any():
                problems.append("q(%s)p(%s) != 0 for the bad path %s*%s" % (a_name, x_name, a_name, x_name))
    return not problems, problems


# -- the d-table normal form ----------------------------------------------------

DTable = dict[tuple[str, str], "tuple[int, Path] | None"]


def bad_length_two_paths(q: Quiver, b: Bisection) -> list[tuple[str, str]]:
    return [(a, x) for a, x in q.length_two_paths() if b.is_bad_pair(a, x)]


def check_c1(q: Quiver, b: Bisection, d: DTable, p: int) -> list[str]:
    problems = []
    for (a, x), entry in d.items():
        if entry is None:
            continue
        omega, pth = entry
        if omega % p == 0:
            problems.append("path condition: d_%s%s has zero coefficient" % (a, x))
            continue
        if pth.length < 1:
            problems.append("path condition: d_%s%s must be a path of length >= 1" % (a, x))
            continue
        full = q.compose(pth, q.path(x))
        if full is None:
            problems.append("path condition: %s*%s is not composable" % (pth, x))
            continue
        if not is_good(b, full):
            problems.append("path condition: %s*%s is not a good path" % (pth, x))
        if pth.target != q.arrow(a).target:
            problems.append("path condition: d_%s%s does not end at t(%s)" % (a, x, a))
        if pth.arrows[0] == a:
            problems.append("path condition: d_%s%s ends with the arrow %s" % (a, x, a))
    return problems


def check_c2(d: DTable, p: int) -> list[str]:
    problems = []
    singles = {
        key: (entry[0] % p, entry[1].arrows[0])
        for key, entry in d.items()
        if entry is not None and entry[1].length == 1
    }
    for (a, x), (phi, b) in singles.items():
        for (b2, y), (psi, a2) in singles.items():
            if b2 == b and a2 == a and (phi * psi) % p == 1:
                problems.append("coefficient condition: d_%s%s = %d*%s and d_%s%s = %d*%s with product 1" % (a, x, phi, b, b, y, psi, a))
    return problems


def normal_form_relations(q: Quiver, d: DTable) -> list[tuple]:
    """The elements ``(a - d_ax) x`` as relations."""
    rels = []
    for (a, x), entry in sorted(d.items()):
        terms = [(1, q.path(a, x))]
        if entry is not None:
            omega, pth = entry
            terms.append((-omega, q.compose(pth, q.path(x))))
        rels.append(tuple(terms))
    return rels


def verify_normal_form(
    pres: AlgebraPresentation, b: Bisection, d: DTable, alg: FiniteDimAlgebra | None = None
) -> tuple[bool, list[str]]:
    q = pres.quiver
    problems = []
    if not q.is_bisection(b):
        return False, ["(sigma, tau) is not a bisection"]
    bad = set(bad_length_two_paths(q, b))
    extra = set(d) - bad
    if extra:
        problems.append("d is defined on paths that are not bad: %s" % sorted(extra))
    problems += check_c1(q, b, d, pres.p)
    problems += check_c2(d, pres.p)
    if problems:
        return False, problems
    if alg is None:
        alg = build_algebra(pres)
    full = {key: d.get(key) for key in bad}
    for rel in normal_form_relations(q, full):
        if alg.element(rel).any():
            problems.append("%s is not in the ideal" % " + ".join("%d*%s" % (c, pth) for c, pth in rel))
    return not problems, problems


def check_terminal_vanishing(alg: FiniteDimAlgebra, b: Bisection, d: DTable) -> bool:
    """``d'*a*x`` and ``d'*d_ax*x`` vanish for every arrow ``d'`` leaving ``t(a)``."""
    q = alg.quiver
    for (a, x), entry in d.items():
        if entry is None:
            continue
        omega, pth = entry
        tail = q.compose(pth, q.path(x))
        for dd in q.out_arrows(q.arrow(a).target):
            if alg.normal_form(q.path(dd.name, a, x)).any():
                return False
            if alg.normal_form(q.compose(q.path(dd.name), tail)).any():
                return False
    return True


# -- witness search ------------------------------------------------------------


@dataclass
class LocalSolution:
    sigma: dict[str, int]
    tau: dict[str, int]
    p_images: dict[str, np.ndarray]
    q_images: dict[str, np.ndarray]


@dataclass
class _Counter:
    budget: int
    spent: int = 0

    def tick(self, n: int = 1) -> None:
        self.spent += n
        if self.spent > self.budget:
            raise BudgetExhausted("local search budget of %d exceeded" % self.budget)


def radical_annihilator(alg: FiniteDimAlgebra) -> Subspace:
    """``{z : rad A . z = 0}``."""
    hit = alg.__dict__.get("_radical_annihilator")
    if hit is None:
        if not alg.quiver.arrows:
            hit = Subspace.full(alg.dim, alg.p)
        else:
            stacked = np.vstack(list(alg.arrow_left.values()))
            hit = Subspace.span(nullspace(stacked, alg.p), alg.dim, alg.p)
        alg.__dict__["_radical_annihilator"] = hit
    return hit


def corner_candidates(alg: FiniteDimAlgebra, target: str, source: str, preferred=None, reduce: bool = True):
    """Elements of ``e_target rad A e_source`` up to scalars, with nonzero class
    modulo ``rad^2`` (``preferred`` first).

    With ``reduce`` the part inside ``rad^2`` is only taken modulo elements
    killed by ``rad A`` from the left: left products with radical elements,
    which is all the searches look at, cannot tell such candidates apart.
    """
    p = alg.p
    idx = alg.corner_indices(target, source, radical=True)
    corner = np.zeros((len(idx), alg.dim), dtype=np.int64)
    corner[np.arange(len(idx)), idx] = 1
    c = Subspace.span(corner, alg.dim, p)
    c2 = c.intersect(alg.radical_power(2))
    tops = quotient_basis_complement(c, c2)
    low = c2.intersect(radical_annihilator(alg)) if reduce else Subspace.zero(alg.dim, p)
    shifts = quotient_basis_complement(c2, low)
    out = []
    seen = set()
    if preferred is not None:
        out.append(np.asarray(preferred, dtype=np.int64) % p)
        seen.add(Subspace.span(out[0], alg.dim, p).key())
    if tops.shape[0] == 0:
        return out
    for coeffs in projective_points(tops.shape[0], p):
        t = (coeffs @ tops) % p
        for h in itertools.product(range(p), repeat=shifts.shape[0]):
            u = (t + np.array(h, dtype=np.int64) @ shifts) % p if shifts.shape[0] else t
            key = Subspace.span(u, alg.dim, p).key()
            if key in seen:
                continue
            seen.add(key)
            out.append(u)
    return out


def _tops_ok(alg: FiniteDimAlgebra, vals: dict[str, np.ndarray], arrows, endpoint) -> bool:
    """Classes mod rad^2 of parallel arrows' images are independent."""
    rad2 = alg.radical_power(2)
    groups: dict[str, list[str]] = {}
    for a in arrows:
        groups.setdefault(endpoint(a), []).append(a.name)
    for names in groups.values():
        tops = np.array([rad2.reduce(vals[n]) for n in names], dtype=np.int64)
        if Subspace.span(tops, alg.dim, alg.p).dim != len(names):
            return False
    return True


def _choose_q(alg, l, out_arrows, kernels) -> dict[str, np.ndarray] | None:
    """Pick ``q(a)`` in each kernel with independent classes for parallel arrows.

    Such a choice exists iff each kernel has a nonzero class modulo ``rad^2``
    and, for two parallel arrows, the classes of both kernels span a plane.
    """
    rad2 = alg.radical_power(2)
    p = alg.p
    tops = {}
    for a in out_arrows:
        basis = kernels[a.name]
        red = rad2.reduce(basis) if basis.shape[0] else basis
        keep = [k for k in range(basis.shape[0]) if red[k].any()]
        if not keep:
            return None
        tops[a.name] = (basis[keep], red[keep])
    vals = {a.name: tops[a.name][0][0] for a in out_arrows}
    if len(out_arrows) == 2 and out_arrows[0].target == out_arrows[1].target:
        (ba, ra), (bb, rb) = tops[out_arrows[0].name], tops[out_arrows[1].name]
        for i, j in itertools.product(range(len(ra)), range(len(rb))):
            if Subspace.span(np.array([ra[i], rb[j]]), alg.dim, p).dim == 2:
                vals = {out_arrows[0].name: ba[i], out_arrows[1].name: bb[j]}
                break
        else:
            # the classes of both kernels are the same line
            return None
    return vals


def _bad_patterns(q: Quiver, l: str):
    sig_opts, tau_opts = q.local_bisection_choices(l)
    outs, ins = q.out_arrows(l), q.in_arrows(l)
    seen = {}
    for s, t in itertools.product(sig_opts, tau_opts):
        bad = frozenset((a.name, x.name) for a in outs for x in ins if s[a.name] != t[x.name])
        if bad not in seen:
            seen[bad] = (s, t)
    return sorted(seen.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))


def local_presentation(alg: FiniteDimAlgebra, l: str, budget: int = DEFAULT_LOCAL_BUDGET) -> LocalSolution | None:
    """A bisected presentation at vertex ``l`` or None if none exists over GF(p).

    The search is exhaustive over the ``p``-images of the arrows entering ``l``
    (up to scalars); for each choice the admissible ``q``-images form linear
    subspaces, so the remaining question is decided by linear algebra.
    """
    q = alg.quiver
    outs, ins = q.out_arrows(l), q.in_arrows(l)
    if len(outs) > 2 or len(ins) > 2:
        return None
    counter = _Counter(budget)
    for bad, (sigma, tau) in _bad_patterns(q, l):
        hit = {x for _, x in bad}
        involved = [
            x.name for x in ins
            if x.name in hit or any(y.name in hit and y.source == x.source for y in ins)
        ]
        p_fixed = {x.name: alg.arrow(x.name) for x in ins}
        choice_lists = [
            corner_candidates(alg, l, q.arrow(x).source, preferred=alg.arrow(x)) for x in involved
        ]
        for combo in itertools.product(*choice_lists):
            counter.tick()
            p_vals = dict(p_fixed)
            p_vals.update(zip(involved, combo))
            if not _tops_ok(alg, p_vals, ins, lambda a: a.source):
                continue
            kernels = {}
            for a in outs:
                idx = alg.corner_indices(a.target, l, radical=True)
                xs = [x for (aa, x) in bad if aa == a.name]
                if not idx:
                    kernels[a.name] = np.zeros((0, alg.dim), dtype=np.int64)
                    continue
                basis = np.zeros((len(idx), alg.dim), dtype=np.int64)
                basis[np.arange(len(idx)), idx] = 1
                if xs:
                    cols = [
                        np.array([alg.multiply(row, p_vals[x]) for row in basis], dtype=np.int64)
                        for x in xs
                    ]
                    mat = np.hstack(cols).T  # constraints x coefficients
                    ker = nullspace(mat, alg.p)
                    kernels[a.name] = matmul_mod(ker, basis, alg.p) if ker.shape[0] else ker.reshape(0, alg.dim)
                else:
                    kernels[a.name] = basis
            q_vals = _choose_q(alg, l, outs, kernels)
            if q_vals is None:
                continue
            return LocalSolution(sigma, tau, {x.name: p_vals[x.name] for x in ins}, q_vals)
    return None


def search_bisected_witness(alg: FiniteDimAlgebra, budget: int = DEFAULT_LOCAL_BUDGET) -> BisectedWitness | None:
    """Glue local presentations into a global witness; None if some vertex has none."""
    q = alg.quiver
    if not q.is_biserial():
        return None
    sigma, tau, pim, qim = {}, {}, {}, {}
    for l in q.vertices:
        sol = local_presentation(alg, l, budget)
        if sol is None:
            return None
        sigma.update(sol.sigma)
        tau.update(sol.tau)
        pim.update(sol.p_images)
        qim.update(sol.q_images)
    w = BisectedWitness(Bisection.from_maps(sigma, tau), pim, qim)
    ok, problems = verify_bisected_witness(alg, w)
    if not ok:
        raise AssertionError("glued witness failed verification: %s" % problems)
    return w


def failing_vertices(alg: FiniteDimAlgebra, budget: int = DEFAULT_LOCAL_BUDGET) -> list[str]:
    return [l for l in alg.quiver.vertices if local_presentation(alg, l, budget) is None]
