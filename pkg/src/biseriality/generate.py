"""Random presented algebras: unconstrained ones for differential testing and
biserial-by-construction ones in the ``(a - d_ax) x`` normal form."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import AlgebraError, AlgebraPresentation, FiniteDimAlgebra, build_algebra
from .bisected import DTable, bad_length_two_paths, check_c1, check_c2, normal_form_relations, verify_normal_form
from .modules import projective_module, radical_of
from .quiver import Arrow, Bisection, Path, Quiver, is_good


class GenerationFailed(RuntimeError):
    pass


@dataclass
class RandomConfig:
    p: int = 3
    max_vertices: int = 4
    max_arrows: int = 6
    max_nilpotency: int = 4
    max_rad_dim: int = 14
    relation_rate: float = 0.5
    attempts: int = 200


@dataclass
class NormalFormConfig:
    p: int = 3
    max_vertices: int = 4
    max_arrows: int = 6
    max_path: int = 2
    nilpotency_cap: int = 4
    nonzero_rate: float = 0.6
    max_rad_dim: int = 14
    attempts: int = 200


def rad_dims_ok(alg: FiniteDimAlgebra, bound: int) -> bool:
    for base in (alg, alg.opposite):
        for v in base.quiver.vertices:
            rep = projective_module(base, v)
            if radical_of(rep, rep.whole()).dim > bound:
                return False
    return True


def _vertices(n: int) -> list[str]:
    return [str(k + 1) for k in range(n)]


def random_quiver(rng: random.Random, n_vertices: int, n_arrows: int, max_degree: int | None = None) -> Quiver:
    vs = _vertices(n_vertices)
    arrows: list[Arrow] = []
    outd = dict.fromkeys(vs, 0)
    ind = dict.fromkeys(vs, 0)
    names = iter("abcdefghijklmnopqrstuvwxyz")
    tries = 0
    while len(arrows) < n_arrows and tries < 50 * n_arrows:
        tries += 1
        s, t = rng.choice(vs), rng.choice(vs)
        if max_degree is not None and (outd[s] >= max_degree or ind[t] >= max_degree):
            continue
        arrows.append(Arrow(next(names), s, t))
        outd[s] += 1
        ind[t] += 1
    return Quiver(vs, arrows)


def _random_relations(rng: random.Random, q: Quiver, p: int, m: int, rate: float) -> list[tuple]:
    rels = []
    mid = q.paths(m - 1, min_len=2)
    by_ends: dict[tuple[str, str], list[Path]] = {}
    for pth in mid:
        by_ends.setdefault((pth.source, pth.target), []).append(pth)
    for pth in mid:
        if rng.random() >= rate / max(1, pth.length - 1):
            continue
        others = [o for o in by_ends[(pth.source, pth.target)] if o != pth]
        if others and rng.random() < 0.5:
            other = rng.choice(others)
            rels.append(((1, pth), (rng.randrange(1, p), other)))
        else:
            rels.append(((1, pth),))
    rels += [((1, pth),) for pth in q.paths(m, min_len=m)]
    return rels


def random_presentation(rng: random.Random, cfg: RandomConfig = RandomConfig()) -> tuple[AlgebraPresentation, FiniteDimAlgebra]:
    """A random admissible presentation within the configured bounds."""
    for _ in range(cfg.attempts):
        n = rng.randint(1, cfg.max_vertices)
        k = rng.randint(max(1, n - 1), cfg.max_arrows)
        q = random_quiver(rng, n, k, max_degree=rng.choice([2, 2, 3]))
        m = rng.randint(2, cfg.max_nilpotency)
        rels = _random_relations(rng, q, cfg.p, m, cfg.relation_rate)
        try:
            pres = AlgebraPresentation(q, cfg.p, tuple(rels))
            alg = build_algebra(pres, cfg.max_nilpotency)
        except AlgebraError:
            continue
        if rad_dims_ok(alg, cfg.max_rad_dim):
            return pres, alg
    raise GenerationFailed("no admissible presentation after %d attempts" % cfg.attempts)


def random_bisection(rng: random.Random, q: Quiver) -> Bisection:
    sigma, tau = {}, {}
    for v in q.vertices:
        sig, ta = q.local_bisection_choices(v)
        sigma.update(rng.choice(sig))
        tau.update(rng.choice(ta))
    return Bisection.from_maps(sigma, tau)


def _replacement_paths(q: Quiver, b: Bisection, a: str, x: str, max_len: int) -> list[Path]:
    """Paths ``b_t...b_1`` from ``s(a)`` to ``t(a)`` with ``b_t != a`` and
    ``b_t...b_1 x`` good."""
    start, end = q.arrow(a).source, q.arrow(a).target
    out = []
    for pth in q.paths(max_len, min_len=1):
        if pth.source != start or pth.target != end or pth.arrows[0] == a:
            continue
        if is_good(b, q.compose(pth, q.path(x))):
            out.append(pth)
    return out


def random_dtable(rng: random.Random, q: Quiver, b: Bisection, p: int, cfg: NormalFormConfig) -> DTable:
    d: DTable = {}
    for a, x in bad_length_two_paths(q, b):
        cands = _replacement_paths(q, b, a, x, cfg.max_path)
        if cands and rng.random() < cfg.nonzero_rate:
            d[(a, x)] = (rng.randrange(1, p), rng.choice(cands))
        else:
            d[(a, x)] = None
    return d


def generate_normal_form_instance(
    rng: random.Random, cfg: NormalFormConfig = NormalFormConfig()
) -> tuple[AlgebraPresentation, Bisection, DTable, FiniteDimAlgebra]:
    """A biserial-by-construction algebra: its ideal contains every
    ``(a - d_ax) x`` for a d-table meeting both conditions, plus all paths of
    one fixed length so that it is admissible."""
    for _ in range(cfg.attempts):
        n = rng.randint(1, cfg.max_vertices)
        q = random_quiver(rng, n, rng.randint(max(1, n - 1), cfg.max_arrows), max_degree=2)
        b = random_bisection(rng, q)
        d = random_dtable(rng, q, b, cfg.p, cfg)
        if check_c1(q, b, d, cfg.p) or check_c2(d, cfg.p):
            continue  # e.g. phi * psi = 1; such draws are never emitted
        cap = rng.randint(3, cfg.nilpotency_cap)
        rels = normal_form_relations(q, d) + [((1, pth),) for pth in q.paths(cap, min_len=cap)]
        try:
            pres = AlgebraPresentation(q, cfg.p, tuple(rels))
            alg = build_algebra(pres, cfg.nilpotency_cap)
        except AlgebraError:
            continue
        ok, _ = verify_normal_form(pres, b, d, alg)
        if ok and rad_dims_ok(alg, cfg.max_rad_dim):
            return pres, b, {k: v for k, v in d.items() if v is not None}, alg
    raise GenerationFailed("no instance after %d attempts" % cfg.attempts)
