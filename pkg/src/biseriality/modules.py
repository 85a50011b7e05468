"""Finite-dimensional left modules given as quiver representations.

A representation stores one coordinate block per vertex; a *global* vector is
the concatenation of the blocks in vertex order.  Submodules are handled as
:class:`Subspace` objects of the global space that are stable under the arrow
maps.  Simple modules are one-dimensional (split basic algebras), so the
composition length of any module is its dimension.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .algebra import FiniteDimAlgebra
from .linalg import Subspace, matmul_mod


class RepresentationError(ValueError):
    pass


class Representation:
    def __init__(
        self,
        alg: FiniteDimAlgebra,
        dims: dict[str, int],
        maps: dict[str, np.ndarray],
        labels: list[str] | None = None,
        check: bool = True,
    ):
        self.algebra = alg
        self.p = alg.p
        q = alg.quiver
        self.dims = {v: int(dims.get(v, 0)) for v in q.vertices}
        self.offsets: dict[str, int] = {}
        off = 0
        for v in q.vertices:
            self.offsets[v] = off
            off += self.dims[v]
        self.dim = off
        self.maps: dict[str, np.ndarray] = {}
        for a in q.arrows:
            shape = (self.dims[a.target], self.dims[a.source])
            mat = maps.get(a.name)
            mat = np.zeros(shape, dtype=np.int64) if mat is None else np.asarray(mat, dtype=np.int64) % self.p
            if mat.shape != shape:
                raise RepresentationError(
                    "map for %s has shape %s, expected %s" % (a.name, mat.shape, shape)
                )
            self.maps[a.name] = mat
        self.labels = labels
        if check and not self.satisfies_relations():
            raise RepresentationError("representation does not satisfy the relations")

    def __repr__(self) -> str:
        return "Representation(dims=%s)" % self.dimension_vector()

    def dimension_vector(self) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in self.algebra.quiver.vertices)

    def block(self, v: str) -> slice:
        return slice(self.offsets[v], self.offsets[v] + self.dims[v])

    @cached_property
    def arrow_action(self) -> dict[str, np.ndarray]:
        """Global matrices of the arrows."""
        out = {}
        for a in self.algebra.quiver.arrows:
            g = np.zeros((self.dim, self.dim), dtype=np.int64)
            g[self.block(a.target), self.block(a.source)] = self.maps[a.name]
            out[a.name] = g
        return out

    def vertex_projection(self, v: str) -> np.ndarray:
        g = np.zeros((self.dim, self.dim), dtype=np.int64)
        b = self.block(v)
        g[b, b] = np.eye(self.dims[v], dtype=np.int64)
        return g

    def path_matrix(self, pth) -> np.ndarray:
        if pth.is_trivial:
            return self.vertex_projection(pth.source)
        g = np.eye(self.dim, dtype=np.int64)
        for a in pth.traversal():
            g = matmul_mod(self.arrow_action[a], g, self.p)
        return g

    @cached_property
    def basis_action(self) -> np.ndarray:
        """``rho(b_k)`` for every basis path ``b_k`` of the algebra, stacked."""
        alg = self.algebra
        out = np.zeros((alg.dim, self.dim, self.dim), dtype=np.int64)
        for k, pth in enumerate(alg.basis):
            out[k] = self.path_matrix(pth)
        return out

    def element_matrix(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=np.int64) % self.p
        nz = np.flatnonzero(u)
        if nz.size == 0:
            return np.zeros((self.dim, self.dim), dtype=np.int64)
        return np.tensordot(u[nz], self.basis_action[nz], axes=1) % self.p

    def act(self, u, vec) -> np.ndarray:
        return matmul_mod(self.element_matrix(u), np.asarray(vec, dtype=np.int64), self.p)

    def satisfies_relations(self) -> bool:
        for rel in self.algebra.presentation.relations:
            tot = np.zeros((self.dim, self.dim), dtype=np.int64)
            for c, pth in rel:
                tot = (tot + c * self.path_matrix(pth)) % self.p
            if tot.any():
                return False
        return True

    def zero_vector(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def whole(self) -> Subspace:
        return Subspace.full(self.dim, self.p)

    def to_json(self) -> dict:
        return {
            "dims": {v: self.dims[v] for v in self.algebra.quiver.vertices},
            "maps": {a: self.maps[a].tolist() for a in self.maps},
        }

    @classmethod
    def from_json(cls, alg: FiniteDimAlgebra, data: dict) -> "Representation":
        dims = {v: int(d) for v, d in data["dims"].items()}
        maps = {}
        for a in alg.quiver.arrows:
            shape = (dims.get(a.target, 0), dims.get(a.source, 0))
            maps[a.name] = np.array(data["maps"].get(a.name, []), dtype=np.int64).reshape(shape)
        return cls(alg, dims, maps)


# -- constructions --------------------------------------------------------------


def projective_module(alg: FiniteDimAlgebra, vertex: str) -> Representation:
    """``A e_vertex``: spanned by the basis paths starting at ``vertex``."""
    q = alg.quiver
    idx = {v: [k for k, pth in enumerate(alg.basis) if pth.source == vertex and pth.target == v] for v in q.vertices}
    maps = {}
    for a in q.arrows:
        big = alg.arrow_left[a.name]
        maps[a.name] = big[np.ix_(idx[a.target], idx[a.source])]
    labels = [str(alg.basis[k]) for v in q.vertices for k in idx[v]]
    rep = Representation(alg, {v: len(idx[v]) for v in q.vertices}, maps, labels, check=False)
    rep.algebra_index = [k for v in q.vertices for k in idx[v]]
    return rep


def element_in_projective(rep: Representation, u) -> np.ndarray:
    """Coordinates in ``A e_i`` of an algebra element ``u`` lying in ``A e_i``."""
    u = np.asarray(u, dtype=np.int64) % rep.p
    outside = np.ones(u.shape[0], dtype=bool)
    outside[rep.algebra_index] = False
    if u[outside].any():
        raise RepresentationError("element does not lie in this projective")
    vec = u[rep.algebra_index]
    return vec


def submodule_generated(rep: Representation, vectors) -> Subspace:
    """Smallest subrepresentation containing the given global vectors."""
    vecs = np.asarray(vectors, dtype=np.int64).reshape(-1, rep.dim) % rep.p
    pieces = []
    for v in rep.algebra.quiver.vertices:
        b = rep.block(v)
        part = np.zeros_like(vecs)
        part[:, b] = vecs[:, b]
        pieces.append(part)
    sub = Subspace.zero(rep.dim, rep.p).add_vectors(np.vstack(pieces))
    while True:
        if sub.dim == 0:
            return sub
        imgs = [matmul_mod(sub.basis, g.T, rep.p) for g in rep.arrow_action.values()]
        if not imgs:
            return sub
        grown = sub.add_vectors(np.vstack(imgs))
        if grown.dim == sub.dim:
            return sub
        sub = grown


def cyclic_submodule(rep: Representation, x) -> Subspace:
    return submodule_generated(rep, [x])


def is_submodule(rep: Representation, sub: Subspace) -> bool:
    if sub.dim == 0:
        return True
    for g in list(rep.arrow_action.values()) + [rep.vertex_projection(v) for v in rep.algebra.quiver.vertices]:
        if not sub.contains_space(Subspace.span(matmul_mod(sub.basis, g.T, rep.p), rep.dim, rep.p)):
            return False
    return True


def quotient(rep: Representation, sub: Subspace) -> tuple[Representation, np.ndarray]:
    """``rep / sub`` and the projection matrix from ``rep`` onto it."""
    q = rep.algebra.quiver
    keep: dict[str, list[int]] = {}
    red: dict[str, Subspace] = {}
    for v in q.vertices:
        b = rep.block(v)
        local = Subspace.span(sub.basis[:, b], rep.dims[v], rep.p) if sub.dim else Subspace.zero(rep.dims[v], rep.p)
        red[v] = local
        keep[v] = [c for c in range(rep.dims[v]) if c not in set(local.pivots)]
    dims = {v: len(keep[v]) for v in q.vertices}
    offsets, off = {}, 0
    for v in q.vertices:
        offsets[v] = off
        off += dims[v]
    proj = np.zeros((off, rep.dim), dtype=np.int64)
    for v in q.vertices:
        n = rep.dims[v]
        if n == 0:
            continue
        local_proj = red[v].reduce(np.eye(n, dtype=np.int64))[:, keep[v]].T  # (kept, n)
        proj[offsets[v]:offsets[v] + dims[v], rep.block(v)] = local_proj
    maps = {}
    for a in q.arrows:
        lift = np.zeros((rep.dims[a.source], dims[a.source]), dtype=np.int64)
        lift[keep[a.source], np.arange(dims[a.source])] = 1
        image = matmul_mod(rep.maps[a.name], lift, rep.p)
        tgt = rep.dims[a.target]
        local_proj = red[a.target].reduce(np.eye(tgt, dtype=np.int64))[:, keep[a.target]].T if tgt else np.zeros((0, 0), dtype=np.int64)
        maps[a.name] = matmul_mod(local_proj, image, rep.p) if tgt and dims[a.source] else np.zeros((dims[a.target], dims[a.source]), dtype=np.int64)
    return Representation(rep.algebra, dims, maps, check=False), proj


def quotient_by_cyclic(rep: Representation, gens) -> tuple[Representation, np.ndarray]:
    gens = np.asarray(gens, dtype=np.int64).reshape(-1, rep.dim)
    return quotient(rep, submodule_generated(rep, gens))


def dual(rep: Representation, target: FiniteDimAlgebra | None = None) -> Representation:
    """``Hom_k(M, k)`` as a module over the opposite algebra (or ``target``,
    which must present it)."""
    alg = rep.algebra.opposite if target is None else target
    return Representation(alg, rep.dims, {a: m.T.copy() for a, m in rep.maps.items()}, check=False)


# -- filtrations -------------------------------------------------------------------


def radical_of(rep: Representation, sub: Subspace) -> Subspace:
    if sub.dim == 0:
        return sub
    imgs = [matmul_mod(sub.basis, g.T, rep.p) for g in rep.arrow_action.values()]
    if not imgs:
        return Subspace.zero(rep.dim, rep.p)
    return Subspace.span(np.vstack(imgs), rep.dim, rep.p)


def radical_series(rep: Representation, sub: Subspace | None = None) -> list[Subspace]:
    """``[N, rad N, rad^2 N, ..., 0]`` for the submodule ``N`` (default: all of M)."""
    cur = rep.whole() if sub is None else sub
    out = [cur]
    while cur.dim:
        cur = radical_of(rep, cur)
        out.append(cur)
    return out


def socle_series(rep: Representation) -> list[Subspace]:
    """``[0, soc M, soc^2 M, ..., M]``."""
    cur = Subspace.zero(rep.dim, rep.p)
    out = [cur]
    while cur.dim < rep.dim:
        nxt = rep.whole()
        for g in rep.arrow_action.values():
            nxt = nxt.intersect(cur.preimage(g))
        if nxt.dim == cur.dim:
            raise RepresentationError("socle series stalled; arrow action is not nilpotent")
        cur = nxt
        out.append(cur)
    return out


def socle(rep: Representation) -> Subspace:
    if rep.dim == 0:
        return rep.whole()
    return socle_series(rep)[1]


def loewy_length(rep: Representation, sub: Subspace | None = None) -> int:
    return len(radical_series(rep, sub)) - 1


def radical_layers(rep: Representation, sub: Subspace | None = None) -> list[int]:
    series = radical_series(rep, sub)
    return [a.dim - b.dim for a, b in zip(series, series[1:])]


def top_dimension(rep: Representation, sub: Subspace | None = None) -> int:
    cur = rep.whole() if sub is None else sub
    return cur.dim - radical_of(rep, cur).dim


def is_local(rep: Representation, sub: Subspace | None = None) -> bool:
    return top_dimension(rep, sub) == 1


def is_colocal(rep: Representation) -> bool:
    return rep.dim > 0 and socle(rep).dim == 1


def is_uniserial(rep: Representation, sub: Subspace | None = None) -> bool:
    return all(d <= 1 for d in radical_layers(rep, sub))


def length_of(sub_or_rep) -> int:
    return sub_or_rep.dim


def restrict(rep: Representation, sub: Subspace) -> Representation:
    """The submodule ``sub`` as a representation in its own right."""
    q = rep.algebra.quiver
    bases = {}
    for v in q.vertices:
        b = rep.block(v)
        local = Subspace.span(sub.basis[:, b], rep.dims[v], rep.p) if sub.dim else Subspace.zero(rep.dims[v], rep.p)
        bases[v] = local
    maps = {}
    for a in q.arrows:
        src, tgt = bases[a.source], bases[a.target]
        img = matmul_mod(src.basis, rep.maps[a.name].T, rep.p) if src.dim else np.zeros((0, tgt.ambient), dtype=np.int64)
        coords = tgt.coordinates(img) if src.dim else np.zeros((0, tgt.dim), dtype=np.int64)
        maps[a.name] = np.asarray(coords, dtype=np.int64).reshape(src.dim, tgt.dim).T
    return Representation(rep.algebra, {v: bases[v].dim for v in q.vertices}, maps, check=False)
