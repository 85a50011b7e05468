"""Bound quiver algebras ``kQ/I`` over GF(p) with normal-form arithmetic.

Elements are coefficient vectors over a monomial basis.  The basis is the set
of paths that are not pivots when the ideal (restricted to paths shorter than
the nilpotency index) is put in reduced echelon form with the columns sorted
longest path first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .linalg import Subspace, is_prime, matmul_mod, nullspace
from .quiver import Arrow, Path, Quiver

DEFAULT_MAX_NILPOTENCY = 12
PATH_CAP = 6000

Term = tuple[int, Path]


class AlgebraError(ValueError):
    pass


class MalformedRelation(AlgebraError):
    pass


class AdmissibilityUndecided(AlgebraError):
    """No nilpotency index up to the bound could be certified."""


@dataclass(frozen=True)
class AlgebraPresentation:
    quiver: Quiver
    p: int
    relations: tuple[tuple[Term, ...], ...] = ()

    def __post_init__(self):
        if not is_prime(self.p):
            raise AlgebraError("field size %d is not prime" % self.p)
        cleaned = []
        for rel in self.relations:
            cleaned.append(_normalize_relation(rel, self.p))
        object.__setattr__(self, "relations", tuple(cleaned))
        for rel in self.relations:
            self._check_relation(rel)

    def _check_relation(self, rel) -> None:
        if not rel:
            raise MalformedRelation("relation reduces to zero")
        ends = {(pth.source, pth.target) for _, pth in rel}
        if len(ends) != 1:
            raise MalformedRelation(
                "relation %s is not homogeneous in (source, target)" % format_relation(rel)
            )
        for _, pth in rel:
            if pth.length < 2:
                raise MalformedRelation(
                    "relation %s has a term of length < 2" % format_relation(rel)
                )
            for a in pth.arrows:
                self.quiver.arrow(a)

    def opposite(self) -> "AlgebraPresentation":
        qop = self.quiver.opposite()
        rels = []
        for rel in self.relations:
            rels.append(tuple((c, reverse_path(pth)) for c, pth in rel))
        return AlgebraPresentation(qop, self.p, tuple(rels))


def reverse_path(pth: Path) -> Path:
    return Path(pth.target, pth.source, pth.arrows[::-1])


def _normalize_relation(rel, p: int) -> tuple[Term, ...]:
    acc: dict[Path, int] = {}
    order: list[Path] = []
    for c, pth in rel:
        if pth not in acc:
            acc[pth] = 0
            order.append(pth)
        acc[pth] = (acc[pth] + int(c)) % p
    return tuple((acc[pth], pth) for pth in order if acc[pth])


def format_relation(rel) -> str:
    parts = []
    for c, pth in rel:
        if c == 1:
            parts.append(str(pth))
        else:
            parts.append("%d*%s" % (c, pth))
    return " + ".join(parts) if parts else "0"


class _PathSpace:
    """Coordinates on the paths of length ``1..max_len``, longest first."""

    def __init__(self, quiver: Quiver, max_len: int):
        self.quiver = quiver
        self.max_len = max_len
        paths = quiver.paths(max_len, min_len=1)
        if len(paths) > PATH_CAP:
            raise AdmissibilityUndecided(
                "more than %d paths of length <= %d; refusing to expand" % (PATH_CAP, max_len)
            )
        paths.sort(key=quiver.sort_key, reverse=True)
        self.paths = paths
        self.index = {pth: k for k, pth in enumerate(paths)}
        self.lengths = np.array([pth.length for pth in paths], dtype=np.int64)
        self.n = len(paths)
        self._left: dict[str, tuple[np.ndarray, np.ndarray]] = {}
        self._right: dict[str, tuple[np.ndarray, np.ndarray]] = {}
        for a in quiver.arrows:
            src, dst = [], []
            for k, pth in enumerate(paths):
                if pth.length < max_len and pth.target == a.source:
                    src.append(k)
                    dst.append(self.index[Path(pth.source, a.target, (a.name,) + pth.arrows)])
            self._left[a.name] = (np.array(src, dtype=np.int64), np.array(dst, dtype=np.int64))
            src, dst = [], []
            for k, pth in enumerate(paths):
                if pth.length < max_len and pth.source == a.target:
                    src.append(k)
                    dst.append(self.index[Path(a.source, pth.target, pth.arrows + (a.name,))])
            self._right[a.name] = (np.array(src, dtype=np.int64), np.array(dst, dtype=np.int64))

    def vector(self, rel) -> np.ndarray:
        v = np.zeros(self.n, dtype=np.int64)
        for c, pth in rel:
            if pth.length <= self.max_len:
                v[self.index[pth]] += c
        return v

    def multiply_all(self, rows: np.ndarray) -> np.ndarray:
        """Left and right products of every row by every arrow, truncated."""
        out = []
        for table in (self._left, self._right):
            for src, dst in table.values():
                if src.size == 0:
                    continue
                prod = np.zeros_like(rows)
                prod[:, dst] = rows[:, src]
                out.append(prod)
        if not out:
            return np.zeros((0, self.n), dtype=np.int64)
        return np.vstack(out)


def _ideal_closure(space: _PathSpace, gens: np.ndarray, p: int, exact_bound: int | None):
    """Span of ``u*g*v`` over generators ``g``.

    With ``exact_bound`` set, only elements whose longest term has length at
    most ``exact_bound - 1`` are multiplied, so nothing is ever truncated and
    every vector produced lies in the ideal itself.  Without it, products are
    computed modulo paths longer than ``space.max_len``.
    """
    sub = Subspace.zero(space.n, p)
    if gens.shape[0]:
        sub = sub.add_vectors(gens)
    while True:
        if sub.dim == 0:
            return sub
        rows = sub.basis
        if exact_bound is not None:
            lead = space.lengths[list(sub.pivots)]
            rows = rows[lead <= exact_bound - 1]
            if rows.shape[0] == 0:
                return sub
        prods = space.multiply_all(rows)
        if prods.shape[0] == 0:
            return sub
        bigger = sub.add_vectors(prods)
        if bigger.dim == sub.dim:
            return sub
        sub = bigger


def certify_nilpotency(pres: AlgebraPresentation, max_nilpotency: int) -> int:
    """Some ``m <= max_nilpotency`` with every path of length ``m`` in the ideal."""
    q = pres.quiver
    if not q.arrows:
        return 1
    for bound in range(2, max_nilpotency + 1):
        space = _PathSpace(q, bound)
        gens = [space.vector(rel) for rel in pres.relations if max(pth.length for _, pth in rel) <= bound]
        gens = np.array(gens, dtype=np.int64).reshape(len(gens), space.n)
        ideal = _ideal_closure(space, gens, pres.p, exact_bound=bound)
        for m in range(2, bound + 1):
            long_paths = [space.index[pth] for pth in space.paths if pth.length == m]
            if not long_paths:
                return m
            eye = np.zeros((len(long_paths), space.n), dtype=np.int64)
            eye[np.arange(len(long_paths)), long_paths] = 1
            if not ideal.reduce(eye).any():
                return m
    raise AdmissibilityUndecided(
        "could not certify (kQ+)^m in I for m <= %d; the ideal may not be admissible "
        "or the bound is too small" % max_nilpotency
    )


class FiniteDimAlgebra:
    """``kQ/I`` with a monomial basis, structure constants and radical filtration."""

    def __init__(self, pres: AlgebraPresentation, max_nilpotency: int = DEFAULT_MAX_NILPOTENCY):
        self.presentation = pres
        self.max_nilpotency = max_nilpotency
        self.quiver = pres.quiver
        self.p = pres.p
        q = self.quiver
        p = self.p
        bound = certify_nilpotency(pres, max_nilpotency)
        trivial = [q.trivial_path(v) for v in q.vertices]
        if bound <= 1:
            self._setup(1, trivial, {}, None)
            return
        space = _PathSpace(q, bound - 1)
        gens = [space.vector(rel) for rel in pres.relations]
        gens = np.array(gens, dtype=np.int64).reshape(len(gens), space.n)
        ideal = _ideal_closure(space, gens, p, exact_bound=None)
        m = bound
        for length in range(1, bound):
            idx = [space.index[pth] for pth in space.paths if pth.length == length]
            eye = np.zeros((len(idx), space.n), dtype=np.int64)
            eye[np.arange(len(idx)), idx] = 1
            if not ideal.reduce(eye).any():
                m = length
                break
        pivots = set(ideal.pivots)
        standard = [pth for k, pth in enumerate(space.paths) if k not in pivots and pth.length < m]
        self._setup(m, trivial + sorted(standard, key=q.sort_key), space, ideal)

    def _setup(self, m, basis, space, ideal):
        q, p = self.quiver, self.p
        self.nilpotency = m
        self.basis: list[Path] = list(basis)
        self.dim = len(self.basis)
        self.index = {pth: k for k, pth in enumerate(self.basis)}
        self._space = space
        self._ideal = ideal
        self._nf_cache: dict[Path, np.ndarray] = {}
        if space:
            cols = np.array([space.index[pth] for pth in self.basis if pth.length > 0], dtype=np.int64)
            self._basis_cols = cols
            offset = len(q.vertices)
            self._col_to_basis = {int(c): offset + k for k, c in enumerate(cols)}
        # structure constants: for each composable pair of basis paths
        pi, pj, rows = [], [], []
        for i, u in enumerate(self.basis):
            for j, v in enumerate(self.basis):
                w = q.compose(u, v)
                if w is None:
                    continue
                vec = self.normal_form(w)
                if vec.any():
                    pi.append(i)
                    pj.append(j)
                    rows.append(vec)
        self._pi = np.array(pi, dtype=np.int64)
        self._pj = np.array(pj, dtype=np.int64)
        self._prod = np.array(rows, dtype=np.int64).reshape(len(rows), self.dim)

    def __repr__(self) -> str:
        return "FiniteDimAlgebra(dim=%d, m=%d, p=%d)" % (self.dim, self.nilpotency, self.p)

    # -- elements -----------------------------------------------------------

    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def normal_form(self, pth: Path) -> np.ndarray:
        """Coefficient vector of the image of a path."""
        hit = self._nf_cache.get(pth)
        if hit is not None:
            return hit
        v = np.zeros(self.dim, dtype=np.int64)
        if pth.is_trivial:
            v[self.index[pth]] = 1
        elif pth.length < self.nilpotency:
            space = self._space
            w = np.zeros(space.n, dtype=np.int64)
            w[space.index[pth]] = 1
            rem = self._ideal.reduce(w)
            for c in np.flatnonzero(rem):
                v[self._col_to_basis[int(c)]] = rem[c]
        self._nf_cache[pth] = v
        return v

    def element(self, terms) -> np.ndarray:
        """Element from ``[(coeff, Path), ...]``."""
        v = self.zero()
        for c, pth in terms:
            v = (v + c * self.normal_form(pth)) % self.p
        return v

    def idempotent(self, vertex: str) -> np.ndarray:
        return self.normal_form(self.quiver.trivial_path(vertex))

    def arrow(self, name: str) -> np.ndarray:
        return self.normal_form(self.quiver.path(name))

    def one(self) -> np.ndarray:
        v = self.zero()
        for vert in self.quiver.vertices:
            v[self.index[self.quiver.trivial_path(vert)]] = 1
        return v

    def multiply(self, u, v) -> np.ndarray:
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        if self._pi.size == 0:
            return self.zero()
        w = (u[self._pi] * v[self._pj]) % self.p
        return matmul_mod(w, self._prod, self.p)

    def left_matrix(self, u) -> np.ndarray:
        """Matrix of ``x -> u*x`` acting on coefficient columns."""
        u = np.asarray(u, dtype=np.int64)
        mat = np.zeros((self.dim, self.dim), dtype=np.int64)
        coef = u[self._pi]
        nz = np.flatnonzero(coef)
        np.add.at(mat.T, self._pj[nz], (coef[nz, None] * self._prod[nz]))
        return mat % self.p

    def right_matrix(self, u) -> np.ndarray:
        """Matrix of ``x -> x*u``."""
        u = np.asarray(u, dtype=np.int64)
        mat = np.zeros((self.dim, self.dim), dtype=np.int64)
        coef = u[self._pj]
        nz = np.flatnonzero(coef)
        np.add.at(mat.T, self._pi[nz], (coef[nz, None] * self._prod[nz]))
        return mat % self.p

    @cached_property
    def arrow_left(self) -> dict[str, np.ndarray]:
        return {a.name: self.left_matrix(self.arrow(a.name)) for a in self.quiver.arrows}

    @cached_property
    def arrow_right(self) -> dict[str, np.ndarray]:
        return {a.name: self.right_matrix(self.arrow(a.name)) for a in self.quiver.arrows}

    def format_element(self, u) -> str:
        parts = []
        for k in np.flatnonzero(np.asarray(u) % self.p):
            c = int(u[k]) % self.p
            name = str(self.basis[k])
            parts.append(name if c == 1 else "%d*%s" % (c, name))
        return " + ".join(parts) if parts else "0"

    # -- subspaces ----------------------------------------------------------

    def corner_indices(self, target: str, source: str, radical: bool = True) -> list[int]:
        """Basis indices spanning ``e_target A e_source`` (or its radical part)."""
        return [
            k
            for k, pth in enumerate(self.basis)
            if pth.source == source and pth.target == target and (pth.length > 0 or not radical)
        ]

    def corner(self, target: str, source: str, radical: bool = True) -> Subspace:
        idx = self.corner_indices(target, source, radical)
        rows = np.zeros((len(idx), self.dim), dtype=np.int64)
        rows[np.arange(len(idx)), idx] = 1
        return Subspace.span(rows, self.dim, self.p)

    def radical_power(self, i: int) -> Subspace:
        return self.radical_powers[min(i, self.nilpotency)]

    @cached_property
    def radical_powers(self) -> list[Subspace]:
        out = []
        for i in range(self.nilpotency + 1):
            if i == 0:
                out.append(Subspace.full(self.dim, self.p))
                continue
            paths = self.quiver.paths(self.nilpotency - 1, min_len=i)
            rows = [self.normal_form(pth) for pth in paths]
            out.append(Subspace.span(np.array(rows, dtype=np.int64).reshape(len(rows), self.dim), self.dim, self.p))
        return out

    def in_radical(self, u) -> bool:
        return self.radical_power(1).contains(u)

    def top_class(self, u) -> np.ndarray:
        """Coordinates of ``u`` in ``rad A / rad^2 A`` (on the arrow classes)."""
        return self.radical_power(2).reduce(u)

    def is_admissible_certificate(self) -> bool:
        m = self.nilpotency
        longest = self.quiver.paths(m, min_len=m)
        if any(self.normal_form(pth).any() for pth in longest):
            return False
        if m >= 2:
            shorter = self.quiver.paths(m - 1, min_len=m - 1)
            return any(self.normal_form(pth).any() for pth in shorter)
        return True

    # -- derived algebras ---------------------------------------------------

    @cached_property
    def opposite(self) -> "FiniteDimAlgebra":
        op = build_algebra(self.presentation.opposite(), self.max_nilpotency)
        op.__dict__["opposite"] = self  # keep (A^op)^op identical to A
        return op

    def to_opposite(self, u) -> np.ndarray:
        """The same element read in ``A^op`` (paths reversed)."""
        op = self.opposite
        v = op.zero()
        for k in np.flatnonzero(np.asarray(u) % self.p):
            v = (v + int(u[k]) * op.normal_form(reverse_path(self.basis[k]))) % self.p
        return v


def build_algebra(pres: AlgebraPresentation, max_nilpotency: int = DEFAULT_MAX_NILPOTENCY) -> FiniteDimAlgebra:
    return FiniteDimAlgebra(pres, max_nilpotency)


def opposite(alg: FiniteDimAlgebra) -> FiniteDimAlgebra:
    return alg.opposite


def multiply(alg: FiniteDimAlgebra, u, v) -> np.ndarray:
    return alg.multiply(u, v)


def radical_power_basis(alg: FiniteDimAlgebra, i: int) -> Subspace:
    return alg.radical_power(i)


def idempotent(alg: FiniteDimAlgebra, vertex: str) -> np.ndarray:
    return alg.idempotent(vertex)


# -- idempotent subalgebras ---------------------------------------------------


@dataclass
class SubalgebraPresentation:
    vertices: tuple[str, ...]
    algebra: FiniteDimAlgebra
    origins: dict[str, Path]
    embedding: np.ndarray = field(repr=False)  # rows: images in A of the eAe basis
    parent: FiniteDimAlgebra = field(repr=False, default=None)


def irreducible_paths(alg: FiniteDimAlgebra, vertices) -> list[Path]:
    """Paths between vertices of the set whose interior avoids it."""
    inside = set(vertices)
    out = []
    for pth in alg.quiver.paths(max(alg.nilpotency - 1, 0), min_len=1):
        if pth.source not in inside or pth.target not in inside:
            continue
        trav = pth.traversal()
        interior = [alg.quiver.arrow(a).target for a in trav[:-1]]
        if any(v in inside for v in interior):
            continue
        if alg.normal_form(pth).any():
            out.append(pth)
    return out


def _arrow_name(pth: Path, taken: set[str]) -> str:
    name = pth.arrows[0] if pth.length == 1 else ".".join(pth.arrows)
    base, k = name, 1
    while name in taken:
        k += 1
        name = "%s#%d" % (base, k)
    taken.add(name)
    return name


def idempotent_subalgebra(alg: FiniteDimAlgebra, vertices) -> SubalgebraPresentation:
    """``eAe`` for ``e`` the sum of the given vertex idempotents, with its own quiver."""
    q = alg.quiver
    chosen_vertices = tuple(v for v in q.vertices if v in set(vertices))
    if not chosen_vertices:
        raise AlgebraError("vertex set must be nonempty")
    inside = set(chosen_vertices)
    p = alg.p
    rad_idx = [
        k for k, pth in enumerate(alg.basis)
        if pth.length > 0 and pth.source in inside and pth.target in inside
    ]
    # e rad A e rad A e
    prods = []
    for i in rad_idx:
        for j in rad_idx:
            w = q.compose(alg.basis[i], alg.basis[j])
            if w is not None:
                vec = alg.normal_form(w)
                if vec.any():
                    prods.append(vec)
    sq = Subspace.span(np.array(prods, dtype=np.int64).reshape(len(prods), alg.dim), alg.dim, p)
    span = sq
    origins: dict[str, Path] = {}
    arrows: list[Arrow] = []
    taken: set[str] = set(chosen_vertices)
    for pth in irreducible_paths(alg, chosen_vertices):
        img = alg.normal_form(pth)
        if span.contains(img):
            continue
        span = span.add_vectors(img)
        name = _arrow_name(pth, taken)
        origins[name] = pth
        arrows.append(Arrow(name, pth.source, pth.target))
    if span.dim != sq.dim + len(arrows) or span.dim != len(rad_idx):
        raise AlgebraError("irreducible paths do not span the radical of eAe")
    sub_q = Quiver(chosen_vertices, arrows)
    m = max(alg.nilpotency, 1)

    images: dict[Path, np.ndarray] = {}
    for v in chosen_vertices:
        images[sub_q.trivial_path(v)] = alg.idempotent(v)
    for a in arrows:
        images[sub_q.path(a.name)] = alg.normal_form(origins[a.name])

    def image(pth: Path) -> np.ndarray:
        hit = images.get(pth)
        if hit is None:
            head = sub_q.path(pth.arrows[0])
            tail = Path(pth.source, sub_q.arrow(pth.arrows[1]).target, pth.arrows[1:])
            hit = alg.multiply(image(head), image(tail))
            images[pth] = hit
        return hit

    relations = []
    if arrows:
        mid = sub_q.paths(m - 1, min_len=2) if m >= 3 else []
        # kernel is homogeneous in endpoints; split by (source, target)
        groups: dict[tuple[str, str], list[Path]] = {}
        for pth in mid:
            groups.setdefault((pth.source, pth.target), []).append(pth)
        for (s, t), paths in groups.items():
            mat = np.array([image(pth) for pth in paths], dtype=np.int64)
            ker = nullspace(mat.T, p)
            ker = Subspace.span(ker, len(paths), p).basis if ker.shape[0] else ker
            for row in ker:
                rel = tuple((int(c), paths[k]) for k, c in enumerate(row) if c)
                relations.append(rel)
        for pth in sub_q.paths(m, min_len=m):
            relations.append(((1, pth),))
    sub_pres = AlgebraPresentation(sub_q, p, tuple(relations))
    sub_alg = build_algebra(sub_pres, max(m + 1, 2))
    emb = np.array([image(pth) if pth.length < m else alg.zero() for pth in sub_alg.basis], dtype=np.int64)
    return SubalgebraPresentation(chosen_vertices, sub_alg, origins, emb.reshape(sub_alg.dim, alg.dim), alg)
