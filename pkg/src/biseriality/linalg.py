"""Exact dense linear algebra over the prime field GF(p).

Matrices are plain ``numpy`` int64 arrays with entries in ``[0, p)``.  Row
vectors are the convention throughout: a subspace is the row space of its
basis, and :class:`Subspace` always stores that basis in reduced row-echelon
form so two equal subspaces compare equal bytewise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

DEFAULT_PRIME = 3


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def inverse(x: int, p: int) -> int:
    x %= p
    if x == 0:
        raise ZeroDivisionError("0 has no inverse in GF(%d)" % p)
    return pow(x, p - 2, p)


def as_matrix(m, p: int, cols: int | None = None) -> np.ndarray:
    a = np.array(m, dtype=np.int64)
    if a.ndim == 1:
        if a.size == 0 and cols is not None:
            a = a.reshape(0, cols)
        else:
            a = a.reshape(1, -1)
    return a % p


def matmul_mod(a, b, p: int) -> np.ndarray:
    """``a @ b mod p``; routed through float BLAS while the sums stay exact."""
    a = np.asarray(a)
    b = np.asarray(b)
    inner = a.shape[-1] if a.ndim else 1
    if inner * (p - 1) ** 2 < 2**52:
        out = np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
        return out % p
    return (a.astype(np.int64) @ b.astype(np.int64)) % p


def rref(m, p: int) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row-echelon form of ``m`` over GF(p).

    Returns ``(r, rank, pivots)`` where ``r`` has the shape of ``m`` (zero rows
    at the bottom) and ``pivots`` lists the pivot column of each nonzero row.
    """
    a = np.array(m, dtype=np.int64) % p
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d matrix")
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = (a[r] * inverse(int(a[r, c]), p)) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a, r, pivots


def rank(m, p: int) -> int:
    a = np.asarray(m)
    if a.size == 0:
        return 0
    return rref(a, p)[1]


def nullspace(m, p: int) -> np.ndarray:
    """Rows spanning ``{x : m @ x = 0}``."""
    a = np.asarray(m, dtype=np.int64)
    ncols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    r, rk, pivots = rref(a, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for row, pc in enumerate(pivots):
            basis[k, pc] = (-r[row, f]) % p
    return basis


def solve(a, b, p: int) -> np.ndarray | None:
    """Some ``x`` with ``a @ x == b`` over GF(p), or ``None`` if inconsistent."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    if a.ndim != 2 or a.shape[0] != b.shape[0]:
        raise ValueError(
            "dimension mismatch: %s matrix against length-%d vector" % (a.shape, b.shape[0])
        )
    nrows, ncols = a.shape
    aug = np.concatenate([a % p, (b % p).reshape(-1, 1)], axis=1)
    r, rk, pivots = rref(aug, p)
    if pivots and pivots[-1] == ncols:
        return None
    x = np.zeros(ncols, dtype=np.int64)
    for row, pc in enumerate(pivots):
        x[pc] = r[row, ncols]
    return x


@dataclass(frozen=True, eq=False)
class Subspace:
    """Row space of ``basis`` inside GF(p)^ambient, basis kept in canonical rref."""

    ambient: int
    p: int
    basis: np.ndarray
    pivots: tuple[int, ...] = field(default=())

    @classmethod
    def span(cls, vectors, ambient: int, p: int) -> "Subspace":
        a = as_matrix(vectors, p, cols=ambient)
        if a.shape[0] == 0:
            return cls.zero(ambient, p)
        if a.shape[1] != ambient:
            raise ValueError("ambient mismatch: %d vs %d" % (a.shape[1], ambient))
        r, rk, pivots = rref(a, p)
        return cls(ambient, p, r[:rk].copy(), tuple(pivots))

    @classmethod
    def zero(cls, ambient: int, p: int) -> "Subspace":
        return cls(ambient, p, np.zeros((0, ambient), dtype=np.int64), ())

    @classmethod
    def full(cls, ambient: int, p: int) -> "Subspace":
        return cls(ambient, p, np.eye(ambient, dtype=np.int64), tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def key(self) -> tuple:
        return (self.ambient, self.p, self.basis.tobytes())

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return "Subspace(dim=%d, ambient=%d, p=%d)" % (self.dim, self.ambient, self.p)

    def _check(self, other: "Subspace") -> None:
        if other.ambient != self.ambient or other.p != self.p:
            raise ValueError("ambient mismatch")

    def reduce(self, vecs) -> np.ndarray:
        """Remainder of ``vecs`` (a vector or rows) after eliminating pivots."""
        v = np.asarray(vecs, dtype=np.int64) % self.p
        if self.dim == 0:
            return v
        piv = list(self.pivots)
        return (v - matmul_mod(v[..., piv], self.basis, self.p)) % self.p

    def contains(self, vec) -> bool:
        v = np.asarray(vec, dtype=np.int64)
        if v.shape[-1] != self.ambient:
            raise ValueError("ambient mismatch")
        return not self.reduce(v).any()

    def contains_space(self, other: "Subspace") -> bool:
        self._check(other)
        return other.dim == 0 or not self.reduce(other.basis).any()

    def coordinates(self, vec) -> np.ndarray:
        """Coordinates of a contained vector with respect to ``basis``."""
        v = np.asarray(vec, dtype=np.int64) % self.p
        if self.reduce(v).any():
            raise ValueError("vector not in subspace")
        return v[..., list(self.pivots)]

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if other.dim == 0:
            return self
        if self.dim == 0:
            return other
        return self.add_vectors(other.basis)

    def add_vectors(self, vecs) -> "Subspace":
        v = as_matrix(vecs, self.p, cols=self.ambient)
        if v.shape[0] == 0:
            return self
        if self.dim == 0:
            return Subspace.span(v, self.ambient, self.p)
        rem = self.reduce(v)
        rem = rem[rem.any(axis=1)]
        if rem.shape[0] == 0:
            return self
        r, rk, newpiv = rref(rem, self.p)
        new = r[:rk]
        # new pivots are disjoint from ours; clear them from the old rows
        old = (self.basis - matmul_mod(self.basis[:, newpiv], new, self.p)) % self.p
        rows = np.vstack([old, new])
        piv = list(self.pivots) + list(newpiv)
        order = np.argsort(piv, kind="stable")
        return Subspace(
            self.ambient, self.p, rows[order].copy(), tuple(int(piv[k]) for k in order)
        )

    def annihilator(self) -> np.ndarray:
        """Rows ``c`` with ``self == {x : c @ x = 0}``."""
        if self.dim == 0:
            return np.eye(self.ambient, dtype=np.int64)
        return nullspace(self.basis, self.p)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient, self.p)
        eqs = np.vstack([self.annihilator(), other.annihilator()])
        return Subspace.span(nullspace(eqs, self.p), self.ambient, self.p)

    __and__ = intersect

    def preimage(self, f: np.ndarray) -> "Subspace":
        """``{x : f @ x in self}`` for a matrix ``f`` (self lives in the codomain)."""
        f = np.asarray(f, dtype=np.int64)
        eqs = matmul_mod(self.annihilator(), f, self.p)
        return Subspace.span(nullspace(eqs, self.p), f.shape[1], self.p)

    def image(self, f: np.ndarray) -> "Subspace":
        f = np.asarray(f, dtype=np.int64)
        if self.dim == 0:
            return Subspace.zero(f.shape[0], self.p)
        return Subspace.span(matmul_mod(self.basis, f.T, self.p), f.shape[0], self.p)


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    return u + v


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    return u.intersect(v)


def quotient_basis_complement(u: Subspace, w: Subspace) -> np.ndarray:
    """Vectors of ``u`` that extend a basis of ``w`` (which must lie in ``u``) to ``u``."""
    u._check(w)
    if not u.contains_space(w):
        raise ValueError("w is not contained in u")
    out = []
    cur = w
    for row in u.basis:
        if not cur.contains(row):
            out.append(row)
            cur = cur.add_vectors(row)
    return np.array(out, dtype=np.int64).reshape(len(out), u.ambient)


def projective_points(dim: int, p: int):
    """One representative per line of GF(p)^dim (first nonzero entry equal to 1)."""
    for lead in range(dim):
        tail = dim - lead - 1
        for k in range(p**tail):
            v = np.zeros(dim, dtype=np.int64)
            v[lead] = 1
            for t in range(tail):
                k, digit = divmod(k, p)
                v[lead + 1 + t] = digit
            yield v


def count_projective_points(dim: int, p: int) -> int:
    return (p**dim - 1) // (p - 1) if dim > 0 else 0
