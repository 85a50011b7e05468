"""Quivers, paths, bisections and good/bad paths.

Paths are written right-to-left: ``Path(arrows=("b", "a"))`` is ``b*a``,
the path that traverses ``a`` first.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterator


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    source: str
    target: str
    arrows: tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def __str__(self) -> str:
        if not self.arrows:
            return "e_%s" % self.source
        return "*".join(self.arrows)

    def traversal(self) -> tuple[str, ...]:
        """Arrows in the order they are walked (first arrow first)."""
        return self.arrows[::-1]


class PathKind(enum.Enum):
    GOOD = "good"
    BAD = "bad"


@dataclass(frozen=True)
class Bisection:
    sigma: tuple[tuple[str, int], ...]
    tau: tuple[tuple[str, int], ...]

    @classmethod
    def from_maps(cls, sigma: dict[str, int], tau: dict[str, int]) -> "Bisection":
        return cls(tuple(sorted(sigma.items())), tuple(sorted(tau.items())))

    @property
    def s(self) -> dict[str, int]:
        return dict(self.sigma)

    @property
    def t(self) -> dict[str, int]:
        return dict(self.tau)

    def flipped(self) -> "Bisection":
        return Bisection(
            tuple((a, -v) for a, v in self.sigma), tuple((a, -v) for a, v in self.tau)
        )

    def is_bad_pair(self, a: str, x: str) -> bool:
        """Whether the length-two path ``a*x`` is bad (caller ensures composability)."""
        return dict(self.sigma)[a] != dict(self.tau)[x]


class QuiverError(ValueError):
    pass


class Quiver:
    """Finite quiver with ordered vertex and arrow lists."""

    def __init__(self, vertices, arrows):
        self.vertices: tuple[str, ...] = tuple(str(v) for v in vertices)
        self.arrows: tuple[Arrow, ...] = tuple(
            a if isinstance(a, Arrow) else Arrow(str(a[0]), str(a[1]), str(a[2])) for a in arrows
        )
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex id")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverError("duplicate arrow id")
        if set(names) & set(self.vertices):
            raise QuiverError("arrow ids must differ from vertex ids")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise QuiverError("arrow %s has an undeclared endpoint" % a.name)
        self._arrow = {a.name: a for a in self.arrows}
        self._arrow_index = {a.name: k for k, a in enumerate(self.arrows)}
        self._vertex_index = {v: k for k, v in enumerate(self.vertices)}

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Quiver)
            and self.vertices == other.vertices
            and self.arrows == other.arrows
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.arrows))

    def __repr__(self) -> str:
        return "Quiver(%d vertices, %d arrows)" % (len(self.vertices), len(self.arrows))

    def arrow(self, name: str) -> Arrow:
        try:
            return self._arrow[name]
        except KeyError:
            raise QuiverError("unknown arrow %r" % name) from None

    def has_arrow(self, name: str) -> bool:
        return name in self._arrow

    def arrow_index(self, name: str) -> int:
        return self._arrow_index[name]

    def vertex_index(self, v: str) -> int:
        return self._vertex_index[v]

    def out_arrows(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def in_arrows(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def trivial_path(self, v: str) -> Path:
        if v not in self._vertex_index:
            raise QuiverError("unknown vertex %r" % v)
        return Path(v, v, ())

    def path(self, *names: str) -> Path:
        """Path from arrow names written right-to-left, e.g. ``q.path("b", "a")``."""
        if not names:
            raise QuiverError("use trivial_path for zero paths")
        arrows = [self.arrow(n) for n in names]
        for left, right in zip(arrows, arrows[1:]):
            if left.source != right.target:
                raise QuiverError("path %s is not composable" % "*".join(names))
        return Path(arrows[-1].source, arrows[0].target, tuple(names))

    def compose(self, left: Path, right: Path) -> Path | None:
        """``left * right`` (``right`` first), or None when not composable."""
        if right.target != left.source:
            return None
        return Path(right.source, left.target, left.arrows + right.arrows)

    def sort_key(self, pth: Path) -> tuple:
        if pth.is_trivial:
            return (0, (self._vertex_index[pth.source],))
        return (pth.length, tuple(self._arrow_index[a] for a in pth.arrows))

    def paths(self, max_len: int, min_len: int = 0) -> list[Path]:
        """All paths with ``min_len <= length <= max_len`` in canonical order."""
        if max_len < 0:
            raise ValueError("max_len must be nonnegative")
        layer = [self.trivial_path(v) for v in self.vertices]
        out = list(layer) if min_len <= 0 else []
        for length in range(1, max_len + 1):
            nxt = []
            for pth in layer:
                for a in self.arrows:
                    if a.source == pth.target:
                        nxt.append(Path(pth.source, a.target, (a.name,) + pth.arrows))
            layer = nxt
            if length >= min_len:
                out.extend(layer)
            if not layer:
                break
        out.sort(key=self.sort_key)
        return out

    def is_biserial(self) -> bool:
        return all(
            len(self.out_arrows(v)) <= 2 and len(self.in_arrows(v)) <= 2 for v in self.vertices
        )

    def max_out_degree(self) -> int:
        return max((len(self.out_arrows(v)) for v in self.vertices), default=0)

    def max_in_degree(self) -> int:
        return max((len(self.in_arrows(v)) for v in self.vertices), default=0)

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, [Arrow(a.name, a.target, a.source) for a in self.arrows])

    def neighbors(self, v: str) -> list[str]:
        found = set()
        for a in self.arrows:
            if a.source == v and a.target != v:
                found.add(a.target)
            if a.target == v and a.source != v:
                found.add(a.source)
        return sorted(found, key=self.vertex_index)

    def to_dot(self, name: str = "Q") -> str:
        lines = ["digraph %s {" % name]
        for v in self.vertices:
            lines.append('  "%s";' % v)
        for a in self.arrows:
            lines.append('  "%s" -> "%s" [label="%s"];' % (a.source, a.target, a.name))
        lines.append("}")
        return "\n".join(lines) + "\n"

    def local_bisection_choices(self, v: str) -> tuple[list[dict], list[dict]]:
        """Admissible sigma values on arrows leaving ``v`` and tau values on arrows entering it."""
        def choices(arrows):
            names = [a.name for a in arrows]
            if len(names) > 2:
                return []
            if len(names) == 2:
                return [{names[0]: 1, names[1]: -1}, {names[0]: -1, names[1]: 1}]
            return [dict(zip(names, signs)) for signs in itertools.product((1, -1), repeat=len(names))]

        return choices(self.out_arrows(v)), choices(self.in_arrows(v))

    def iter_bisections(self) -> Iterator[Bisection]:
        per_vertex = [self.local_bisection_choices(v) for v in self.vertices]
        sig_opts = [s for s, _ in per_vertex]
        tau_opts = [t for _, t in per_vertex]
        if any(not s for s in sig_opts) or any(not t for t in tau_opts):
            return
        for sig_combo in itertools.product(*sig_opts):
            sigma = {}
            for d in sig_combo:
                sigma.update(d)
            for tau_combo in itertools.product(*tau_opts):
                tau = {}
                for d in tau_combo:
                    tau.update(d)
                yield Bisection.from_maps(sigma, tau)

    def enumerate_bisections(self) -> list[Bisection]:
        return list(self.iter_bisections())

    def is_bisection(self, b: Bisection) -> bool:
        sigma, tau = b.s, b.t
        names = {a.name for a in self.arrows}
        if set(sigma) != names or set(tau) != names:
            return False
        if any(v not in (1, -1) for v in itertools.chain(sigma.values(), tau.values())):
            return False
        for a, c in itertools.combinations(self.arrows, 2):
            if a.source == c.source and sigma[a.name] == sigma[c.name]:
                return False
            if a.target == c.target and tau[a.name] == tau[c.name]:
                return False
        return True

    def length_two_paths(self) -> list[tuple[str, str]]:
        """Composable pairs ``(a, x)`` meaning the path ``a*x``."""
        return [
            (a.name, x.name) for x in self.arrows for a in self.arrows if a.source == x.target
        ]


def classify_path(b: Bisection, pth: Path) -> PathKind:
    sigma, tau = b.s, b.t
    w = pth.arrows
    for k in range(len(w) - 1):
        if sigma[w[k]] != tau[w[k + 1]]:
            return PathKind.BAD
    return PathKind.GOOD


def is_good(b: Bisection, pth: Path) -> bool:
    return classify_path(b, pth) is PathKind.GOOD


def enumerate_paths(q: Quiver, max_len: int) -> list[Path]:
    return q.paths(max_len)


def is_biserial_quiver(q: Quiver) -> bool:
    return q.is_biserial()


def enumerate_bisections(q: Quiver) -> list[Bisection]:
    return q.enumerate_bisections()
