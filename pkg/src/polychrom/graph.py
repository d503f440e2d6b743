"""Colored complete graphs, subgraphs, subgraph families and their JSON forms.

Vertices are ``0..n-1``. Colors are the dense range ``1..k``.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import ParseError, PreconditionError

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    if u == v:
        raise PreconditionError(f"loop edge ({u}, {v})")
    return (u, v) if u < v else (v, u)


def pair_index(n: int, u: int, v: int) -> int:
    """Position of the pair ``u < v`` in lexicographic order of all pairs."""
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class EdgeColoring:
    """An edge coloring of K_n, stored upper-triangularly in pair order."""

    n: int
    colors: tuple[int, ...]
    k: int = field(init=False)

    def __post_init__(self) -> None:
        n = self.n
        if n < 2:
            raise PreconditionError("a coloring needs at least 2 vertices")
        if len(self.colors) != n * (n - 1) // 2:
            raise PreconditionError(
                f"expected {n * (n - 1) // 2} edge colors, got {len(self.colors)}"
            )
        used = set(self.colors)
        k = max(used)
        if min(used) < 1 or used != set(range(1, k + 1)):
            raise PreconditionError(f"colors must be exactly 1..k, got {sorted(used)}")
        object.__setattr__(self, "k", k)

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int, int], int]) -> "EdgeColoring":
        """Build from ``fn(u, v)`` evaluated on every pair ``u < v``."""
        return cls(n, tuple(fn(u, v) for u, v in combinations(range(n), 2)))

    @classmethod
    def from_edges(cls, n: int, triples: Iterable[Sequence[int]]) -> "EdgeColoring":
        table: dict[Edge, int] = {}
        for u, v, c in triples:
            e = norm_edge(u, v)
            if e in table:
                raise PreconditionError(f"edge {e} colored twice")
            table[e] = c
        missing = [e for e in combinations(range(n), 2) if e not in table]
        if missing or len(table) != n * (n - 1) // 2:
            raise PreconditionError(f"coloring is not complete; missing {missing[:3]}")
        return cls(n, tuple(table[e] for e in combinations(range(n), 2)))

    def color(self, u: int, v: int) -> int:
        if u == v:
            raise PreconditionError("no loops in K_n")
        if u > v:
            u, v = v, u
        return self.colors[pair_index(self.n, u, v)]

    def edges(self) -> Iterator[tuple[int, int, int]]:
        for (u, v), c in zip(combinations(range(self.n), 2), self.colors):
            yield u, v, c

    @cached_property
    def color_adjacency(self) -> dict[int, tuple[int, ...]]:
        """Per color, the adjacency bitmask of every vertex in that color class."""
        adj = {c: [0] * self.n for c in range(1, self.k + 1)}
        for u, v, c in self.edges():
            adj[c][u] |= 1 << v
            adj[c][v] |= 1 << u
        return {c: tuple(rows) for c, rows in adj.items()}

    def avoiding_adjacency(self, banned: int) -> tuple[int, ...]:
        """Adjacency bitmasks of K_n with every edge of color ``banned`` deleted."""
        full = (1 << self.n) - 1
        rows = self.color_adjacency.get(banned, (0,) * self.n)
        return tuple(full & ~(1 << v) & ~rows[v] for v in range(self.n))

    def relabel(self, perm: Sequence[int]) -> "EdgeColoring":
        """Return the coloring where vertex ``v`` is renamed ``perm[v]``."""
        inv = [0] * self.n
        for v, pv in enumerate(perm):
            inv[pv] = v
        return EdgeColoring.from_function(self.n, lambda a, b: self.color(inv[a], inv[b]))

    def recolor(self, mapping: Mapping[int, int]) -> "EdgeColoring":
        return EdgeColoring(self.n, tuple(mapping[c] for c in self.colors))

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "edges": [list(t) for t in self.edges()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "EdgeColoring":
        return coloring_from_json(data)


@dataclass(frozen=True)
class Subgraph:
    """A set of edges of K_n; its vertex set is implied by the edges."""

    edges: frozenset[Edge]

    @classmethod
    def of(cls, pairs: Iterable[Sequence[int]]) -> "Subgraph":
        seen: set[Edge] = set()
        for u, v in pairs:
            e = norm_edge(u, v)
            if e in seen:
                raise PreconditionError(f"duplicate edge {e}")
            seen.add(e)
        return cls(frozenset(seen))

    @classmethod
    def cycle(cls, vertices: Sequence[int]) -> "Subgraph":
        m = len(vertices)
        return cls.of((vertices[i], vertices[(i + 1) % m]) for i in range(m))

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)

    def degrees(self) -> dict[int, int]:
        deg: dict[int, int] = {}
        for u, v in self.edges:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        return deg

    def is_connected(self) -> bool:
        verts = self.vertices
        if not verts:
            return True
        nbrs: dict[int, list[int]] = {v: [] for v in verts}
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        start = min(verts)
        seen = {start}
        stack = [start]
        while stack:
            for w in nbrs[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(verts)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def to_json(self) -> dict:
        return {"edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Subgraph":
        try:
            return cls.of((int(u), int(v)) for u, v in data["edges"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad subgraph JSON: {exc}") from exc

    def __len__(self) -> int:
        return len(self.edges)


class Kind(enum.Enum):
    MATCHINGS = "f"
    CYCLES = "c"
    TWO_REGULAR = "r"
    R_REGULAR = "rr"
    CONNECTED_R_REGULAR = "crr"


@dataclass(frozen=True)
class FamilySpec:
    """Which subgraphs of K_n must see every color.

    ``q`` is the number of vertices a member may leave uncovered (exactly ``q``
    for matchings, cycles and r-regular kinds; at most ``q`` for 2-regular).
    """

    kind: Kind
    q: int = 0
    r: int | None = None

    def __post_init__(self) -> None:
        if self.q < 0:
            raise PreconditionError("q must be nonnegative")
        needs_r = self.kind in (Kind.R_REGULAR, Kind.CONNECTED_R_REGULAR)
        if needs_r and (self.r is None or self.r < 1):
            raise PreconditionError(f"{self.kind.name} needs a degree r >= 1")
        if self.kind is Kind.CONNECTED_R_REGULAR and self.r is not None and self.r < 2:
            raise PreconditionError("connected r-regular families need r >= 2")
        if not needs_r and self.r is not None:
            object.__setattr__(self, "r", None)

    @classmethod
    def matchings(cls, q: int = 0) -> "FamilySpec":
        return cls(Kind.MATCHINGS, q)

    @classmethod
    def cycles(cls, q: int = 0) -> "FamilySpec":
        return cls(Kind.CYCLES, q)

    @classmethod
    def two_regular(cls, q: int = 0) -> "FamilySpec":
        return cls(Kind.TWO_REGULAR, q)

    def validate(self, n: int) -> None:
        """Raise PreconditionError unless the family is well defined on K_n."""
        m = n - self.q
        kind = self.kind
        if kind is Kind.MATCHINGS:
            if m <= 0 or m % 2:
                raise PreconditionError(f"matchings need n-q positive and even (n={n}, q={self.q})")
        elif kind in (Kind.CYCLES, Kind.TWO_REGULAR):
            if m < 3:
                raise PreconditionError(f"{kind.name.lower()} need n-q >= 3 (n={n}, q={self.q})")
        else:
            r = self.r
            assert r is not None
            if m < r + 1:
                raise PreconditionError(f"r-regular members need n-q >= r+1 (n={n}, q={self.q}, r={r})")
            if r % 2 and m % 2:
                raise PreconditionError("odd r needs n-q even")

    def is_valid(self, n: int) -> bool:
        try:
            self.validate(n)
        except PreconditionError:
            return False
        return True

    @property
    def label(self) -> str:
        base = {
            Kind.MATCHINGS: "F",
            Kind.CYCLES: "C",
            Kind.TWO_REGULAR: "R",
            Kind.R_REGULAR: "RR",
            Kind.CONNECTED_R_REGULAR: "CRR",
        }[self.kind]
        suffix = f"_{self.q}" if self.r is None else f"(r={self.r}, q={self.q})"
        return base + suffix

    def to_json(self) -> dict:
        out = {"kind": self.kind.value, "q": self.q}
        if self.r is not None:
            out["r"] = self.r
        return out

    """Decide whether ``h`` is a member of ``family`` inside K_n."""
def family_member(family: FamilySpec, n: int, h: Subgraph) -> bool:
    """Decide whether ``h`` belongs to ``family``'s family inside K_n."""
    family.validate(n)
    verts = h.vertices
    if any(v < 0 or v >= n for v in verts):
        raise PreconditionError(f"subgraph uses vertices outside 0..{n - 1}")
    if not h.edges:
        return False
    deg = h.degrees()
    m = n - family.q
    kind = family.kind
    if kind is Kind.MATCHINGS:
        return all(d == 1 for d in deg.values()) and len(verts) == m
    if kind is Kind.CYCLES:
        return all(d == 2 for d in deg.values()) and len(verts) == m and h.is_connected()
    if kind is Kind.TWO_REGULAR:
        return all(d == 2 for d in deg.values()) and len(verts) >= m
    regular = all(d == family.r for d in deg.values()) and len(verts) == m
    if kind is Kind.CONNECTED_R_REGULAR:
        return regular and h.is_connected()
    return regular


def colors_on(coloring: EdgeColoring, h: Subgraph) -> set[int]:
    return {coloring.color(u, v) for u, v in h.edges}


@dataclass(frozen=True)
class Verdict:
    """Outcome of a polychromatic check, with one avoiding member per failing color."""

    family: FamilySpec
    k: int
    missing: tuple[tuple[int, Subgraph], ...] = ()

    @property
    def polychromatic(self) -> bool:
        return not self.missing

    def to_json(self) -> dict:
        return {
            "polychromatic": self.polychromatic,
            "family": self.family.to_json(),
            "k": self.k,
            "missing": [
                {"color": c, "witness": w.to_json()} for c, w in self.missing
            ],
        }


@dataclass(frozen=True)
class BlockSequence:
    """An inherited vertex coloring written as runs of ``(color, length)``."""

    blocks: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        prev = None
        for color, length in self.blocks:
            if length < 1:
                raise PreconditionError("block lengths must be >= 1")
            if color == prev:
                raise PreconditionError("adjacent blocks must have different colors")
            prev = color

    @classmethod
    def from_sequence(cls, seq: Sequence[int]) -> "BlockSequence":
        blocks: list[tuple[int, int]] = []
        for c in seq:
            if blocks and blocks[-1][0] == c:
                blocks[-1] = (c, blocks[-1][1] + 1)
            else:
                blocks.append((c, 1))
        return cls(tuple(blocks))

    @classmethod
    def from_lengths(cls, lengths: Sequence[int]) -> "BlockSequence":
        """Blocks colored 1, 2, ... in order."""
        return cls(tuple((i + 1, m) for i, m in enumerate(lengths)))

    @property
    def n(self) -> int:
        return sum(m for _, m in self.blocks)

    @property
    def lengths(self) -> list[int]:
        return [m for _, m in self.blocks]

    def sequence(self) -> list[int]:
        return [c for c, m in self.blocks for _ in range(m)]

    def is_simple(self) -> bool:
        colors = [c for c, _ in self.blocks]
        return len(colors) == len(set(colors))

    def last_two_agree(self) -> bool:
        return self.n < 2 or self.blocks[-1][1] >= 2

    def to_json(self) -> dict:
        return {"blocks": [list(b) for b in self.blocks]}


def coloring_from_json(data: Mapping) -> EdgeColoring:
    """Parse the canonical ``{"n", "k", "edges"}`` form, rejecting anything off-format."""
    try:
        n = data["n"]
        k = data["k"]
        raw = data["edges"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"coloring JSON needs n, k and edges: {exc}") from exc
    if not isinstance(n, int) or not isinstance(k, int) or n < 2:
        raise ParseError("n and k must be integers with n >= 2")
    table: dict[Edge, int] = {}
    for item in raw:
        if not isinstance(item, (list, tuple)) or len(item) != 3:
            raise ParseError(f"edge entries are [u, v, c], got {item!r}")
        u, v, c = item
        if not all(isinstance(x, int) for x in (u, v, c)):
            raise ParseError(f"non-integer edge entry {item!r}")
        if not (0 <= u < v < n):
            raise ParseError(f"edge {item!r} needs 0 <= u < v < n")
        if not (1 <= c <= k):
            raise ParseError(f"color {c} outside 1..{k}")
        if (u, v) in table:
            raise ParseError(f"edge ({u}, {v}) listed twice")
        table[(u, v)] = c
    if len(table) != n * (n - 1) // 2:
        raise ParseError(f"expected {n * (n - 1) // 2} edges, got {len(table)}")
    if set(table.values()) != set(range(1, k + 1)):
        raise ParseError("colors must use every value in 1..k")
    return EdgeColoring(n, tuple(table[e] for e in combinations(range(n), 2)))


def dumps(obj: dict) -> str:
    return json.dumps(obj, separators=(",", ":"))
