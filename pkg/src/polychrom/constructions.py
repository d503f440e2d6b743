"""Explicit polychromatic colorings of K_n.

Simply-ordered colorings are described by their block lengths. Quasi-ordered
colorings start from a seed coloring on ``z`` vertices whose vertices each
send their main color to everything outside the seed; the rest of the
vertices form an ordered tail with geometrically growing color classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import NoSimplyOrderedOptimum, PreconditionError
from .graph import BlockSequence, EdgeColoring, FamilySpec, Kind
from .numbers import (
    cycles_blocks_count,
    in_two_color_band,
    matchings_blocks_count,
)
from .structure import ordered_coloring


@dataclass(frozen=True)
class Construction:
    """A coloring together with the structure it was built from.

    ``blocks`` is the inherited coloring (seed vertices first) when the
    coloring is ordered or quasi-ordered, ``z`` the seed size.
    """

    coloring: EdgeColoring
    blocks: BlockSequence | None
    structure: str
    z: int = 0

    @property
    def k(self) -> int:
        return self.coloring.k

    @property
    def classes(self) -> list[int]:
        return self.blocks.lengths if self.blocks else []

    def to_json(self) -> dict:
        out = self.coloring.to_json()
        out["structure"] = self.structure
        out["z"] = self.z
        out["blocks"] = [list(b) for b in self.blocks.blocks] if self.blocks else None
        return out


# -- simply-ordered ------------------------------------------------------------------


def matchings_lengths(n: int, q: int) -> list[int]:
    k = matchings_blocks_count(n, q)
    sizes = [(q + 1) << i for i in range(k - 1)]
    return sizes + [n - sum(sizes)]


def cycles_lengths(n: int, q: int) -> list[int]:
    k = cycles_blocks_count(n, q)
    sizes = [q + 1] + [(q << i) + (1 << (i - 1)) for i in range(1, k - 1)]
    sizes = sizes[: k - 1]
    return sizes + [n - sum(sizes)]


def construct_simply_ordered(family: FamilySpec, n: int) -> Construction:
    """Optimal simply-ordered coloring for matchings, and for cycles or
    2-regular subgraphs with q >= 2."""
    family.validate(n)
    q = family.q
    if family.kind is Kind.MATCHINGS:
        lengths = matchings_lengths(n, q)
    elif family.kind is Kind.TWO_REGULAR and q >= 2:
        lengths = matchings_lengths(n, q)
    elif family.kind is Kind.CYCLES and q >= 2:
        if in_two_color_band(n, q) or (q == 2 and n == 5):
            raise NoSimplyOrderedOptimum(
                f"{family.label} on K_{n}: the optimum uses 2 colors but no simply-ordered coloring is polychromatic with 2"
            )
        lengths = cycles_lengths(n, q)
    else:
        raise PreconditionError(f"no simply-ordered construction for {family.label}; use construct_quasi")
    blocks = BlockSequence.from_lengths(lengths)
    return Construction(ordered_coloring(blocks.sequence()), blocks, "simply-ordered")


# -- seeds -------------------------------------------------------------------------


@dataclass(frozen=True)
class SeedColoring:
    """A k-colored K_z split into parts S_1..S_k of size q+1.

    Vertices are 0..z-1 with S_j = {(j-1)(q+1), ..., j(q+1)-1}. Every vertex
    of S_j has main color j; ``internal`` colors all pairs inside the seed.
    """

    r: int
    q: int
    k: int
    internal: tuple[tuple[int, int, int], ...]

    @property
    def z(self) -> int:
        return self.k * (self.q + 1)

    @property
    def parts(self) -> list[list[int]]:
        size = self.q + 1
        return [list(range(j * size, (j + 1) * size)) for j in range(self.k)]

    def main(self, v: int) -> int:
        return v // (self.q + 1) + 1

    def color(self, u: int, v: int) -> int:
        return self._table[(min(u, v), max(u, v))]

    @property
    def _table(self) -> dict[tuple[int, int], int]:
        return {(u, v): c for u, v, c in self.internal}

    def off_main_degree(self, v: int) -> int:
        table = self._table
        m = self.main(v)
        return sum(1 for w in range(self.z) if w != v and table[(min(v, w), max(v, w))] != m)

    def as_coloring(self) -> EdgeColoring:
        return EdgeColoring.from_function(self.z, self.color)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "q": self.q,
            "k": self.k,
            "z": self.z,
            "parts": self.parts,
            "edges": [list(e) for e in self.internal],
        }


def seed_parameters(r: int, q: int) -> tuple[int, int]:
    if r < 1 or q < 0:
        raise PreconditionError("need r >= 1 and q >= 0")
    if q > 2 * r - 3:
        raise PreconditionError(f"q={q} > 2r-3: every seed would have a single color")
    k = (2 * r - 2) // (q + 1) + 1
    return k, k * (q + 1)


def build_seed(r: int, q: int) -> SeedColoring:
    """The circulant seed for r-regular families with surplus q.

    On Z_z with parts the residue classes mod k, the edge {x, x+d} for
    0 < d < z/2 gets the main color of x (of x+1 when z = 3); for d = z/2
    the lower endpoint wins. Each vertex keeps its main color on the edges
    on one side and loses it on the other, so off-main degrees are balanced.
    Vertices are then renumbered part by part.
    """
    k, z = seed_parameters(r, q)
    owner: dict[tuple[int, int], int] = {}
    for x in range(z):
        for d in range(1, (z + 1) // 2):
            # the 3-vertex seed follows the cyclic rule z_i z_{i+1} -> main(z_{i+1})
            owner[(x, (x + d) % z)] = (x + d) % z if z == 3 else x
        if z % 2 == 0 and x < z // 2:
            owner[(x, x + z // 2)] = x
    # renumber: part x mod k, then position inside the part
    new = {x: (x % k) * (q + 1) + x // k for x in range(z)}
    table = {}
    for (a, b), x in owner.items():
        u, v = sorted((new[a], new[b]))
        table[(u, v)] = x % k + 1
    internal = tuple((u, v, table[(u, v)]) for u, v in combinations(range(z), 2))
    return SeedColoring(r, q, k, internal)


def tail_classes(z: int, q: int, size: int, kind: Kind) -> list[int]:
    """Most tail classes that fit in ``size`` vertices after a seed of ``z``.

    2-regular rule: each class exceeds everything before it by at least q+1.
    Cycle rule: by at least q, with one more vertex in the final class.
    The final class takes whatever is left; an empty list means the tail
    cannot host a class of its own.
    """
    if kind not in (Kind.TWO_REGULAR, Kind.CYCLES):
        raise PreconditionError("tail rules exist for 2-regular (R) and cycle (C) kinds")
    extra = q + 1 if kind is Kind.TWO_REGULAR else q
    last_bonus = 0 if kind is Kind.TWO_REGULAR else 1
    best: list[int] = []
    sizes: list[int] = []
    total = z
    while True:
        need_last = total + extra + last_bonus
        if sum(sizes) + need_last <= size:
            best = sizes + [size - sum(sizes)]
        else:
            break
        step = total + extra
        sizes.append(step)
        total += step
    return best


def extend_seed(seed: SeedColoring, n: int, kind: Kind) -> Construction:
    """Quasi-simply-ordered coloring of K_n around ``seed``.

    Seed vertices keep their main color toward the tail. Tail classes get
    fresh colors k+1, k+2, ...; if none fits, the tail joins the last seed
    color.
    """
    z = seed.z
    if n < z:
        raise PreconditionError(f"n={n} is smaller than the seed ({z} vertices)")
    classes = tail_classes(z, seed.q, n - z, kind)
    if classes:
        tail = [seed.k + i + 1 for i, m in enumerate(classes) for _ in range(m)]
    else:
        tail = [seed.k] * (n - z)
    seed_table = seed._table

    def fn(a: int, b: int) -> int:
        if b < z:
            return seed_table[(a, b)]
        if a < z:
            return seed.main(a)
        return tail[a - z]

    coloring = EdgeColoring.from_function(n, fn)
    seq = [seed.main(v) for v in range(z)] + tail
    return Construction(coloring, BlockSequence.from_sequence(seq), "quasi-simply-ordered", z)


def construct_quasi(family: FamilySpec, n: int) -> Construction:
    """Optimal colorings for R_0, C_0 (3-vertex seed) and R_1, C_1 (4-vertex seed)."""
    if family.kind not in (Kind.TWO_REGULAR, Kind.CYCLES) or family.q not in (0, 1):
        raise PreconditionError(f"quasi constructions cover R_0, C_0, R_1, C_1, not {family.label}")
    family.validate(n)
    if family.kind is Kind.CYCLES and family.q == 1 and n == 4:
        raise PreconditionError(
            "C_1 on K_4: the best quasi-ordered coloring has 2 colors but 3 are possible; use construct()"
        )
    seed = build_seed(2, family.q)
    return extend_seed(seed, n, family.kind)


# -- two-colorings without monochromatic cycles -----------------------------------------------


def construct_bipartite_witness(s: int, n: int) -> Construction:
    """Two-coloring of K_n with no monochromatic s-cycle.

    Color 1 is a complete bipartite graph between the first ``a`` vertices and
    the rest (a = s-1 for odd s, s/2-1 for even s); color 2 is the two
    cliques left over.
    """
    if s < 5:
        raise PreconditionError("bipartite witnesses need s >= 5")
    limit = 2 * s - 2 if s % 2 else 3 * s // 2 - 2
    if not s <= n <= limit:
        raise PreconditionError(f"no witness guaranteed for s={s}, n={n} (need {s} <= n <= {limit})")
    a = s - 1 if s % 2 else s // 2 - 1
    coloring = EdgeColoring.from_function(n, lambda u, v: 1 if (u < a) != (v < a) else 2)
    return Construction(coloring, None, "bipartite")


def construct_pentagons() -> Construction:
    """K_5 as two edge-disjoint 5-cycles, one per color: no monochromatic triangle."""
    coloring = EdgeColoring.from_function(5, lambda u, v: 1 if (v - u) % 5 in (1, 4) else 2)
    return Construction(coloring, None, "two-pentagons")


def construct_k4_factorization() -> Construction:
    """Each perfect matching of K_4 in its own color: every triangle is rainbow."""
    colors = {(0, 1): 1, (2, 3): 1, (0, 2): 2, (1, 3): 2, (0, 3): 3, (1, 2): 3}
    coloring = EdgeColoring.from_function(4, lambda u, v: colors[(u, v)])
    return Construction(coloring, None, "one-factorization")


def construct(family: FamilySpec, n: int) -> Construction:
    """An optimal polychromatic coloring for matchings, cycles or 2-regular subgraphs."""
    family.validate(n)
    q = family.q
    if family.kind is Kind.MATCHINGS:
        return construct_simply_ordered(family, n)
    if family.kind is Kind.TWO_REGULAR:
        return construct_quasi(family, n) if q <= 1 else construct_simply_ordered(family, n)
    if family.kind is Kind.CYCLES:
        if q == 1 and n == 4:
            return construct_k4_factorization()
        if q <= 1:
            return construct_quasi(family, n)
        if q == 2 and n == 5:
            return construct_pentagons()
        if in_two_color_band(n, q):
            return construct_bipartite_witness(n - q, n)
        return construct_simply_ordered(family, n)
    raise PreconditionError(f"no optimal construction known for {family.label}")
