"""Ordered and quasi-ordered colorings: building them, recognizing them, and
deciding polychromaticity from the inherited vertex coloring alone.

An ordered coloring is fixed by a vertex order and a color per position: the
edge between positions ``i < m`` gets the color of position ``i``. A
quasi-ordered coloring puts a seed ``Z`` of 3 or 4 vertices first; every seed
vertex sends its main color to the rest of the graph and has exactly one
off-main edge inside the seed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable, Sequence

from .errors import PreconditionError, ScopeError
from .graph import BlockSequence, EdgeColoring, FamilySpec, Kind

ColorFn = Callable[[int, int], int]


class OrderKind(enum.Enum):
    UNORDERED = "unordered"
    Z_QUASI_ORDERED = "z-quasi-ordered"
    QUASI_ORDERED = "quasi-ordered"
    QUASI_SIMPLY_ORDERED = "quasi-simply-ordered"
    ORDERED = "ordered"
    SIMPLY_ORDERED = "simply-ordered"


@dataclass(frozen=True)
class OrderAnalysis:
    """Classification of a coloring plus the order that certifies it.

    ``order`` lists vertices left to right (seed first when quasi), and
    ``inherited`` is the inherited vertex coloring along that order.
    """

    kind: OrderKind
    n: int
    order: tuple[int, ...] | None = None
    inherited: BlockSequence | None = None
    z: tuple[int, ...] = ()
    mains: tuple[int, ...] = ()
    seed_edges: tuple[tuple[int, int, int], ...] = ()  # (pos, pos, color) inside Z

    @property
    def is_quasi(self) -> bool:
        return bool(self.z)

    @property
    def z_edge_colors(self) -> frozenset[int]:
        # every seed edge carries the main color of one of its ends, and every
        # main color shows up on some seed edge
        return frozenset(self.mains)

    @property
    def has_order(self) -> bool:
        return self.order is not None

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "order": list(self.order) if self.order is not None else None,
            "blocks": [list(b) for b in self.inherited.blocks] if self.inherited else None,
            "z": list(self.z),
            "mains": list(self.mains),
        }


# -- builders ----------------------------------------------------------------


def ordered_coloring(seq: Sequence[int], order: Sequence[int] | None = None) -> EdgeColoring:
    """The ordered coloring of K_n whose inherited colors are ``seq``.

    The color of the final position is never used.
    """
    n = len(seq)
    pos = list(range(n)) if order is None else _positions(order)
    return EdgeColoring.from_function(n, lambda a, b: seq[min(pos[a], pos[b])])


def seed3_color(mains: Sequence[int]) -> ColorFn:
    """Seed edges for |Z| = 3: edge (z_i, z_{i+1}) takes the main color of z_{i+1}."""

    def fn(a: int, b: int) -> int:
        if (a + 1) % 3 == b:
            return mains[b]
        return mains[a]

    return fn


def seed4_color(mains: Sequence[int]) -> ColorFn:
    """Seed edges for |Z| = 4, positions u, v, y, z with mains i, i, j, j.

    uv, uy, vz get i; yz, yv, zu get j.
    """
    i, j = mains[0], mains[2]
    table = {(0, 1): i, (0, 2): i, (1, 3): i, (2, 3): j, (1, 2): j, (0, 3): j}

    def fn(a: int, b: int) -> int:
        return table[(min(a, b), max(a, b))]

    return fn


def quasi_coloring(
    z_color: ColorFn,
    mains: Sequence[int],
    tail: Sequence[int],
    order: Sequence[int] | None = None,
) -> EdgeColoring:
    """Seed on positions ``0..z-1`` followed by an ordered tail.

    ``z_color`` colors seed-internal edges by position; ``tail`` is the
    inherited color sequence of the tail (its last entry is unused).
    """
    z = len(mains)
    n = z + len(tail)
    pos = list(range(n)) if order is None else _positions(order)

    def fn(a: int, b: int) -> int:
        pa, pb = sorted((pos[a], pos[b]))
        if pb < z:
            return z_color(pa, pb)
        if pa < z:
            return mains[pa]
        return tail[pa - z]

    return EdgeColoring.from_function(n, fn)


def standard_quasi(mains: Sequence[int], tail: Sequence[int]) -> EdgeColoring:
    """Quasi coloring with the canonical 3- or 4-vertex seed."""
    if len(mains) == 3:
        return quasi_coloring(seed3_color(mains), mains, tail)
    if len(mains) == 4:
        return quasi_coloring(seed4_color(mains), mains, tail)
    raise PreconditionError("seeds have 3 or 4 vertices")


def _positions(order: Sequence[int]) -> list[int]:
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    return pos


# -- detection -----------------------------------------------------------------


def greedy_order(col: ColorFn, verts: Sequence[int]) -> tuple[list[int], list[int]] | None:
    """Peel off vertices whose edges to the rest are monochromatic.

    Returns the order and inherited colors, or None if peeling gets stuck.
    Vertices that can be peeled together always share a color, so taking the
    lowest index never changes the inherited sequence.
    """
    remaining = sorted(verts)
    order: list[int] = []
    seq: list[int] = []
    while len(remaining) > 2:
        for v in remaining:
            others = [w for w in remaining if w != v]
            c = col(v, others[0])
            if all(col(v, w) == c for w in others[1:]):
                order.append(v)
                seq.append(c)
                remaining.remove(v)
                break
        else:
            return None
    if len(remaining) == 2:
        a, b = remaining
        c = col(a, b)
        order += [a, b]
        seq += [c, c]
    elif remaining:
        order.append(remaining[0])
        seq.append(0)  # lone vertex: no edges, color filled in by caller
    return order, seq


def _main_candidates(coloring: EdgeColoring, v: int) -> list[int]:
    n = coloring.n
    counts: dict[int, int] = {}
    for w in range(n):
        if w != v:
            c = coloring.color(v, w)
            counts[c] = counts.get(c, 0) + 1
    if len(counts) != 2:
        return []
    return sorted(c for c, m in counts.items() if m == n - 2)


def find_seed(coloring: EdgeColoring) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Locate a seed Z (3 or 4 vertices) and the main color of each seed vertex.

    The seed is returned in inherited order: for |Z| = 4 the pair holding the
    smaller main color comes first, each pair by vertex index.
    """
    n = coloring.n
    cands = {v: _main_candidates(coloring, v) for v in range(n)}
    cands = {v: m for v, m in cands.items() if m}
    for size in (3, 4):
        if size > n:
            break
        for zset in combinations(sorted(cands), size):
            for mains in product(*(cands[v] for v in zset)):
                main = dict(zip(zset, mains))
                if _seed_ok(coloring, zset, main):
                    return _seed_order(zset, main)
    return None


def _seed_ok(coloring: EdgeColoring, zset: Sequence[int], main: dict[int, int]) -> bool:
    n = coloring.n
    inside = set(zset)
    for v in zset:
        off = [w for w in range(n) if w != v and coloring.color(v, w) != main[v]]
        if len(off) != 1:
            return False
        w = off[0]
        if w not in inside or main[w] != coloring.color(v, w):
            return False
    mains = sorted(main.values())
    if len(zset) == 3:
        return len(set(mains)) == 3
    return mains[0] == mains[1] != mains[2] == mains[3]


def _seed_order(zset: Sequence[int], main: dict[int, int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    z = tuple(sorted(zset, key=lambda v: (main[v], v)))
    return z, tuple(main[v] for v in z)


def _ordered_analysis(coloring: EdgeColoring) -> OrderAnalysis | None:
    res = greedy_order(coloring.color, range(coloring.n))
    if res is None:
        return None
    order, seq = res
    blocks = BlockSequence.from_sequence(seq)
    kind = OrderKind.SIMPLY_ORDERED if blocks.is_simple() else OrderKind.ORDERED
    return OrderAnalysis(kind, coloring.n, tuple(order), blocks)


def detect_order(coloring: EdgeColoring) -> OrderAnalysis:
    """Strongest ordered / quasi-ordered classification of ``coloring``."""
    found = _ordered_analysis(coloring)
    if found is not None:
        return found
    seed = find_seed(coloring)
    if seed is None:
        return OrderAnalysis(OrderKind.UNORDERED, coloring.n)
    z, mains = seed
    seed_edges = tuple(
        (a, b, coloring.color(z[a], z[b])) for a, b in combinations(range(len(z)), 2)
    )
    tail_verts = [v for v in range(coloring.n) if v not in z]
    res = greedy_order(coloring.color, tail_verts)
    if res is None:
        return OrderAnalysis(OrderKind.Z_QUASI_ORDERED, coloring.n, z=z, mains=mains, seed_edges=seed_edges)
    tail_order, tail_seq = res
    if len(tail_seq) == 1:
        tail_seq = [mains[-1]]
    simple = BlockSequence.from_sequence(tail_seq).is_simple() if tail_seq else True
    kind = OrderKind.QUASI_SIMPLY_ORDERED if simple else OrderKind.QUASI_ORDERED
    seq = list(mains) + tail_seq
    return OrderAnalysis(
        kind,
        coloring.n,
        tuple(z) + tuple(tail_order),
        BlockSequence.from_sequence(seq),
        z=z,
        mains=mains,
        seed_edges=seed_edges,
    )


def is_simply_ordered(coloring: EdgeColoring) -> bool:
    return detect_order(coloring).kind is OrderKind.SIMPLY_ORDERED


def is_quasi_ordered(coloring: EdgeColoring) -> bool:
    return detect_order(coloring).kind in (OrderKind.QUASI_ORDERED, OrderKind.QUASI_SIMPLY_ORDERED)


# -- the prefix-count characterization -------------------------------------------


def _prefix_counts(seq: Sequence[int], t: int) -> list[int]:
    """counts[j] = number of positions among the first j colored t."""
    counts = [0]
    for c in seq:
        counts.append(counts[-1] + (c == t))
    return counts


def color_forced(
    seq: Sequence[int],
    t: int,
    kind: Kind,
    q: int,
    z_size: int = 0,
    z_colors: frozenset[int] = frozenset(),
) -> bool:
    """Does every member of the family contain an edge of color ``t``?

    ``seq`` is the inherited coloring (seed first for quasi colorings);
    ``z_size`` is 0 for ordered colorings.
    """
    n = len(seq)
    m = _prefix_counts(seq, t)
    if kind is Kind.MATCHINGS:
        return any(2 * m[j] > j + q for j in range(1, n + 1))
    if kind is Kind.CYCLES:
        if any(2 * m[j] >= j + q for j in range(q + 1, n)):
            return True
        if t in z_colors and (q == 0 or (q == 1 and z_size == 4)):
            return True
        return False
    if kind is Kind.TWO_REGULAR:
        for j in range(1, n + 1):
            twice = 2 * m[j]
            if twice > j + q:
                return True
            if twice == j + q:
                if j in (2 + q, n - 2):
                    return True
                if 4 + q <= j <= n - 3 and 2 * m[j + 2] == j + q + 2:
                    return True
        if t in z_colors and (q == 0 or (q == 1 and z_size == 4)):
            return True
        return False
    raise PreconditionError(f"no prefix characterization for {kind.name}")


def _matching_forced_quasi(
    seq: Sequence[int],
    t: int,
    q: int,
    mains: Sequence[int],
    seed_edges: Sequence[tuple[int, int, int]],
) -> bool:
    """Matchings on a quasi-ordered coloring.

    Seed vertices are either matched inside Z along a non-t edge, left
    uncovered, or matched outward along their main color. Outward-matched
    seed vertices act like non-t vertices at the front of an ordered
    coloring, so each choice reduces to the ordered prefix test.
    """
    z = len(mains)
    tail = list(seq[z:])
    usable = [(a, b) for a, b, c in seed_edges if c != t]

    def internal_matchings(i: int, used: int):
        yield []
        for k in range(i, len(usable)):
            a, b = usable[k]
            if not (used >> a & 1 or used >> b & 1):
                for rest in internal_matchings(k + 1, used | 1 << a | 1 << b):
                    yield [(a, b)] + rest

    for inner in internal_matchings(0, 0):
        consumed = {x for e in inner for x in e}
        free = [x for x in range(z) if x not in consumed]
        forced_skip = [x for x in free if mains[x] == t]
        optional = [x for x in free if mains[x] != t]
        for extra in range(len(optional) + 1):
            for skipped in combinations(optional, extra):
                q_left = q - len(forced_skip) - extra
                if q_left < 0:
                    continue
                front = len(optional) - extra
                reduced = [0] * front + tail
                total = len(reduced)
                if (total - q_left) % 2 or total < q_left:
                    continue
                if not inner and total - q_left == 0:
                    continue
                if total >= 2:
                    reduced[-1] = reduced[-2]
                if not color_forced(reduced, t, Kind.MATCHINGS, q_left):
                    return False
    return True


def lemma_predicate(analysis: OrderAnalysis, family: FamilySpec) -> bool:
    """Polychromaticity of an ordered or quasi-ordered coloring, read off its blocks."""
    if analysis.inherited is None or analysis.kind in (OrderKind.UNORDERED, OrderKind.Z_QUASI_ORDERED):
        raise ScopeError(f"lemma_predicate needs an ordered or quasi-ordered coloring, got {analysis.kind.value}")
    family.validate(analysis.n)
    seq = analysis.inherited.sequence()
    colors = sorted(set(seq[:-1]) | set(analysis.mains)) if len(seq) > 1 else sorted(set(seq))
    if family.kind is Kind.MATCHINGS and analysis.is_quasi:
        return all(
            _matching_forced_quasi(seq, t, family.q, analysis.mains, analysis.seed_edges)
            for t in colors
        )
    return all(
        color_forced(seq, t, family.kind, family.q, len(analysis.z), analysis.z_edge_colors)
        for t in colors
    )


# -- block shifts ----------------------------------------------------------------


def _canonical_tail(seq: list[int]) -> list[int]:
    # the final vertex has no rightward edges; it copies its predecessor
    if len(seq) >= 2:
        seq[-1] = seq[-2]
    return seq


def _block_spans(seq: Sequence[int], start: int) -> list[tuple[int, int, int]]:
    """(color, begin, end) for each block of ``seq[start:]``, end exclusive."""
    spans = []
    i = start
    while i < len(seq):
        j = i
        while j < len(seq) and seq[j] == seq[i]:
            j += 1
        spans.append((seq[i], i, j))
        i = j
    return spans


def _shift_candidates(
    items: list[tuple[int, int]], start: int, t: int
) -> list[list[tuple[int, int]]]:
    """Rearrangements of ``items`` (vertex, color) that merge blocks of color t.

    Tried in order: pull each later t-block next to the first one, push
    earlier t-blocks next to the last one, and finally drop a later t-block
    to the end recolored with the last color.
    """
    seq = [c for _, c in items]
    spans = [s for s in _block_spans(seq, start) if s[0] == t]
    out = []
    first, last = spans[0], spans[-1]
    for _, b, e in spans[1:]:
        moved = items[b:e]
        rest = items[:b] + items[e:]
        out.append(rest[: first[2]] + moved + rest[first[2]:])
    for _, b, e in spans[:-1]:
        moved = items[b:e]
        rest = items[:b] + items[e:]
        at = last[1] - (e - b)
        out.append(rest[:at] + moved + rest[at:])
    for _, b, e in spans[1:]:
        rest = items[:b] + items[e:]
        end_color = rest[-2][1] if len(rest) >= 2 else t
        out.append(rest + [(v, end_color) for v, _ in items[b:e]])
    return out


def block_shift_normalize(coloring: EdgeColoring, family: FamilySpec) -> EdgeColoring:
    """Merge the blocks of an ordered (quasi-ordered) polychromatic coloring.

    The result is simply-ordered (quasi-simply-ordered), uses the same colors
    and stays polychromatic for ``family``. Each accepted shift lowers the
    block count, so the loop terminates.
    """
    analysis = detect_order(coloring)
    if analysis.kind in (OrderKind.UNORDERED, OrderKind.Z_QUASI_ORDERED):
        raise ScopeError(f"cannot normalize a {analysis.kind.value} coloring")
    if not lemma_predicate(analysis, family):
        raise PreconditionError(f"coloring is not {family.label}-polychromatic")
    start = len(analysis.z)
    items = list(zip(analysis.order, analysis.inherited.sequence()))

    def rebuild(cand: list[tuple[int, int]]) -> OrderAnalysis:
        seq = _canonical_tail([c for _, c in cand])
        blocks = BlockSequence.from_sequence(seq)
        return OrderAnalysis(
            analysis.kind, analysis.n, tuple(v for v, _ in cand), blocks,
            z=analysis.z, mains=analysis.mains, seed_edges=analysis.seed_edges,
        )

    def colors_of(a: OrderAnalysis) -> set[int]:
        seq = a.inherited.sequence()
        return set(seq[:-1]) | set(a.mains) if len(seq) > 1 else set(seq)

    current = rebuild(items)
    wanted = colors_of(current)
    while True:
        seq = list(current.inherited.sequence())
        tail_spans = _block_spans(seq, start)
        counts: dict[int, int] = {}
        for c, _, _ in tail_spans:
            counts[c] = counts.get(c, 0) + 1
        split = [c for c, _, _ in tail_spans if counts[c] > 1]
        if not split:
            break
        t = split[0]
        items = list(zip(current.order, seq))
        blocks_now = len(tail_spans)
        for cand in _shift_candidates(items, start, t):
            nxt = rebuild(cand)
            if len(_block_spans(nxt.inherited.sequence(), start)) >= blocks_now:
                continue
            if colors_of(nxt) == wanted and lemma_predicate(nxt, family):
                current = nxt
                break
        else:
            raise ScopeError(f"no block shift merges color {t} while staying polychromatic")
    if analysis.is_quasi:
        seed_edges = {(analysis.z[a], analysis.z[b]): c for a, b, c in analysis.seed_edges}
        seq = current.inherited.sequence()
        mains = analysis.mains

        def z_color(a: int, b: int) -> int:
            return seed_edges.get((analysis.z[a], analysis.z[b])) or seed_edges[(analysis.z[b], analysis.z[a])]

        return quasi_coloring(z_color, mains, seq[start:], current.order)
    return ordered_coloring(current.inherited.sequence(), current.order)


def analysis_of_sequence(seq: Sequence[int]) -> OrderAnalysis:
    """Analysis of the ordered coloring with inherited colors ``seq`` (identity order)."""
    seq = _canonical_tail(list(seq))
    blocks = BlockSequence.from_sequence(seq)
    kind = OrderKind.SIMPLY_ORDERED if blocks.is_simple() else OrderKind.ORDERED
    return OrderAnalysis(kind, len(seq), tuple(range(len(seq))), blocks)


def analysis_of_quasi(mains: Sequence[int], tail: Sequence[int]) -> OrderAnalysis:
    """Analysis of ``standard_quasi(mains, tail)`` without building the coloring."""
    z = len(mains)
    fn = seed3_color(mains) if z == 3 else seed4_color(mains)
    tail = list(tail)
    if len(tail) == 1:
        tail = [mains[-1]]
    tail = _canonical_tail(tail)
    simple = BlockSequence.from_sequence(tail).is_simple() if tail else True
    seq = list(mains) + tail
    return OrderAnalysis(
        OrderKind.QUASI_SIMPLY_ORDERED if simple else OrderKind.QUASI_ORDERED,
        len(seq),
        tuple(range(len(seq))),
        BlockSequence.from_sequence(seq),
        z=tuple(range(z)),
        mains=tuple(mains),
        seed_edges=tuple((a, b, fn(a, b)) for a, b in combinations(range(z), 2)),
    )
