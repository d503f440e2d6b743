"""Searches for the largest number of colors a polychromatic coloring can use.

Three levels: simply-ordered block structures (greedy and exhaustive),
quasi-simply-ordered structures around the 3- and 4-vertex seeds, and all
colorings of tiny complete graphs up to vertex and color symmetry.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Callable, Iterator, Sequence

from .errors import BudgetExceeded, PreconditionError
from .graph import BlockSequence, EdgeColoring, FamilySpec, Kind
from .oracle import DEFAULT_BUDGET, Budget, Steps, find_cycle, is_polychromatic
from .structure import analysis_of_quasi, color_forced, lemma_predicate, standard_quasi

MAX_BLOCKS_N = 20
MAX_QUASI_N = 16
MAX_FULL_N = 6


@dataclass(frozen=True)
class SearchReport:
    best_k: int
    best_structure: BlockSequence | None
    mode: str
    explored: int
    seed: tuple[int, ...] = ()
    coloring: EdgeColoring | None = field(default=None, compare=False)

    def to_json(self) -> dict:
        out = {
            "best_k": self.best_k,
            "mode": self.mode,
            "explored": self.explored,
            "blocks": [list(b) for b in self.best_structure.blocks] if self.best_structure else None,
        }
        if self.seed:
            out["seed_mains"] = list(self.seed)
        if self.coloring is not None:
            out["coloring"] = self.coloring.to_json()
        return out


# -- simply-ordered ------------------------------------------------------------------


def _forced_table(n: int, family: FamilySpec) -> Callable[[int, int], bool]:
    """forced(p, length): is a lone block at positions p..p+length-1 forced?

    In a simply-ordered coloring each color is one block, and whether every
    member meets that color depends only on where its block sits.
    """
    cache: dict[tuple[int, int], bool] = {}

    def forced(p: int, length: int) -> bool:
        key = (p, length)
        if key not in cache:
            seq = [0] * p + [1] * length + [2] * (n - p - length)
            cache[key] = color_forced(seq, 1, family.kind, family.q)
        return cache[key]

    return forced


def _check_family(n: int, family: FamilySpec) -> None:
    if family.kind not in (Kind.MATCHINGS, Kind.CYCLES, Kind.TWO_REGULAR):
        raise PreconditionError(f"block search covers matchings, cycles and 2-regular families, not {family.label}")
    family.validate(n)


def greedy_simply_ordered(n: int, family: FamilySpec) -> SearchReport:
    """Blocks left to right, each as short as the forcing condition allows."""
    _check_family(n, family)
    forced = _forced_table(n, family)
    best = [n]
    sizes: list[int] = []
    p = 0
    explored = 1
    while True:
        # leave at least two vertices for the final block
        step = next((m for m in range(1, n - p - 1) if forced(p, m)), None)
        explored += 1
        if step is None:
            break
        sizes.append(step)
        p += step
        if forced(p, n - p):
            best = sizes + [n - p]
    return SearchReport(len(best), BlockSequence.from_lengths(best), "greedy", explored)


def exhaustive_simply_ordered(n: int, family: FamilySpec) -> SearchReport:
    """Every composition of n whose blocks are all forced; the final block has >= 2 vertices."""
    _check_family(n, family)
    if n > MAX_BLOCKS_N:
        raise BudgetExceeded(f"exhaustive block search is limited to n <= {MAX_BLOCKS_N}")
    forced = _forced_table(n, family)
    best: list[int] = [n]
    explored = 0
    sizes: list[int] = []

    def go(p: int) -> None:
        nonlocal best, explored
        explored += 1
        if n - p >= 2 and forced(p, n - p) and len(sizes) + 1 > len(best):
            best = sizes + [n - p]
        for m in range(1, n - p - 1):
            if forced(p, m):
                sizes.append(m)
                go(p + m)
                sizes.pop()

    go(0)
    return SearchReport(len(best), BlockSequence.from_lengths(best), "exhaustive-blocks", explored)


def best_simply_ordered(n: int, family: FamilySpec, mode: str = "greedy") -> SearchReport:
    if mode == "greedy":
        return greedy_simply_ordered(n, family)
    if mode in ("blocks", "exhaustive", "exhaustive-blocks"):
        return exhaustive_simply_ordered(n, family)
    raise PreconditionError(f"unknown simply-ordered search mode {mode!r}")


# -- quasi-simply-ordered --------------------------------------------------------------


def _compositions(total: int) -> Iterator[list[int]]:
    """Compositions of ``total`` whose last part is at least 2 (all of them if total < 2)."""
    if total == 0:
        yield []
        return
    if total == 1:
        yield [1]
        return

    def go(left: int, acc: list[int]) -> Iterator[list[int]]:
        if left >= 2:
            yield acc + [left]
        for m in range(1, left - 1):
            yield from go(left - m, acc + [m])

    yield from go(total, [])


def best_quasi(n: int, family: FamilySpec) -> SearchReport:
    """Best quasi-simply-ordered coloring around the standard seed.

    q = 0 uses the 3-vertex seed, q = 1 the 4-vertex seed. Tail blocks may
    reuse a seed main color or open a new one, but each color appears in at
    most one tail block.
    """
    if family.kind not in (Kind.CYCLES, Kind.TWO_REGULAR) or family.q not in (0, 1):
        raise PreconditionError(f"quasi search covers R_0, C_0, R_1, C_1, not {family.label}")
    family.validate(n)
    if n > MAX_QUASI_N:
        raise BudgetExceeded(f"quasi search is limited to n <= {MAX_QUASI_N}")
    mains = (1, 2, 3) if family.q == 0 else (1, 1, 2, 2)
    z = len(mains)
    if n < z:
        raise PreconditionError(f"n={n} is smaller than the seed")
    seed_colors = sorted(set(mains))
    best_k = 0
    best_seq: list[int] = []
    explored = 0
    for comp in _compositions(n - z):
        if len(comp) <= 1 and sum(comp) <= 1:
            palettes: list[list[int]] = [[mains[-1]] * len(comp)]
        else:
            palettes = list(_tail_palettes(len(comp), seed_colors))
        for palette in palettes:
            explored += 1
            tail = [c for c, m in zip(palette, comp) for _ in range(m)]
            analysis = analysis_of_quasi(mains, tail)
            seq = analysis.inherited.sequence()
            k = len(set(seq[:-1]) | set(mains))
            if k > best_k and lemma_predicate(analysis, family):
                best_k, best_seq = k, seq
    coloring = standard_quasi(mains, best_seq[z:])
    return SearchReport(best_k, BlockSequence.from_sequence(best_seq), "quasi", explored, seed=mains, coloring=coloring)


def _tail_palettes(blocks: int, seed_colors: Sequence[int]) -> Iterator[list[int]]:
    """Distinct colors for the tail blocks: seed colors or new ones, new ones numbered in order."""
    first_new = max(seed_colors) + 1

    def go(acc: list[int], fresh: int) -> Iterator[list[int]]:
        if len(acc) == blocks:
            yield list(acc)
            return
        for c in seed_colors:
            if c not in acc:
                yield from go(acc + [c], fresh)
        yield from go(acc + [fresh], fresh + 1)

    yield from go([], first_new)


# -- all colorings of tiny graphs ----------------------------------------------------------


def edge_order(n: int) -> list[tuple[int, int]]:
    """Edges sorted by larger endpoint, so the first C(m,2) edges span K_m."""
    return [(u, v) for v in range(1, n) for u in range(v)]


class _Canon:
    """Lex-min test for edge-color vectors under vertex and color permutations.

    Colors inside a vector are numbered by first appearance, so color
    symmetry is handled by renumbering every permuted image the same way.
    """

    def __init__(self, n: int) -> None:
        self.order = edge_order(n)
        index = {e: i for i, e in enumerate(self.order)}
        self.maps: dict[int, list[list[int]]] = {}
        for m in range(3, n + 1):
            size = m * (m - 1) // 2
            maps = []
            for perm in permutations(range(m)):
                if perm == tuple(range(m)):
                    continue
                # image edge i = (a, b) takes the color of (perm[a], perm[b])
                maps.append([index[tuple(sorted((perm[a], perm[b])))] for a, b in self.order[:size]])
            self.maps[m] = maps

    def is_min(self, vec: Sequence[int], m: int) -> bool:
        for src in self.maps.get(m, ()):
            relabel: dict[int, int] = {}
            for i, j in enumerate(src):
                c = relabel.setdefault(vec[j], len(relabel) + 1)
                if c != vec[i]:
                    if c < vec[i]:
                        return False
                    break
        return True


def canonical_colorings(
    n: int,
    max_colors: int,
    min_colors: int = 1,
    keep: Callable[[int, list[int]], bool] | None = None,
    steps: Steps | None = None,
) -> Iterator[list[int]]:
    """Edge-color vectors of K_n, one per symmetry class, in lex order.

    Vectors follow :func:`edge_order` and use colors 1..c by first
    appearance. Each K_m prefix is lex-min among its images (orderly
    generation). ``keep(m, prefix)`` may reject a prefix spanning K_m; it
    must be hereditary, i.e. rejected prefixes have no acceptable extension.
    """
    if n < 2:
        raise PreconditionError("need n >= 2")
    if n > MAX_FULL_N:
        raise BudgetExceeded(f"exhaustive coloring search is limited to n <= {MAX_FULL_N}")
    canon = _Canon(n)
    total = n * (n - 1) // 2
    ends = {m * (m - 1) // 2: m for m in range(2, n + 1)}
    vec: list[int] = []

    def go(used: int) -> Iterator[list[int]]:
        if steps is not None:
            steps.tick()
        i = len(vec)
        if i in ends:
            m = ends[i]
            if not canon.is_min(vec, m):
                return
            if keep is not None and not keep(m, vec):
                return
            if i == total:
                if used >= min_colors:
                    yield list(vec)
                return
        if total - i < min_colors - used:
            return
        for c in range(1, min(used + 1, max_colors) + 1):
            vec.append(c)
            yield from go(max(used, c))
            vec.pop()

    yield from go(0)


def vector_to_coloring(n: int, vec: Sequence[int]) -> EdgeColoring:
    table = dict(zip(edge_order(n), vec))
    return EdgeColoring.from_function(n, lambda u, v: table[(u, v)])


def full_search(
    n: int,
    family: FamilySpec,
    k: int,
    budget: Budget = DEFAULT_BUDGET,
) -> EdgeColoring | None:
    """A family-polychromatic coloring of K_n with exactly k colors, if one exists.

    Returns the lex-first canonical one, so the answer is deterministic.
    """
    family.validate(n)
    if n > MAX_FULL_N:
        raise BudgetExceeded(f"full search is limited to n <= {MAX_FULL_N}")
    if not 1 <= k <= n * (n - 1) // 2:
        raise PreconditionError(f"k={k} outside 1..C(n,2)")
    if k > _min_member_edges(n, family):
        return None
    steps = Steps(budget.max_steps)
    for vec in canonical_colorings(n, k, k, steps=steps):
        coloring = vector_to_coloring(n, vec)
        if is_polychromatic(coloring, family, budget):
            return coloring
    return None


def _min_member_edges(n: int, family: FamilySpec) -> int:
    m = n - family.q
    if family.kind is Kind.MATCHINGS:
        return m // 2
    if family.kind in (Kind.CYCLES, Kind.TWO_REGULAR):
        return m
    assert family.r is not None
    return m * family.r // 2


def full_max(n: int, family: FamilySpec, budget: Budget = DEFAULT_BUDGET) -> SearchReport:
    """Largest k for which :func:`full_search` succeeds."""
    best: EdgeColoring | None = None
    tried = 0
    k = 1
    while k <= _min_member_edges(n, family):
        tried += 1
        found = full_search(n, family, k, budget)
        if found is None:
            break
        best = found
        k += 1
    assert best is not None, "a single color is always polychromatic"
    return SearchReport(best.k, None, "full", tried, coloring=best)


# -- cyclic Ramsey numbers by brute force ------------------------------------------------------


def _few_color_cycle(n: int, vec: Sequence[int], s: int, j: int, steps: Steps) -> bool:
    """Does K_n colored by ``vec`` contain an s-cycle using at most j colors?"""
    colors = sorted(set(vec))
    order = edge_order(n)
    for chosen in combinations(colors, min(j, len(colors))):
        keep = set(chosen)
        adj = [0] * n
        for (u, v), c in zip(order, vec):
            if c in keep:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        if find_cycle(adj, s, steps) is not None:
            return True
    return False


def coloring_without_few_color_cycle(
    n: int, s: int, t: int, j: int, budget: Budget = DEFAULT_BUDGET
) -> EdgeColoring | None:
    """A coloring of K_n with at most t colors in which every s-cycle uses more than j colors."""
    if not (t >= 2 and s >= 3 and 1 <= j <= t - 1):
        raise PreconditionError(f"need t >= 2, s >= 3, 1 <= j <= t-1 (s={s}, t={t}, j={j})")
    steps = Steps(budget.max_steps)
    if n < s:
        return vector_to_coloring(n, [1] * (n * (n - 1) // 2)) if n >= 2 else None

    def keep(m: int, prefix: list[int]) -> bool:
        return m < s or not _few_color_cycle(m, prefix, s, j, steps)

    for vec in canonical_colorings(n, t, keep=keep, steps=steps):
        return vector_to_coloring(n, vec)
    return None


def cyclic_ramsey(s: int, t: int, j: int, n_max: int = MAX_FULL_N, budget: Budget = DEFAULT_BUDGET) -> int | None:
    """Smallest n >= s such that every coloring of K_n with at most t colors
    has an s-cycle using at most j colors; None if it exceeds ``n_max``."""
    for n in range(max(s, 2), n_max + 1):
        if coloring_without_few_color_cycle(n, s, t, j, budget) is None:
            return n
    return None
