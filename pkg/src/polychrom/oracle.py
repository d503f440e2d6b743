"""Exact decision procedures: does some family member avoid a given color?

Everything works on adjacency bitmasks of the graph that remains after the
banned color class is deleted. All searches are exhaustive; when an instance
is larger than the configured :class:`Budget` they raise
:class:`~polychrom.errors.BudgetExceeded` instead of guessing.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Sequence

from .errors import BudgetExceeded, PreconditionError
from .graph import (
    EdgeColoring,
    FamilySpec,
    Kind,
    Subgraph,
    Verdict,
    bits,
    colors_on,
    family_member,
    popcount,
)

Adj = Sequence[int]


@dataclass(frozen=True)
class Budget:
    max_steps: int = 50_000_000
    max_n_matchings: int = 24
    max_n_cycles: int = 16
    max_n_two_regular: int = 14
    max_n_regular: int = 12

    def max_n(self, kind: Kind) -> int:
        return {
            Kind.MATCHINGS: self.max_n_matchings,
            Kind.CYCLES: self.max_n_cycles,
            Kind.TWO_REGULAR: self.max_n_two_regular,
            Kind.R_REGULAR: self.max_n_regular,
            Kind.CONNECTED_R_REGULAR: self.max_n_regular,
        }[kind]


DEFAULT_BUDGET = Budget()


class Steps:
    """Countdown of search steps; raises BudgetExceeded when it runs out."""

    __slots__ = ("left",)

    def __init__(self, limit: int) -> None:
        self.left = limit

    def tick(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise BudgetExceeded("search step budget exhausted")


@dataclass(frozen=True)
class AvoidanceQuery:
    coloring: EdgeColoring
    family: FamilySpec
    banned: int

    def __post_init__(self) -> None:
        if not 1 <= self.banned <= self.coloring.k:
            raise PreconditionError(f"banned color {self.banned} not in 1..{self.coloring.k}")
        self.family.validate(self.coloring.n)


# -- matchings ---------------------------------------------------------------


def max_matching_size(adj: Adj, mask: int | None = None) -> int:
    """Maximum matching size of the graph induced on ``mask`` (bitmask DP)."""
    n = len(adj)
    if mask is None:
        mask = (1 << n) - 1

    @lru_cache(maxsize=None)
    def nu(m: int) -> int:
        if m & (m - 1) == 0:
            return 0
        low = m & -m
        v = low.bit_length() - 1
        rest = m ^ low
        best = nu(rest)
        for u in bits(adj[v] & rest):
            best = max(best, 1 + nu(rest & ~(1 << u)))
        return best

    return nu(mask)


def find_matching(adj: Adj, cover: int, steps: Steps) -> list[tuple[int, int]] | None:
    """A matching covering exactly ``cover`` vertices, or None."""
    n = len(adj)
    dead: set[tuple[int, int]] = set()

    def go(rest: int, skips: int) -> list[tuple[int, int]] | None:
        if rest == 0:
            return [] if skips == 0 else None
        if popcount(rest) == skips:
            return []
        key = (rest, skips)
        if key in dead:
            return None
        steps.tick()
        low = rest & -rest
        v = low.bit_length() - 1
        rest ^= low
        for u in bits(adj[v] & rest):
            sub = go(rest & ~(1 << u), skips)
            if sub is not None:
                return [(v, u)] + sub
        if skips:
            sub = go(rest, skips - 1)
            if sub is not None:
                return sub
        dead.add(key)
        return None

    if cover % 2 or cover > n:
        return None
    return go((1 << n) - 1, n - cover)


# -- cycles ------------------------------------------------------------------


def find_cycle(adj: Adj, length: int, steps: Steps, within: int | None = None) -> list[int] | None:
    """A cycle with exactly ``length`` vertices, listed from its smallest vertex."""
    n = len(adj)
    if within is None:
        within = (1 << n) - 1
    if length < 3 or popcount(within) < length:
        return None
    for s in bits(within):
        allowed = within & ~((1 << (s + 1)) - 1)
        if popcount(allowed) + 1 < length:
            break
        closers = adj[s] & allowed
        if popcount(closers) < 2:
            continue
        for second in bits(closers):
            found = _close_path(adj, s, second, allowed, length, steps)
            if found is not None:
                return found
    return None


def _close_path(adj: Adj, s: int, second: int, allowed: int, length: int, steps: Steps) -> list[int] | None:
    # paths s, second, ..., last with last > second and last adjacent to s
    dead: set[tuple[int, int]] = set()
    path = [s, second]

    def go(u: int, visited: int) -> bool:
        if len(path) == length:
            return u > second and bool(adj[u] >> s & 1)
        key = (visited, u)
        if key in dead:
            return False
        steps.tick()
        for w in bits(adj[u] & allowed & ~visited):
            path.append(w)
            if go(w, visited | (1 << w)):
                return True
            path.pop()
        dead.add(key)
        return False

    if go(second, (1 << s) | (1 << second)):
        return list(path)
    return None


def cycles_through(adj: Adj, v: int, within: int, steps: Steps) -> Iterator[list[int]]:
    """Every cycle through ``v`` using only vertices of ``within``, once per orientation pair."""
    path = [v]

    def go(u: int, visited: int) -> Iterator[list[int]]:
        steps.tick()
        if len(path) >= 3 and adj[u] >> v & 1 and path[1] < u:
            yield list(path)
        for w in bits(adj[u] & within & ~visited):
            path.append(w)
            yield from go(w, visited | (1 << w))
            path.pop()

    yield from go(v, 1 << v)


# -- 2-regular subgraphs -------------------------------------------------------


def _peel(adj: Adj, mask: int, need: int) -> tuple[int, int]:
    """Strip vertices of degree < need inside ``mask``; return (kept, removed count)."""
    removed = 0
    changed = True
    while changed:
        changed = False
        for v in bits(mask):
            if popcount(adj[v] & mask) < need:
                mask &= ~(1 << v)
                removed += 1
                changed = True
    return mask, removed


def find_two_regular(adj: Adj, min_cover: int, steps: Steps) -> list[list[int]] | None:
    """Vertex-disjoint cycles covering at least ``min_cover`` vertices, or None."""
    n = len(adj)
    dead: set[tuple[int, int]] = set()

    def go(undecided: int, skips: int) -> list[list[int]] | None:
        kept, removed = _peel(adj, undecided, 2)
        if removed > skips:
            return None
        skips -= removed
        if kept == 0:
            return []
        if popcount(kept) < 3:
            return [] if popcount(kept) <= skips else None
        key = (kept, skips)
        if key in dead:
            return None
        steps.tick()
        low = kept & -kept
        v = low.bit_length() - 1
        for cyc in cycles_through(adj, v, kept, steps):
            cmask = 0
            for x in cyc:
                cmask |= 1 << x
            sub = go(kept & ~cmask, skips)
            if sub is not None:
                return [cyc] + sub
        if skips:
            sub = go(kept ^ low, skips - 1)
            if sub is not None:
                return sub
        dead.add(key)
        return None

    if min_cover > n:
        return None
    return go((1 << n) - 1, n - min_cover)


# -- r-regular subgraphs -------------------------------------------------------


def find_regular(adj: Adj, r: int, size: int, connected: bool, steps: Steps) -> list[tuple[int, int]] | None:
    """An r-regular subgraph on exactly ``size`` vertices (optionally connected)."""
    n = len(adj)
    full = (1 << n) - 1
    for excluded in combinations(range(n), n - size):
        mask = full
        for x in excluded:
            mask &= ~(1 << x)
        kept, removed = _peel(adj, mask, r)
        if removed:
            continue
        found = _regular_on(adj, r, kept, connected, steps)
        if found is not None:
            return found
    return None


def _regular_on(adj: Adj, r: int, mask: int, connected: bool, steps: Steps) -> list[tuple[int, int]] | None:
    verts = list(bits(mask))
    need = {v: r for v in verts}
    chosen: list[tuple[int, int]] = []

    def spanning_connected() -> bool:
        return Subgraph.of(chosen).is_connected()

    def go(i: int) -> bool:
        while i < len(verts) and need[verts[i]] == 0:
            i += 1
        if i == len(verts):
            return not connected or spanning_connected()
        steps.tick()
        v = verts[i]
        later = [w for w in verts[i + 1:] if need[w] > 0 and adj[v] >> w & 1]
        if len(later) < need[v]:
            return False
        for picks in combinations(later, need[v]):
            d = need[v]
            need[v] = 0
            for w in picks:
                need[w] -= 1
                chosen.append((v, w))
            if go(i + 1):
                return True
            for w in picks:
                need[w] += 1
                chosen.pop()
            need[v] = d
        return False

    return list(chosen) if go(0) else None


# -- public surface ----------------------------------------------------------


def exists_avoiding(query: AvoidanceQuery, budget: Budget = DEFAULT_BUDGET) -> Subgraph | None:
    """Return a family member with no edge of the banned color, or None if none exists."""
    coloring, family = query.coloring, query.family
    n = coloring.n
    if n > budget.max_n(family.kind):
        raise BudgetExceeded(f"n={n} exceeds the {family.kind.name} oracle limit {budget.max_n(family.kind)}")
    adj = coloring.avoiding_adjacency(query.banned)
    steps = Steps(budget.max_steps)
    m = n - family.q
    kind = family.kind
    witness: Subgraph | None = None
    if kind is Kind.MATCHINGS:
        pairs = find_matching(adj, m, steps)
        if pairs is not None:
            witness = Subgraph.of(pairs)
    elif kind is Kind.CYCLES:
        cyc = find_cycle(adj, m, steps)
        if cyc is not None:
            witness = Subgraph.cycle(cyc)
    elif kind is Kind.TWO_REGULAR:
        cycles = find_two_regular(adj, m, steps)
        if cycles is not None:
            witness = Subgraph.of(e for c in cycles for e in Subgraph.cycle(c).edges)
    else:
        assert family.r is not None
        pairs = find_regular(adj, family.r, m, kind is Kind.CONNECTED_R_REGULAR, steps)
        if pairs is not None:
            witness = Subgraph.of(pairs)
    if witness is not None:
        # Every certificate is re-checked before it leaves the oracle.
        assert family_member(family, n, witness), "oracle produced a non-member"
        assert query.banned not in colors_on(coloring, witness), "witness uses banned color"
    return witness


def verify(
    coloring: EdgeColoring,
    family: FamilySpec,
    budget: Budget = DEFAULT_BUDGET,
    jobs: int = 1,
) -> Verdict:
    """Check that every member of ``family`` sees all ``coloring.k`` colors."""
    family.validate(coloring.n)
    queries = [AvoidanceQuery(coloring, family, t) for t in range(1, coloring.k + 1)]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda qu: exists_avoiding(qu, budget), queries))
    else:
        results = [exists_avoiding(qu, budget) for qu in queries]
    missing = tuple((qu.banned, w) for qu, w in zip(queries, results) if w is not None)
    return Verdict(family, coloring.k, missing)


def is_polychromatic(coloring: EdgeColoring, family: FamilySpec, budget: Budget = DEFAULT_BUDGET) -> bool:
    """Like :func:`verify` but stops at the first failing color."""
    family.validate(coloring.n)
    return all(
        exists_avoiding(AvoidanceQuery(coloring, family, t), budget) is None
        for t in range(1, coloring.k + 1)
    )


def all_cycles_polychromatic(coloring: EdgeColoring, length: int, budget: Budget = DEFAULT_BUDGET) -> bool:
    """True iff every cycle with ``length`` vertices sees all colors."""
    return is_polychromatic(coloring, FamilySpec.cycles(coloring.n - length), budget)


def check_cycle_monotonicity(coloring: EdgeColoring, j: int, budget: Budget = DEFAULT_BUDGET) -> bool:
    """If every j-cycle sees all colors, so must every longer cycle (at least three colors)."""
    n = coloring.n
    if coloring.k < 3:
        raise PreconditionError("cycle monotonicity is only claimed for k >= 3")
    if not 4 <= j <= n:
        raise PreconditionError(f"need 4 <= j <= n, got j={j}, n={n}")
    if not all_cycles_polychromatic(coloring, j, budget):
        return True
    return all(all_cycles_polychromatic(coloring, length, budget) for length in range(j + 1, n + 1))
