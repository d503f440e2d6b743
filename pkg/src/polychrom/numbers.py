"""Closed-form polychromatic numbers, cycle Ramsey numbers c(s) and the
polychromatic cyclic Ramsey numbers pr_t(s).

Every threshold is evaluated with integer inequalities; no floating point
logarithms are involved anywhere.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import PreconditionError


class Provenance(enum.Enum):
    MATCHINGS_INTERVAL = "matchings-interval"
    TWO_REGULAR_INTERVAL = "two-regular-interval"
    TWO_REGULAR_Q0 = "two-regular-q0-seed"
    TWO_REGULAR_Q1 = "two-regular-q1-seed"
    CYCLES_INTERVAL = "cycles-interval"
    CYCLES_TWO_COLOR_BAND = "cycles-two-color-band"
    CYCLES_K5_PENTAGONS = "cycles-k5-two-pentagons"
    CYCLES_Q0 = "cycles-q0-seed"
    CYCLES_Q1 = "cycles-q1-seed"
    CYCLES_Q0_SEARCHED = "cycles-q0-searched-constant"
    CYCLES_Q1_SEARCHED = "cycles-q1-searched-constant"
    CLASSICAL_SMALL = "classical-small"
    CLASSICAL_ODD = "classical-odd"
    CLASSICAL_EVEN = "classical-even"
    PR_CLASSICAL = "pr-two-colors-classical"
    PR_BAND_EXACT = "pr-band-s"
    PR_BAND_PLUS_ONE = "pr-band-s+1"
    PR_BAND_PLUS_TWO = "pr-band-s+2"
    PR_BAND_ROUNDED = "pr-band-rounded"


@dataclass(frozen=True)
class NumberResult:
    value: int
    provenance: Provenance

    def to_json(self) -> dict:
        return {"value": self.value, "provenance": self.provenance.value}


# Values outside every closed form, found by exhaustive search over all
# colorings (see search.full_search) and frozen here.
CYCLES_Q0_N3 = 3  # rainbow triangle
CYCLES_Q1_N4 = 3  # proper 3-edge-coloring of K_4: every triangle is rainbow


def largest_power(num: int, den: int) -> int:
    """Largest k >= 0 with den * 2**k <= num (floor of log2(num/den)).

    Requires ``num >= den > 0``.
    """
    if den <= 0 or num < den:
        raise PreconditionError(f"log2({num}/{den}) is negative or undefined")
    k = max(num // den, 1).bit_length() - 1
    while den << (k + 1) <= num:
        k += 1
    while den << k > num:
        k -= 1
    return k


def matchings_blocks_count(n: int, q: int) -> int:
    """The unique k with (q+1)(2^k - 1) <= n < (q+1)(2^(k+1) - 1)."""
    k = 0
    while (q + 1) * ((1 << (k + 1)) - 1) <= n:
        k += 1
    return k


def cycles_blocks_count(n: int, q: int) -> int:
    """The k with (2^k - 1)q + 2^(k-1) < n <= (2^(k+1) - 1)q + 2^k, for k >= 1."""
    k = 1
    while n > ((1 << (k + 1)) - 1) * q + (1 << k):
        k += 1
    return k


def p_f(n: int, q: int) -> NumberResult:
    """Polychromatic number for matchings covering exactly n - q vertices."""
    if q < 0 or n - q <= 0 or (n - q) % 2:
        raise PreconditionError(f"matchings need n - q positive and even (n={n}, q={q})")
    return NumberResult(matchings_blocks_count(n, q), Provenance.MATCHINGS_INTERVAL)


def in_two_color_band(n: int, q: int) -> bool:
    """Cycles of odd length n - q with n in [2q+2, 3q+2], q >= 2."""
    return q >= 2 and (n - q) % 2 == 1 and 2 * q + 2 <= n <= 3 * q + 2


def p_c(n: int, q: int) -> NumberResult:
    """Polychromatic number for cycles of length exactly n - q."""
    if q < 0 or n - q < 3:
        raise PreconditionError(f"cycles need n - q >= 3 (n={n}, q={q})")
    if q == 0:
        if n == 3:
            return NumberResult(CYCLES_Q0_N3, Provenance.CYCLES_Q0_SEARCHED)
        return NumberResult(largest_power(8 * (n - 1), 3), Provenance.CYCLES_Q0)
    if q == 1:
        if n == 4:
            return NumberResult(CYCLES_Q1_N4, Provenance.CYCLES_Q1_SEARCHED)
        return NumberResult(largest_power(4 * n, 5), Provenance.CYCLES_Q1)
    if in_two_color_band(n, q):
        return NumberResult(2, Provenance.CYCLES_TWO_COLOR_BAND)
    if q == 2 and n == 5:
        return NumberResult(2, Provenance.CYCLES_K5_PENTAGONS)
    return NumberResult(cycles_blocks_count(n, q), Provenance.CYCLES_INTERVAL)


def p_r(n: int, q: int) -> NumberResult:
    """Polychromatic number for 2-regular subgraphs spanning at least n - q vertices."""
    if q < 0 or n - q < 3:
        raise PreconditionError(f"2-regular subgraphs need n - q >= 3 (n={n}, q={q})")
    if q == 0:
        return NumberResult(1 + largest_power(n + 1, 1), Provenance.TWO_REGULAR_Q0)
    if q == 1:
        return NumberResult(largest_power(2 * (n + 2), 3), Provenance.TWO_REGULAR_Q1)
    return NumberResult(matchings_blocks_count(n, q), Provenance.TWO_REGULAR_INTERVAL)


def classical_c(s: int) -> NumberResult:
    """Two-color Ramsey number of the s-cycle."""
    if s < 3:
        raise PreconditionError("cycles have at least 3 vertices")
    if s in (3, 4):
        return NumberResult(6, Provenance.CLASSICAL_SMALL)
    if s % 2:
        return NumberResult(2 * s - 1, Provenance.CLASSICAL_ODD)
    return NumberResult(3 * s // 2 - 1, Provenance.CLASSICAL_EVEN)


def pr_t(s: int, t: int) -> NumberResult:
    """Smallest n >= s such that every t-coloring of K_n has an s-cycle missing a color."""
    if t < 2 or s < 3 or s < t:
        raise PreconditionError(f"need t >= 2, s >= 3, s >= t (s={s}, t={t})")
    if t == 2:
        return NumberResult(classical_c(s).value, Provenance.PR_CLASSICAL)
    p = 1 << (t - 3)
    if 3 < s <= 3 * p:
        return NumberResult(s, Provenance.PR_BAND_EXACT)
    if 3 * p + 1 <= s <= 10 * p - 2:
        return NumberResult(s + 1, Provenance.PR_BAND_PLUS_ONE)
    if 10 * p - 1 <= s <= 20 * p - 4:
        return NumberResult(s + 2, Provenance.PR_BAND_PLUS_TWO)
    if s >= 20 * p - 3:
        # nearest integer to (s-2)/(2^t-2), halves rounded up
        den = (1 << t) - 2
        return NumberResult(s + (2 * (s - 2) + den) // (2 * den), Provenance.PR_BAND_ROUNDED)
    raise PreconditionError(f"no formula covers s={s} with t={t}")


def pr_from_cycles(s: int, t: int) -> int:
    """s + min{q >= 0 : p_c(s+q, q) < t}: pr_t(s) recovered from the cycle numbers."""
    if t == 2:
        return classical_c(s).value
    q = 0
    while p_c(s + q, q).value >= t:
        q += 1
    return s + q


def pr_consistency(s: int, t: int) -> bool:
    """Does pr_t(s) agree with the value implied by the cycle numbers?"""
    return pr_t(s, t).value == pr_from_cycles(s, t)


def pr_table(t: int, s_values: range) -> list[tuple[int, int, str]]:
    rows = []
    for s in s_values:
        res = pr_t(s, t)
        rows.append((s, res.value, res.provenance.value))
    return rows
