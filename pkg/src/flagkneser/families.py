"""Extremal families F_i(n, a, b), known independence numbers, and related arithmetic."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable

from .certificate import Certificate
from .setcore import FlagFamily, GraphSpec, full_mask, opposition_graph

TABLE2 = {5: 8, 6: 30, 7: 60, 8: 105, 9: 168, 10: 252}


def family_i_range(n: int, a: int, b: int) -> range:
    return range(0, 2 * b - n + 1)


def build_family_i(n: int, a: int, b: int, i: int) -> FlagFamily:
    """Flags (A, B) with [i] <= B <= [n-1], or with min(A) <= i and [min(A)] <= B."""
    if not (1 <= a < b < n) or a + b >= n:
        raise ValueError(f"need 1 <= a < b < n and a + b < n, got n={n}, a={a}, b={b}")
    if not 0 <= i <= 2 * b - n:
        raise ValueError(f"i must lie in [0, {2 * b - n}], got {i}")
    g = opposition_graph(GraphSpec.of(n, a, b))
    head = full_mask(i)
    below_n = full_mask(n - 1)
    keep = []
    for masks, f in zip(g.masks, g.flags):
        small, big = masks
        if big & head == head and big & ~below_n == 0:
            keep.append(f)
            continue
        low = (small & -small).bit_length()
        if low <= i and big & full_mask(low) == full_mask(low):
            keep.append(f)
    return FlagFamily._trusted(g.spec, keep)


def best_family(n: int, a: int, b: int) -> FlagFamily | None:
    """The largest F_i over admissible i, or None if the construction does not apply."""
    if not (1 <= a < b < n) or a + b >= n or 2 * b < n:
        return None
    return max((build_family_i(n, a, b, i) for i in family_i_range(n, a, b)),
               key=len, default=None)


class Source(str, enum.Enum):
    THEOREM_CYCLE = "theorem_cycle"
    THEOREM_1_NMINUS2 = "theorem_1_nminus2"
    MAIN_THEOREM_1_NMINUS3 = "main_theorem_1_nminus3"
    TABLE2 = "table2"
    ISOMORPHISM_REDUCTION = "isomorphism_reduction"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class KnownValue:
    n: int
    a: int
    b: int
    value: int | None
    source: Source
    via: Source | None = None  # the underlying result when source is a reduction

    @property
    def known(self) -> bool:
        return self.value is not None


def _direct_values(n: int, a: int, b: int) -> list[tuple[Source, int]]:
    found = []
    if n < 2 * b and a + 3 * b <= 2 * n:
        found.append((Source.THEOREM_CYCLE, comb(n - 1, b) * comb(b, a)))
    if a == 1 and b == n - 2 and n >= 5:
        found.append((Source.THEOREM_1_NMINUS2, comb(n, 3) + 2))
    if a == 1 and b == n - 3 and n in TABLE2:
        found.append((Source.TABLE2, TABLE2[n]))
    if a == 1 and b == n - 3 and n >= 9:
        found.append((Source.MAIN_THEOREM_1_NMINUS3, comb(n, 4) + 42))
    return found


def known_alpha(n: int, a: int, b: int) -> KnownValue:
    """Look up alpha(Gamma(n, a, b)) from the closed forms and the computed table.

    Precedence when several results apply (they always agree): cycle theorem,
    the (1, n-2) theorem, the table, the (1, n-3) theorem. If only the
    isomorphic graph Gamma(n, n-b, n-a) is covered, the source is the reduction.
    """
    if not 1 <= a < b < n:
        raise ValueError(f"need 1 <= a < b < n, got ({n},{a},{b})")
    direct = _direct_values(n, a, b)
    if direct:
        values = {v for _, v in direct}
        if len(values) != 1:
            raise AssertionError(f"cited results disagree at ({n},{a},{b}): {direct}")
        return KnownValue(n, a, b, direct[0][1], direct[0][0])
    mirrored = _direct_values(n, n - b, n - a)
    if mirrored:
        return KnownValue(n, a, b, mirrored[0][1], Source.ISOMORPHISM_REDUCTION, mirrored[0][0])
    return KnownValue(n, a, b, None, Source.UNKNOWN)


def conjecture_value(n: int, s: int) -> int:
    """C(n, s+1) + C(s^2, s+1) / s, the conjectured alpha(Gamma(n, 1, n-s))."""
    if s < 2 or n <= 2 * s:
        raise ValueError(f"need s >= 2 and n > 2s, got n={n}, s={s}")
    extra = Fraction(comb(s * s, s + 1), s)
    if extra.denominator != 1:
        raise AssertionError(f"C({s * s},{s + 1})/{s} is not an integer")
    return comb(n, s + 1) + int(extra)


def induction_bound_check(n: int,
                          alpha: Callable[[int], int | None] | None = None) -> Certificate:
    """alpha(n, 1, n-3) <= C(n-1, 3) + alpha(n-1, 1, n-4), with slack when both are known.

    ``alpha(m)`` supplies alpha(Gamma(m, 1, m-3)) or None; the default looks the
    value up with :func:`known_alpha`. The inequality is only claimed for n >= 11.
    """
    if n < 6:
        raise ValueError("induction check needs n >= 6")
    if alpha is None:
        def alpha(m: int) -> int | None:
            return known_alpha(m, 1, m - 3).value
    lhs = alpha(n)
    prev = alpha(n - 1)
    hyp = {"n": n, "n>=11": n >= 11}
    if lhs is None or prev is None:
        return Certificate("induction_bound", "inconclusive", hyp,
                           notes=["alpha value missing"])
    rhs = comb(n - 1, 3) + prev
    slack = rhs - lhs
    notes = [f"bound {rhs} = C({n - 1},3)+{prev}, alpha {lhs}, slack {slack}"]
    if slack >= 0:
        return Certificate("induction_bound", "pass", hyp, bound=rhs, observed=lhs, notes=notes)
    if n < 11:
        notes.append("hypothesis n>=11 not met")
        return Certificate("induction_bound", "vacuous", hyp, bound=rhs, observed=lhs,
                           notes=notes)
    return Certificate("induction_bound", "fail", hyp, bound=rhs, observed=lhs, notes=notes)
