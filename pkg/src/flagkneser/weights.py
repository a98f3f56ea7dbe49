"""Family weights of small and large parts, and certificates for the weight lemmas.

For a family of flags ``(A, B)`` of type ``{a, b}``, the weight of a ``b``-set
counts the members whose large part is that set, and the weight of an
``a``-set counts the members whose small part is it.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .certificate import Certificate
from .setcore import (
    ElementSet,
    FlagFamily,
    PreconditionError,
    full_mask,
    is_independent,
    is_maximal_independent,
    iter_bits,
)
from .shifting import is_left_shifted


class LemmaViolation(AssertionError):
    """A family contradicts one of the weight lemmas."""


def _pair_type(family: FlagFamily) -> tuple[int, int]:
    if len(family.flag_type) != 2:
        raise ValueError("weights are defined for types {a, b} only")
    return family.flag_type.sizes  # type: ignore[return-value]


def _require_maximal(family: FlagFamily) -> None:
    if not is_maximal_independent(family):
        raise PreconditionError("family is not a maximal independent set")


def _require_1_nminus3(family: FlagFamily) -> None:
    if family.flag_type.sizes != (1, family.n - 3):
        raise PreconditionError("expected a family of type {1, n-3}")


def weight_of_bset(family: FlagFamily, b_set: ElementSet) -> int:
    a, b = _pair_type(family)
    if len(b_set) != b:
        raise ValueError(f"expected a {b}-set, got {b_set}")
    return sum(1 for f in family.flags if f.masks[1] == b_set.mask)


def weight_of_aset(family: FlagFamily, a_set: ElementSet) -> int:
    a, b = _pair_type(family)
    if len(a_set) != a:
        raise ValueError(f"expected an {a}-set, got {a_set}")
    return sum(1 for f in family.flags if f.masks[0] == a_set.mask)


def _mask_weights(family: FlagFamily, level: int) -> Counter[int]:
    return Counter(f.masks[level] for f in family.flags)


def _subset_masks(n: int, k: int):
    for c in combinations(range(n), k):
        m = 0
        for i in c:
            m |= 1 << i
        yield m


@dataclass
class WeightReport:
    """Weights of every subset of one cardinality with respect to a family."""

    family: FlagFamily
    cardinality: int
    weights: dict[ElementSet, int]
    max_possible: int
    histogram: Counter[int] = field(default_factory=Counter)

    @property
    def total(self) -> int:
        return sum(self.weights.values())


def weight_report(family: FlagFamily, which: str = "b") -> WeightReport:
    """Weight map over all ``b``-sets (``which="b"``) or all ``a``-sets (``"a"``)."""
    a, b = _pair_type(family)
    n = family.n
    if which == "b":
        k, level, max_possible = b, 1, comb(b, a)
    elif which == "a":
        k, level, max_possible = a, 0, comb(n - a, b - a)
    else:
        raise ValueError("which must be 'a' or 'b'")
    counts = _mask_weights(family, level)
    weights = {ElementSet(n, m): counts.get(m, 0) for m in _subset_masks(n, k)}
    return WeightReport(family, k, weights, max_possible, Counter(weights.values()))


def certify_weight_dichotomy(family: FlagFamily) -> Certificate:
    """Every b-set has full weight C(b,a) or weight at most C(b,a) - C(n-b,a)."""
    _require_maximal(family)
    a, b = _pair_type(family)
    n = family.n
    full_weight = comb(b, a)
    gap_bound = full_weight - comb(n - b, a)
    counts = _mask_weights(family, 1)
    hyp = {"n": n, "a": a, "b": b, "maximal": True}
    checked = 0
    worst = 0
    for m in _subset_masks(n, b):
        w = counts.get(m, 0)
        checked += 1
        if w == full_weight:
            continue
        worst = max(worst, w)
        if w > gap_bound:
            return Certificate("weight_B_gap", "fail", hyp, bound=gap_bound, observed=w,
                               witness=(ElementSet(n, m),), checked=checked)
    return Certificate("weight_B_gap", "pass", hyp, bound=gap_bound, observed=worst,
                       checked=checked,
                       notes=[f"weights seen: {sorted(set(counts.values()) | {0})}"])


def full_weight_condition(family: FlagFamily, b_set: ElementSet) -> bool:
    """Every member (A', B') has A' meeting ``b_set`` or B' together with it short of [n]."""
    full = full_mask(family.n)
    bm = b_set.mask
    return all(f.masks[0] & bm or f.masks[1] | bm != full for f in family.flags)


def certify_full_weight_condition(family: FlagFamily, b_set: ElementSet) -> bool:
    """Return the full-weight condition for ``b_set``; raise if it disagrees with the weight."""
    _require_maximal(family)
    a, b = _pair_type(family)
    condition = full_weight_condition(family, b_set)
    has_full = weight_of_bset(family, b_set) == comb(b, a)
    if condition != has_full:
        raise LemmaViolation(
            f"{b_set}: condition={condition} but full weight={has_full}")
    return condition


def certify_weight_A(family: FlagFamily, a_set: ElementSet) -> Certificate:
    """A point has weight C(n-1,3) iff it lies in every large part; else the gap applies."""
    _require_1_nminus3(family)
    _require_maximal(family)
    n = family.n
    if len(a_set) != 1:
        raise ValueError("weight-A certificate is about single points")
    full_weight = comb(n - 1, 3)
    gap_bound = full_weight - comb(n - 4, 2)
    w = weight_of_aset(family, a_set)
    in_all = all(f.masks[1] & a_set.mask for f in family.flags)
    hyp = {"n": n, "point": a_set.min(), "in_every_B": in_all}
    if in_all != (w == full_weight):
        return Certificate("weight_A", "fail", hyp, bound=full_weight, observed=w,
                           witness=(a_set,), notes=["iff direction broken"])
    if w != full_weight and w > gap_bound:
        return Certificate("weight_A", "fail", hyp, bound=gap_bound, observed=w,
                           witness=(a_set,))
    return Certificate("weight_A", "pass", hyp,
                       bound=full_weight if w == full_weight else gap_bound, observed=w)


def technical_bounds(n: int) -> dict[str, int]:
    """The three point-weight bounds used for type {1, n-3}."""
    top = comb(n - 1, 3)
    return {
        "tw1": top - (n - 5) * (n - 4) + comb(n - 5, 2),
        "tw2a": top - comb(n - 3, 3),
        "tw2b": top - 2 * comb(n - 3, 3) + comb(n - 4, 3),
    }


def certify_technical_weights(family: FlagFamily) -> Certificate:
    """Point-weight bounds forced by pairs of members or by pairs of full-weight B's.

    * two members with equal A, distinct B and exactly two points outside
      ``B1 | B2``: each such point has weight at most ``bounds['tw1']``;
    * a full-weight B: each point outside it has weight at most ``bounds['tw2a']``;
    * two full-weight B's with two points outside their union: those points have
      weight at most ``bounds['tw2b']``.
    """
    _require_1_nminus3(family)
    if not is_independent(family):
        raise PreconditionError("family is not independent")
    n = family.n
    full = full_mask(n)
    bounds = technical_bounds(n)
    point_w = _mask_weights(family, 0)
    b_w = _mask_weights(family, 1)

    # outside-sets (as masks) whose points must obey each bound
    tw1_sets: set[int] = set()
    by_point: dict[int, list[int]] = {}
    for f in family.flags:
        by_point.setdefault(f.masks[0], []).append(f.masks[1])
    for bs in by_point.values():
        for b1, b2 in combinations(set(bs), 2):
            rest = full & ~(b1 | b2)
            if rest.bit_count() == 2:
                tw1_sets.add(rest)
    heavy = [m for m, w in b_w.items() if w == n - 3]
    tw2a_sets = {full & ~m for m in heavy}
    tw2b_sets = set()
    for b1, b2 in combinations(heavy, 2):
        rest = full & ~(b1 | b2)
        if rest.bit_count() == 2:
            tw2b_sets.add(rest)

    hyp = {"n": n, "tw1_configs": len(tw1_sets), "tw2a_configs": len(tw2a_sets),
           "tw2b_configs": len(tw2b_sets)}
    checked = 0
    worst = 0
    for key, sets in (("tw1", tw1_sets), ("tw2a", tw2a_sets), ("tw2b", tw2b_sets)):
        for rest in sets:
            for bit in iter_bits(rest):
                w = point_w.get(1 << bit, 0)
                checked += 1
                worst = max(worst, w)
                if w > bounds[key]:
                    return Certificate("technical_weights", "fail", hyp, bound=bounds[key],
                                       observed=w, witness=(ElementSet(n, 1 << bit),
                                                            ElementSet(n, rest)),
                                       notes=[key], checked=checked)
    if checked == 0:
        return Certificate("technical_weights", "vacuous", hyp)
    return Certificate("technical_weights", "pass", hyp, observed=worst, checked=checked,
                       notes=[f"bounds {bounds}"])


def certify_key_lemma(family: FlagFamily, alpha: int) -> Certificate:
    """Weight of {1} in a maximum left-shifted set of Gamma(n, 1, n-3), n >= 11.

    ``alpha`` is the independence number the caller has established; the family
    must reach it. Below n = 11 the statement is reported as vacuous together
    with the observed weight.
    """
    _require_1_nminus3(family)
    n = family.n
    if not is_independent(family):
        raise PreconditionError("family is not independent")
    w = weight_of_aset(family, ElementSet(n, 1))
    target = comb(n - 1, 3)
    hyp = {"n": n, "maximum": len(family) == alpha, "left_shifted": is_left_shifted(family)}
    if n < 11 or not hyp["maximum"] or not hyp["left_shifted"]:
        return Certificate("key_lemma", "vacuous", hyp, bound=target, observed=w)
    status = "pass" if w == target else "fail"
    return Certificate("key_lemma", status, hyp, bound=target, observed=w)
