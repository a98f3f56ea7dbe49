"""The i,j-shift on subsets, flags and families, and left-shift normalisation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .certificate import Certificate
from .setcore import (
    ElementSet,
    Flag,
    FlagFamily,
    PreconditionError,
    is_independent,
)


@dataclass(frozen=True)
class ShiftPair:
    """Indices ``(i, j)`` of the shift that replaces ``i`` by ``j``."""

    i: int
    j: int

    def check(self, n: int) -> None:
        if not (1 <= self.i <= n and 1 <= self.j <= n):
            raise ValueError(f"shift indices ({self.i},{self.j}) outside [1, {n}]")

    @property
    def is_left(self) -> bool:
        return self.i >= self.j


def _pair(p: ShiftPair | tuple[int, int]) -> ShiftPair:
    return p if isinstance(p, ShiftPair) else ShiftPair(*p)


def shift_mask(x: int, i: int, j: int) -> int:
    """Shift on a raw mask; ``i`` and ``j`` are 1-based elements."""
    bi, bj = 1 << (i - 1), 1 << (j - 1)
    if x & bi and not x & bj:
        return x ^ bi ^ bj
    return x


def shift_masks(masks: tuple[int, ...], i: int, j: int) -> tuple[int, ...]:
    return tuple(shift_mask(x, i, j) for x in masks)


def shift_set(x: ElementSet, p: ShiftPair | tuple[int, int]) -> ElementSet:
    p = _pair(p)
    p.check(x.n)
    return ElementSet(x.n, shift_mask(x.mask, p.i, p.j))


def shift_flag(f: Flag, p: ShiftPair | tuple[int, int]) -> Flag:
    p = _pair(p)
    p.check(f.n)
    image = shift_masks(f.masks, p.i, p.j)
    return f if image == f.masks else Flag.from_masks(f.n, image)


def _shift_family_unchecked(family: FlagFamily, i: int, j: int) -> FlagFamily:
    present = {f.masks for f in family.flags}
    out = []
    changed = False
    for f in family.flags:
        image = shift_masks(f.masks, i, j)
        if image != f.masks and image not in present:
            out.append(Flag.from_masks(family.n, image))
            changed = True
        else:
            out.append(f)
    return family.with_flags(out) if changed else family


def shift_family(family: FlagFamily, p: ShiftPair | tuple[int, int]) -> FlagFamily:
    """Conditional shift: a flag moves only if its image is not already a member.

    Membership is tested against the original family for every flag.
    """
    p = _pair(p)
    p.check(family.n)
    if not is_independent(family):
        raise PreconditionError("shift_family needs an independent family")
    return _shift_family_unchecked(family, p.i, p.j)


def left_shift_pairs(n: int) -> Iterator[tuple[int, int]]:
    """Pairs ``(i, j)`` with ``i > j`` in lexicographic order of ``(j, i)``."""
    for j in range(1, n + 1):
        for i in range(j + 1, n + 1):
            yield i, j


def shift_potential(family: FlagFamily) -> int:
    """Sum of all elements over all parts of all flags; left-shifts decrease it."""
    return sum(sum(p.members) for f in family.flags for p in f.parts)


def left_shift_normalize(family: FlagFamily) -> FlagFamily:
    """Apply left-shifts until a fixed point is reached.

    Sweeps the pairs of :func:`left_shift_pairs` repeatedly until one whole sweep
    changes nothing. Size and independence are preserved at every step.
    """
    if not is_independent(family):
        raise PreconditionError("left_shift_normalize needs an independent family")
    pairs = list(left_shift_pairs(family.n))
    while True:
        before = family
        for i, j in pairs:
            family = _shift_family_unchecked(family, i, j)
        if family == before:
            return family


def is_left_shifted(family: FlagFamily) -> bool:
    # S_ij(F) == F exactly when every image S_ij(f) is already a member
    present = {f.masks for f in family.flags}
    for f in family.flags:
        for i, j in left_shift_pairs(family.n):
            if shift_masks(f.masks, i, j) not in present:
                return False
    return True


def certify_ab_properties(family: FlagFamily) -> Certificate:
    """Structure of left-shifted independent sets of Gamma(n, 1, n-3) missing 1 in B.

    If more than ``n - 3`` flags have ``1`` outside their large part, two of them
    must share the point ``{2}`` with different large parts avoiding ``n``.
    """
    n = family.n
    if family.flag_type.sizes != (1, n - 3):
        raise PreconditionError("certify_ab_properties expects type {1, n-3}")
    if not is_independent(family) or not is_left_shifted(family):
        raise PreconditionError("family must be independent and left-shifted")
    bit1, bit2, bitn = 1, 2, 1 << (n - 1)
    outside = [f for f in family if not f.masks[1] & bit1]
    hyp = {"n": n, "|F2|": len(outside), "threshold": n - 3}
    if len(outside) <= n - 3:
        return Certificate("ab_properties", "vacuous", hyp, bound=n - 3,
                           observed=len(outside))
    candidates = [f for f in outside if f.masks[0] == bit2 and not f.masks[1] & bitn]
    large_parts = {f.masks[1]: f for f in candidates}
    if len(large_parts) >= 2:
        pair = tuple(list(large_parts.values())[:2])
        return Certificate("ab_properties", "pass", hyp, observed=len(large_parts),
                           witness=pair)
    return Certificate("ab_properties", "fail", hyp, observed=len(large_parts),
                       witness=tuple(outside[:2]),
                       notes=["no two flags with A={2}, distinct B, n outside both B"])
