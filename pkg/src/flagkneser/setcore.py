"""Subsets of [n], flags, opposition, and the vertex/edge structure of Gamma(n, T).

Subsets are stored as integer bit masks, element ``m`` living in bit ``m - 1``.
The user-facing types (:class:`ElementSet`, :class:`Flag`, :class:`FlagFamily`)
wrap those masks; the heavy lifting (solver, certificates) works on the raw
masks through :class:`OppositionGraph`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from math import comb, prod
from typing import Iterable, Iterator, Sequence

MAX_N = 62


class PreconditionError(ValueError):
    """An operation was called on input violating its documented precondition."""


def _check_n(n: int) -> None:
    if not isinstance(n, int) or not 1 <= n <= MAX_N:
        raise ValueError(f"ground set size must be an integer in [1, {MAX_N}], got {n!r}")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_of(members: Iterable[int]) -> int:
    m = 0
    for x in members:
        m |= 1 << (x - 1)
    return m


def members_of(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the (0-based) indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True, slots=True)
class ElementSet:
    """A subset of ``[n] = {1, ..., n}``."""

    n: int
    mask: int

    def __post_init__(self) -> None:
        _check_n(self.n)
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError(f"mask {self.mask:#x} has members outside [1, {self.n}]")

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> ElementSet:
        members = list(members)
        _check_n(n)
        for m in members:
            if not 1 <= m <= n:
                raise ValueError(f"member {m} outside [1, {n}]")
        return cls(n, mask_of(members))

    @classmethod
    def full(cls, n: int) -> ElementSet:
        return cls(n, full_mask(n))

    @classmethod
    def interval(cls, n: int, k: int) -> ElementSet:
        """The initial segment ``[k] = {1, ..., k}`` (empty for ``k = 0``)."""
        return cls(n, full_mask(k))

    @property
    def members(self) -> tuple[int, ...]:
        return members_of(self.mask)

    def cardinality(self) -> int:
        return self.mask.bit_count()

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, m: object) -> bool:
        return isinstance(m, int) and 1 <= m <= self.n and bool(self.mask >> (m - 1) & 1)

    def _same_n(self, other: ElementSet) -> None:
        if self.n != other.n:
            raise ValueError(f"ground-set sizes differ: {self.n} != {other.n}")

    def __or__(self, other: ElementSet) -> ElementSet:
        self._same_n(other)
        return ElementSet(self.n, self.mask | other.mask)

    def __and__(self, other: ElementSet) -> ElementSet:
        self._same_n(other)
        return ElementSet(self.n, self.mask & other.mask)

    def __sub__(self, other: ElementSet) -> ElementSet:
        self._same_n(other)
        return ElementSet(self.n, self.mask & ~other.mask)

    def complement(self) -> ElementSet:
        return ElementSet(self.n, full_mask(self.n) & ~self.mask)

    def issubset(self, other: ElementSet) -> bool:
        self._same_n(other)
        return self.mask & ~other.mask == 0

    def min(self) -> int:
        if not self.mask:
            raise ValueError("min() of the empty set")
        return (self.mask & -self.mask).bit_length()

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.members)) + "}"

    def __repr__(self) -> str:
        return f"ElementSet(n={self.n}, {self})"


@dataclass(frozen=True)
class FlagType:
    """The set of part sizes of a flag, as a strictly increasing tuple."""

    sizes: tuple[int, ...]
    n: int

    def __post_init__(self) -> None:
        _check_n(self.n)
        sizes = tuple(self.sizes)
        object.__setattr__(self, "sizes", sizes)
        if not sizes:
            raise ValueError("a flag type needs at least one size")
        if any(s <= t for t, s in zip(sizes, sizes[1:])):
            raise ValueError(f"type sizes must be strictly increasing, got {sizes}")
        if sizes[0] < 1 or sizes[-1] > self.n - 1:
            raise ValueError(f"type sizes must lie in [1, {self.n - 1}], got {sizes}")

    def __len__(self) -> int:
        return len(self.sizes)

    def __iter__(self) -> Iterator[int]:
        return iter(self.sizes)

    def __str__(self) -> str:
        return ",".join(map(str, self.sizes))


@dataclass(frozen=True)
class Flag:
    """A strictly nested chain of non-empty proper subsets, smallest part first."""

    n: int
    parts: tuple[ElementSet, ...]

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts:
            raise ValueError("a flag needs at least one part")
        full = full_mask(self.n)
        for p in parts:
            if p.n != self.n:
                raise ValueError("flag parts live on a different ground set")
            if p.mask == 0 or p.mask == full:
                raise ValueError("flag parts must be non-empty proper subsets")
        for small, big in zip(parts, parts[1:]):
            if small.mask & ~big.mask or small.mask == big.mask:
                raise ValueError(f"flag parts are not strictly nested: {small} vs {big}")

    @classmethod
    def of(cls, n: int, *parts: Iterable[int]) -> Flag:
        """``Flag.of(7, [1], [1, 2, 3, 4])``; parts may be given in any order."""
        sets = sorted((ElementSet.of(n, p) for p in parts), key=len)
        return cls(n, tuple(sets))

    @classmethod
    def from_masks(cls, n: int, masks: Sequence[int]) -> Flag:
        # trusted constructor: masks already validated and sorted by size
        f = object.__new__(cls)
        object.__setattr__(f, "n", n)
        object.__setattr__(f, "parts", tuple(ElementSet(n, m) for m in masks))
        return f

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(p.mask for p in self.parts)

    @property
    def flag_type(self) -> FlagType:
        return FlagType(tuple(len(p) for p in self.parts), self.n)

    def __iter__(self) -> Iterator[ElementSet]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def sort_key(self) -> tuple[int, ...]:
        """Lexicographic on the bit encodings, outermost part first."""
        return self.masks[::-1]

    def __lt__(self, other: Flag) -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)

    def __repr__(self) -> str:
        return f"Flag(n={self.n}, {self})"


@dataclass(frozen=True)
class GraphSpec:
    """The pair (n, T) defining Gamma(n, T)."""

    n: int
    flag_type: FlagType

    @classmethod
    def of(cls, n: int, *sizes: int) -> GraphSpec:
        return cls(n, FlagType(tuple(sizes), n))

    def __post_init__(self) -> None:
        if self.flag_type.n != self.n:
            raise ValueError("flag type belongs to a different ground set")

    @property
    def sizes(self) -> tuple[int, ...]:
        return self.flag_type.sizes

    @property
    def vertex_count(self) -> int:
        chain = (self.n,) + self.sizes[::-1]
        return prod(comb(big, small) for big, small in zip(chain, chain[1:]))

    def __str__(self) -> str:
        return f"Gamma({self.n},{{{self.flag_type}}})"


@dataclass(frozen=True)
class FlagFamily:
    """A set of flags of one common type, iterated in canonical order."""

    n: int
    flag_type: FlagType
    flags: frozenset[Flag] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        flags = frozenset(self.flags)
        object.__setattr__(self, "flags", flags)
        for f in flags:
            if f.n != self.n or tuple(len(p) for p in f.parts) != self.flag_type.sizes:
                raise ValueError(f"flag {f} does not have type {{{self.flag_type}}} on [{self.n}]")

    @classmethod
    def of(cls, spec: GraphSpec, flags: Iterable[Flag] = ()) -> FlagFamily:
        return cls(spec.n, spec.flag_type, frozenset(flags))

    @classmethod
    def _trusted(cls, spec: GraphSpec, flags: Iterable[Flag]) -> FlagFamily:
        fam = object.__new__(cls)
        object.__setattr__(fam, "n", spec.n)
        object.__setattr__(fam, "flag_type", spec.flag_type)
        object.__setattr__(fam, "flags", frozenset(flags))
        return fam

    @property
    def spec(self) -> GraphSpec:
        return GraphSpec(self.n, self.flag_type)

    @cached_property
    def ordered(self) -> tuple[Flag, ...]:
        return tuple(sorted(self.flags, key=Flag.sort_key))

    def __iter__(self) -> Iterator[Flag]:
        return iter(self.ordered)

    def __len__(self) -> int:
        return len(self.flags)

    def __contains__(self, f: object) -> bool:
        return f in self.flags

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FlagFamily):
            return NotImplemented
        return (self.n, self.flag_type.sizes, self.flags) == (
            other.n, other.flag_type.sizes, other.flags)

    def __hash__(self) -> int:
        return hash((self.n, self.flag_type.sizes, self.flags))

    def with_flags(self, flags: Iterable[Flag]) -> FlagFamily:
        return FlagFamily._trusted(self.spec, flags)


# -- opposition ---------------------------------------------------------------

def _masks_opposite(x: int, y: int, full: int) -> bool:
    return x & y == 0 or x | y == full


def elements_opposite(x: ElementSet, y: ElementSet) -> bool:
    """True iff the two subsets are disjoint or together cover [n]."""
    if x.n != y.n:
        raise ValueError(f"ground-set sizes differ: {x.n} != {y.n}")
    return _masks_opposite(x.mask, y.mask, full_mask(x.n))


def _opposite_general(f1: Flag, f2: Flag) -> bool:
    full = full_mask(f1.n)
    return all(_masks_opposite(x, y, full) for x in f1.masks for y in f2.masks)


def lemma_hypotheses_hold(n: int, sizes: Sequence[int]) -> bool:
    """Whether type {a, b} satisfies a + b < n and a < n/2 < b."""
    if len(sizes) != 2:
        return False
    a, b = sizes
    return a + b < n and 2 * a < n < 2 * b


def opposite_by_lemma(f1: Flag, f2: Flag) -> bool:
    """Three-condition opposition test for vertices (A, B) of Gamma(n, a, b).

    Only valid when ``a + b < n`` and ``a < n/2 < b``; callers are responsible
    for checking that.
    """
    (a1, b1), (a2, b2) = f1.masks, f2.masks
    return b1 | b2 == full_mask(f1.n) and a1 & b2 == 0 and a2 & b1 == 0


def flags_opposite(f1: Flag, f2: Flag) -> bool:
    """True iff every part of ``f1`` is opposite to every part of ``f2``."""
    if f1.n != f2.n:
        raise ValueError(f"ground-set sizes differ: {f1.n} != {f2.n}")
    sizes = tuple(len(p) for p in f1.parts)
    if (len(sizes) == 2 and sizes == tuple(len(p) for p in f2.parts)
            and lemma_hypotheses_hold(f1.n, sizes)):
        return opposite_by_lemma(f1, f2)
    return _opposite_general(f1, f2)


def complement_flag(f: Flag) -> Flag:
    """Replace every part by its complement; maps Gamma(n,a,b) onto Gamma(n,n-b,n-a)."""
    full = full_mask(f.n)
    return Flag.from_masks(f.n, [full & ~m for m in reversed(f.masks)])


# -- enumeration and the opposition graph -------------------------------------

def _chains(n: int, sizes: tuple[int, ...]) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []

    def extend(top: int, level: int, acc: tuple[int, ...]) -> None:
        if level < 0:
            out.append(acc)
            return
        elements = [i for i in range(n) if top >> i & 1]
        for c in combinations(elements, sizes[level]):
            m = 0
            for i in c:
                m |= 1 << i
            extend(m, level - 1, (m,) + acc)

    extend(full_mask(n), len(sizes) - 1, ())
    out.sort(key=lambda masks: masks[::-1])
    return out


def enumerate_flags(spec: GraphSpec) -> list[Flag]:
    """All flags of type ``spec.flag_type``, lexicographic on masks, outermost part first."""
    return list(opposition_graph(spec).flags)


class OppositionGraph:
    """Gamma(n, T) with vertices indexed in enumeration order and bitset adjacency."""

    def __init__(self, spec: GraphSpec):
        self.spec = spec
        self.n = spec.n
        self.masks: list[tuple[int, ...]] = _chains(spec.n, spec.sizes)
        self.flags: tuple[Flag, ...] = tuple(Flag.from_masks(spec.n, m) for m in self.masks)
        self.index: dict[tuple[int, ...], int] = {m: k for k, m in enumerate(self.masks)}
        self.size = len(self.masks)
        self.adj: list[int] = self._build_adjacency()

    def _build_adjacency(self) -> list[int]:
        full = full_mask(self.n)
        levels = len(self.spec.sizes)
        # by_value[l][m]: bitset of vertices whose level-l part equals m
        by_value: list[dict[int, int]] = [{} for _ in range(levels)]
        for k, masks in enumerate(self.masks):
            for lvl, m in enumerate(masks):
                by_value[lvl][m] = by_value[lvl].get(m, 0) | (1 << k)
        cache: dict[tuple[int, int], int] = {}

        def opposite_at(lvl: int, x: int) -> int:
            key = (lvl, x)
            bits = cache.get(key)
            if bits is None:
                bits = 0
                for y, vs in by_value[lvl].items():
                    if _masks_opposite(x, y, full):
                        bits |= vs
                cache[key] = bits
            return bits

        everything = (1 << self.size) - 1
        adj = []
        for masks in self.masks:
            row = everything
            for x in masks:
                for lvl in range(levels):
                    row &= opposite_at(lvl, x)
                    if not row:
                        break
            adj.append(row)
        return adj

    def vertex(self, f: Flag) -> int:
        try:
            return self.index[f.masks]
        except KeyError:
            raise ValueError(f"{f} is not a vertex of {self.spec}") from None

    def mask_of_family(self, flags: Iterable[Flag]) -> int:
        m = 0
        for f in flags:
            m |= 1 << self.vertex(f)
        return m

    def family_of_mask(self, mask: int) -> FlagFamily:
        return FlagFamily._trusted(self.spec, (self.flags[v] for v in iter_bits(mask)))

    def is_independent_mask(self, mask: int) -> bool:
        adj = self.adj
        return all(not adj[v] & mask for v in iter_bits(mask))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        """Unordered opposite pairs ``(u, v)`` with ``u < v``, lexicographically."""
        for u, row in enumerate(self.adj):
            for v in iter_bits(row >> (u + 1)):
                yield u, u + 1 + v


@lru_cache(maxsize=32)
def opposition_graph(spec: GraphSpec) -> OppositionGraph:
    return OppositionGraph(spec)


def is_independent(family: FlagFamily) -> bool:
    """True iff no two flags of the family are opposite."""
    if len(family) < 2:
        return True
    g = opposition_graph(family.spec)
    return g.is_independent_mask(g.mask_of_family(family.flags))


def opposite_pair(family: FlagFamily) -> tuple[Flag, Flag] | None:
    """Some opposite pair inside the family, or None if it is independent."""
    g = opposition_graph(family.spec)
    mask = g.mask_of_family(family.flags)
    for v in iter_bits(mask):
        hit = g.adj[v] & mask
        if hit:
            return g.flags[v], g.flags[(hit & -hit).bit_length() - 1]
    return None


def addable_mask(g: OppositionGraph, mask: int) -> int:
    """Vertices outside ``mask`` with no neighbour inside it."""
    blocked = mask
    for v in iter_bits(mask):
        blocked |= g.adj[v]
    return ((1 << g.size) - 1) & ~blocked


def is_maximal_independent(family: FlagFamily) -> bool:
    if not is_independent(family):
        raise PreconditionError("family is not independent")
    g = opposition_graph(family.spec)
    return addable_mask(g, g.mask_of_family(family.flags)) == 0


def closure_mask(g: OppositionGraph, mask: int, order: Sequence[int] | None = None) -> int:
    """Greedily add addable vertices, scanning ``order`` (enumeration order by default)."""
    blocked = mask
    for v in iter_bits(mask):
        blocked |= g.adj[v]
    for v in order if order is not None else range(g.size):
        if not blocked >> v & 1:
            mask |= 1 << v
            blocked |= g.adj[v] | (1 << v)
    return mask


def maximal_closure(family: FlagFamily) -> FlagFamily:
    """Extend an independent family to a maximal one, adding flags in enumeration order."""
    if not is_independent(family):
        raise PreconditionError("family is not independent")
    g = opposition_graph(family.spec)
    return g.family_of_mask(closure_mask(g, g.mask_of_family(family.flags)))


def random_independent_family(spec: GraphSpec, rng: random.Random,
                              size: int | None = None) -> FlagFamily:
    """A random independent family: random greedy insertion, stopped at ``size``.

    With ``size=None`` the stopping size is itself drawn uniformly, so both small
    and maximal families occur.
    """
    g = opposition_graph(spec)
    order = list(range(g.size))
    rng.shuffle(order)
    limit = rng.randint(1, g.size) if size is None else size
    mask = blocked = 0
    count = 0
    for v in order:
        if count >= limit:
            break
        if not blocked >> v & 1:
            mask |= 1 << v
            blocked |= g.adj[v] | (1 << v)
            count += 1
    return g.family_of_mask(mask)
