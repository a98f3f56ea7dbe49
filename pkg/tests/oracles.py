"""Slow, definition-level reference implementations used only by the tests.

Nothing here touches the package's bit tricks: sets are frozensets, flags are
tuples of frozensets, and every predicate is spelled out literally.
"""

from itertools import combinations, permutations


def all_flags(n, sizes):
    ground = range(1, n + 1)
    out = []

    def extend(top, level, acc):
        if level < 0:
            out.append(tuple(acc))
            return
        for c in combinations(sorted(top), sizes[level]):
            extend(frozenset(c), level - 1, [frozenset(c)] + acc)

    extend(frozenset(ground), len(sizes) - 1, [])
    return out


def sets_opposite(x, y, n):
    return not (x & y) or (x | y) == frozenset(range(1, n + 1))


def flags_opposite(f, g, n):
    return all(sets_opposite(x, y, n) for x in f for y in g)


def opposite_pairs(n, sizes):
    flags = all_flags(n, sizes)
    return [(f, g) for f, g in combinations(flags, 2) if flags_opposite(f, g, n)]


def shift(x, i, j):
    if i in x and j not in x:
        return (x - {i}) | {j}
    return x


def shift_flag(f, i, j):
    return tuple(shift(x, i, j) for x in f)


def family_shift(family, i, j):
    fam = set(family)
    return {shift_flag(f, i, j) if shift_flag(f, i, j) not in fam else f for f in fam}


def independent(family, n):
    return not any(flags_opposite(f, g, n) for f, g in combinations(list(family), 2))


def young_orbit(flag, cells, n):
    """Orbit of a flag under all permutations of [n] preserving every cell."""
    cells = [sorted(c) for c in cells]
    orbit = set()

    def rec(k, mapping):
        if k == len(cells):
            orbit.add(tuple(frozenset(mapping[x] for x in part) for part in flag))
            return
        for img in permutations(cells[k]):
            m = dict(mapping)
            m.update(zip(cells[k], img))
            rec(k + 1, m)

    rec(0, {})
    return orbit


def to_frozen(f):
    """Package Flag -> tuple of frozensets."""
    return tuple(frozenset(p.members) for p in f.parts)
