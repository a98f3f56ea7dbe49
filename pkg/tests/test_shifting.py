import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from flagkneser import (
    ElementSet,
    Flag,
    FlagFamily,
    GraphSpec,
    PreconditionError,
    ShiftPair,
    build_family_i,
    enumerate_flags,
    is_independent,
    is_left_shifted,
    left_shift_normalize,
    shift_family,
    shift_flag,
    shift_set,
)
from flagkneser.setcore import maximal_closure, opposition_graph, random_independent_family
from flagkneser.shifting import (
    certify_ab_properties,
    left_shift_pairs,
    shift_masks,
    shift_potential,
)


def test_shift_set_examples():
    assert shift_set(ElementSet.of(4, [1, 2]), (3, 2)) == ElementSet.of(4, [1, 2])
    assert shift_set(ElementSet.of(4, [3, 4]), (3, 2)) == ElementSet.of(4, [2, 4])
    # j already present
    assert shift_set(ElementSet.of(4, [2, 3]), (3, 2)) == ElementSet.of(4, [2, 3])


def test_shift_pair_checks():
    with pytest.raises(ValueError):
        shift_set(ElementSet.of(4, [1]), (5, 1))
    with pytest.raises(ValueError):
        shift_set(ElementSet.of(4, [1]), (0, 1))
    assert ShiftPair(3, 2).is_left and ShiftPair(2, 2).is_left
    assert not ShiftPair(2, 3).is_left


@given(st.integers(1, 10).flatmap(lambda n: st.tuples(
    st.just(n), st.sets(st.integers(1, n)), st.integers(1, n), st.integers(1, n))))
def test_shift_set_matches_oracle(args):
    n, xs, i, j = args
    got = shift_set(ElementSet.of(n, xs), (i, j))
    assert set(got.members) == oracles.shift(frozenset(xs), i, j)


def test_shift_flag_example():
    assert shift_flag(Flag.of(4, [3], [3, 4]), (3, 2)) == Flag.of(4, [2], [2, 4])


@settings(max_examples=200)
@given(st.randoms(use_true_random=False), st.integers(1, 10), st.integers(1, 10))
def test_shift_flag_preserves_nesting(rng, i, j):
    # random flag of type {1,7} on [10]
    big = rng.sample(range(1, 11), 7)
    f = Flag.of(10, [big[0]], big)
    g = shift_flag(f, (i, j))
    assert g.flag_type.sizes == (1, 7)
    assert g.parts[0].issubset(g.parts[1])
    assert oracles.to_frozen(g) == oracles.shift_flag(oracles.to_frozen(f), i, j)


def test_shift_family_singleton_and_f0():
    spec = GraphSpec.of(4, 1, 2)
    single = FlagFamily.of(spec, [Flag.of(4, [3], [3, 4])])
    assert shift_family(single, (3, 2)) == FlagFamily.of(spec, [Flag.of(4, [2], [2, 4])])
    f0 = build_family_i(9, 1, 6, 0)
    for i, j in left_shift_pairs(9):
        assert shift_family(f0, (i, j)) == f0


def test_shift_family_matches_oracle():
    rng = random.Random(3)
    spec = GraphSpec.of(7, 1, 4)
    for _ in range(30):
        fam = random_independent_family(spec, rng)
        i, j = rng.randint(1, 7), rng.randint(1, 7)
        got = {oracles.to_frozen(f) for f in shift_family(fam, (i, j))}
        assert got == oracles.family_shift([oracles.to_frozen(f) for f in fam], i, j)


def test_shift_family_needs_independence():
    spec = GraphSpec.of(4, 2)
    bad = FlagFamily.of(spec, [Flag.of(4, [1, 2]), Flag.of(4, [3, 4])])
    with pytest.raises(PreconditionError):
        shift_family(bad, (3, 2))
    with pytest.raises(PreconditionError):
        left_shift_normalize(bad)


def test_shift_family_random_invariants_n7():
    rng = random.Random(0)
    spec = GraphSpec.of(7, 1, 4)
    for _ in range(500):
        fam = random_independent_family(spec, rng)
        out = shift_family(fam, (rng.randint(1, 7), rng.randint(1, 7)))
        assert len(out) == len(fam)
        assert is_independent(out)


def _non_opposition_check(n, sizes):
    g = opposition_graph(GraphSpec.of(n, *sizes))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            image = [g.index[shift_masks(m, i, j)] for m in g.masks]
            for u in range(g.size):
                non_opp = ~g.adj[u] & ((1 << g.size) - 1)
                for v in range(u + 1, g.size):
                    if non_opp >> v & 1:
                        assert not g.adj[image[u]] >> image[v] & 1, (u, v, i, j)


@pytest.mark.parametrize("n, sizes", [
    (n, t) for n in range(3, 7)
    for t in [(k,) for k in range(1, n)] + [(a, b) for a in range(1, n) for b in range(a + 1, n)]
])
def test_non_opposition_preserved_exhaustive(n, sizes):
    _non_opposition_check(n, sizes)


def test_non_opposition_preserved_random_n10():
    rng = random.Random(11)
    flags = enumerate_flags(GraphSpec.of(10, 1, 7))
    for _ in range(3000):
        f, g = rng.sample(flags, 2)
        ff, gg = oracles.to_frozen(f), oracles.to_frozen(g)
        if oracles.flags_opposite(ff, gg, 10):
            continue
        i, j = rng.sample(range(1, 11), 2)
        assert not oracles.flags_opposite(oracles.shift_flag(ff, i, j),
                                          oracles.shift_flag(gg, i, j), 10)


def test_normalize_singleton():
    spec = GraphSpec.of(7, 1, 4)
    single = FlagFamily.of(spec, [Flag.of(7, [3], [3, 4, 5, 6])])
    assert not is_left_shifted(single)
    out = left_shift_normalize(single)
    assert out == FlagFamily.of(spec, [Flag.of(7, [1], [1, 2, 3, 4])])
    assert is_left_shifted(out)


def test_normalize_fixed_point_and_potential():
    rng = random.Random(1)
    spec = GraphSpec.of(7, 1, 4)
    for _ in range(100):
        fam = random_independent_family(spec, rng)
        # every productive left shift strictly lowers the potential
        for i, j in left_shift_pairs(7):
            out = shift_family(fam, (i, j))
            if out != fam:
                assert shift_potential(out) < shift_potential(fam)
        norm = left_shift_normalize(fam)
        assert len(norm) == len(fam) and is_independent(norm) and is_left_shifted(norm)
        assert left_shift_normalize(norm) == norm
        members = {f.masks for f in norm.flags}
        for f in norm.flags:
            for i, j in left_shift_pairs(7):
                assert shift_masks(f.masks, i, j) in members


def test_normalize_keeps_maximum_size():
    from flagkneser import SolverConfig, alpha_exact
    res = alpha_exact(GraphSpec.of(7, 1, 4), SolverConfig())
    norm = left_shift_normalize(res.witness)
    assert len(norm) == 60 and is_independent(norm) and is_left_shifted(norm)


def test_is_left_shifted_cases():
    spec = GraphSpec.of(7, 1, 4)
    assert is_left_shifted(FlagFamily.of(spec))
    assert not is_left_shifted(FlagFamily.of(spec, [Flag.of(7, [3], [3, 4, 5, 6])]))
    for n, b, i in [(9, 6, 0), (10, 7, 0), (8, 5, 0)]:
        assert is_left_shifted(build_family_i(n, 1, b, i))


def test_is_left_shifted_agrees_with_definition():
    rng = random.Random(4)
    spec = GraphSpec.of(6, 1, 3)
    for _ in range(100):
        fam = random_independent_family(spec, rng)
        fam = left_shift_normalize(fam) if rng.random() < 0.5 else fam
        by_def = all(shift_family(fam, p) == fam for p in left_shift_pairs(6))
        assert is_left_shifted(fam) == by_def


@pytest.mark.parametrize("n", [7, 8])
def test_ab_properties_on_random_left_shifted(n):
    rng = random.Random(n)
    spec = GraphSpec.of(n, 1, n - 3)
    statuses = set()
    for _ in range(60):
        fam = left_shift_normalize(maximal_closure(random_independent_family(spec, rng)))
        cert = certify_ab_properties(fam)
        assert cert.ok, cert.summary()
        statuses.add(cert.status)
    assert statuses <= {"pass", "vacuous"}


def test_ab_properties_preconditions():
    with pytest.raises(PreconditionError):
        certify_ab_properties(build_family_i(9, 2, 5, 0))
    spec = GraphSpec.of(7, 1, 4)
    with pytest.raises(PreconditionError):
        certify_ab_properties(FlagFamily.of(spec, [Flag.of(7, [3], [3, 4, 5, 6])]))
    assert certify_ab_properties(FlagFamily.of(spec)).status == "vacuous"
