import random
from math import comb

import pytest

import oracles
from flagkneser import (
    Flag,
    FlagFamily,
    GraphSpec,
    SolverConfig,
    alpha_bruteforce,
    alpha_exact,
    build_family_i,
    certify_lower_bound,
    is_independent,
    is_maximal_independent,
    known_alpha,
    verify_table2,
)
from flagkneser.setcore import full_mask, opposition_graph
from flagkneser.solver import (
    BruteForceRefused,
    SolverStats,
    _Incumbent,
    _Search,
    _refine,
    clique_cover_size,
    max_independent_set,
)


def _small_grid():
    """Every graph Gamma(n, T), |T| <= 2, with 2..40 vertices."""
    out = []
    for n in range(3, 9):
        types = [(k,) for k in range(1, n)]
        types += [(a, b) for a in range(1, n) for b in range(a + 1, n)]
        for t in types:
            spec = GraphSpec.of(n, *t)
            if 2 <= spec.vertex_count <= 40:
                out.append(spec)
    return out


GRID = _small_grid()


@pytest.mark.parametrize("sizes, n, expected", [((2,), 4, 3), ((1, 2), 5, 8), ((2,), 5, 4)])
def test_bruteforce_known(sizes, n, expected):
    res = alpha_bruteforce(GraphSpec.of(n, *sizes))
    assert res.optimal and res.alpha == expected
    assert is_independent(res.witness) and len(res.witness) == expected


def test_bruteforce_refuses_big_graphs():
    with pytest.raises(BruteForceRefused):
        alpha_bruteforce(GraphSpec.of(6, 1, 3))


@pytest.mark.parametrize("spec", GRID, ids=str)
def test_exact_matches_bruteforce(spec):
    expected = alpha_bruteforce(spec).alpha
    for cfg in (SolverConfig(use_symmetry=True), SolverConfig(use_symmetry=False),
                SolverConfig(left_shifted=True), SolverConfig(branching_rule="lexicographic"),
                SolverConfig(symmetry_depth=1)):
        res = alpha_exact(spec, cfg)
        assert res.optimal and res.alpha == expected, cfg
        assert is_independent(res.witness) and len(res.witness) == expected


@pytest.mark.parametrize("n, expected", [(5, 8), (6, 30), (7, 60)])
def test_table_rows_all_modes(n, expected):
    spec = GraphSpec.of(n, 1, n - 3)
    for cfg in (SolverConfig(), SolverConfig(left_shifted=True),
                SolverConfig(thread_count=3), SolverConfig(symmetry_depth=2)):
        res = alpha_exact(spec, cfg)
        assert res.optimal and res.alpha == expected
        assert is_maximal_independent(res.witness)


def test_symmetry_soundness_n7():
    spec = GraphSpec.of(7, 1, 4)
    plain = alpha_exact(spec, SolverConfig(use_symmetry=False))
    sym = alpha_exact(spec, SolverConfig(use_symmetry=True))
    assert plain.optimal and sym.optimal and plain.alpha == sym.alpha == 60


def test_n8_row():
    res = alpha_exact(GraphSpec.of(8, 1, 5))
    assert res.optimal and res.alpha == 105
    assert res.alpha == known_alpha(8, 1, 5).value == comb(7, 5) * 5


def _iso_check(n, cfg):
    for a in range(1, n):
        for b in range(a + 1, n):
            left = alpha_exact(GraphSpec.of(n, a, b), cfg)
            right = alpha_exact(GraphSpec.of(n, n - b, n - a), cfg)
            assert left.optimal and right.optimal
            assert left.alpha == right.alpha, (n, a, b)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_isomorphic_pairs_agree(n):
    _iso_check(n, SolverConfig())


def test_isomorphic_pairs_agree_n7_left_shifted():
    # orbit search needs minutes on Gamma(7,2,4); see the slow variant below
    _iso_check(7, SolverConfig(left_shifted=True))


@pytest.mark.slow
def test_isomorphic_pairs_agree_n7_orbits():
    _iso_check(7, SolverConfig())


def test_one_nminus2_values():
    for n, expected in [(5, 12), (6, 22), (7, 37)]:
        res = alpha_exact(GraphSpec.of(n, 1, n - 2))
        assert res.optimal and res.alpha == expected == comb(n, 3) + 2


def test_deterministic_single_thread():
    spec = GraphSpec.of(7, 1, 4)
    a, b = alpha_exact(spec), alpha_exact(spec)
    assert a.witness_vertices == b.witness_vertices
    assert a.stats.nodes == b.stats.nodes


def test_incumbent_never_decreases():
    res = alpha_exact(GraphSpec.of(7, 1, 4), SolverConfig(initial_incumbent=FlagFamily.of(
        GraphSpec.of(7, 1, 4), [Flag.of(7, [1], [1, 2, 3, 4])])))
    values = [v for _, v, _ in res.stats.improvements]
    assert values == sorted(values) and len(set(values)) == len(values)
    assert res.alpha == 60


def test_orbits_match_young_subgroup():
    rng = random.Random(0)
    n = 7
    g = opposition_graph(GraphSpec.of(n, 1, 4))
    search = _Search(g.adj, SolverConfig(), _Incumbent(0, 0, 0.0, SolverStats()),
                     SolverStats(), None, masks=g.masks, n=n)
    everything = (1 << g.size) - 1
    for _ in range(15):
        cells = (full_mask(n),)
        for v in rng.sample(range(g.size), rng.randint(0, 2)):
            cells = _refine(cells, g.masks[v], n)
        v = rng.randrange(g.size)
        orbit = search._orbit(v, everything, cells)
        cell_sets = [[b + 1 for b in range(n) if c >> b & 1] for c in cells]
        expected = oracles.young_orbit(oracles.to_frozen(g.flags[v]), cell_sets, n)
        got = {oracles.to_frozen(g.flags[u]) for u in range(g.size) if orbit >> u & 1}
        assert got == expected


def test_clique_cover_bounds_alpha():
    for spec in GRID[:15]:
        g = opposition_graph(spec)
        everything = (1 << g.size) - 1
        assert clique_cover_size(g.adj, everything) >= alpha_bruteforce(spec).alpha


def test_timeout_keeps_incumbent():
    res = alpha_exact(GraphSpec.of(12, 1, 9), SolverConfig(time_budget=0.3))
    assert res.status == "timeout"
    assert res.alpha >= comb(12, 4) + 42 == 537
    assert is_independent(res.witness)


def test_node_limit_reports_lower_bound():
    res = alpha_exact(GraphSpec.of(8, 1, 5), SolverConfig(node_limit=10))
    assert res.status == "lower_bound_only"
    assert not res.optimal and res.alpha <= 105


def test_config_validation():
    spec = GraphSpec.of(5, 1, 2)
    for bad in (SolverConfig(thread_count=0), SolverConfig(time_budget=0),
                SolverConfig(branching_rule="random"), SolverConfig(node_limit=0)):
        with pytest.raises(ValueError):
            alpha_exact(spec, bad)
    other = build_family_i(9, 1, 6, 0)
    with pytest.raises(ValueError):
        alpha_exact(spec, SolverConfig(initial_incumbent=other))


def test_verify_table2_small():
    rows = verify_table2(8)
    assert [(r.n, r.alpha, r.status) for r in rows] == [
        (5, 8, "pass"), (6, 30, "pass"), (7, 60, "pass"), (8, 105, "pass")]
    only = verify_table2(5)
    assert [(r.n, r.alpha) for r in only] == [(5, 8)]
    with pytest.raises(ValueError):
        verify_table2(11)


def test_verify_table2_tight_budget():
    rows = verify_table2(10, SolverConfig(time_budget=1.0), min_n=9)
    assert [r.status for r in rows] == ["inconclusive", "inconclusive"]
    assert [r.alpha for r in rows] == [168, 252]


def test_certify_lower_bound():
    spec = GraphSpec.of(12, 1, 9)
    cert = certify_lower_bound(spec, build_family_i(12, 1, 9, 3))
    assert cert.status == "pass" and cert.bound == 537
    assert certify_lower_bound(spec, FlagFamily.of(spec)).bound == 0
    spec4 = GraphSpec.of(4, 2)
    bad = FlagFamily.of(spec4, [Flag.of(4, [1, 2]), Flag.of(4, [3, 4])])
    cert = certify_lower_bound(spec4, bad)
    assert cert.status == "fail" and len(cert.witness) == 2


def test_max_independent_set_generic_graph():
    # 5-cycle and the Petersen graph
    c5 = [0b10010, 0b00101, 0b01010, 0b10100, 0b01001]
    assert max_independent_set(c5).alpha == 2
    g = opposition_graph(GraphSpec.of(5, 2))
    assert max_independent_set(g.adj).alpha == 4


@pytest.mark.slow
def test_n9_row_orbit_search():
    res = alpha_exact(GraphSpec.of(9, 1, 6))
    assert res.optimal and res.alpha == 168


def test_left_shifted_rows_9_10():
    for n, expected in [(9, 168), (10, 252)]:
        res = alpha_exact(GraphSpec.of(n, 1, n - 3), SolverConfig(left_shifted=True))
        assert res.optimal and res.alpha == expected
