"""Exact independence numbers of Gamma(n, T).

Three search modes share one branch-and-bound core (bound: current size plus a
greedy clique cover of the remaining candidates):

* plain: binary include/exclude branching on single vertices;
* orbits (default): Sym(n) acts on flags by permuting [n]. The candidate set
  is always invariant under the Young subgroup fixing every chosen flag, so a
  whole orbit can be excluded at once after branching on its representative;
* left-shifted: search only families closed under left-shifts. Shifting turns
  any maximum independent set into a left-shifted one of equal size, so this
  is exact as well, and much smaller.
"""

from __future__ import annotations

import logging
import sys
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .certificate import Certificate
from .families import TABLE2, best_family
from .setcore import (
    FlagFamily,
    GraphSpec,
    OppositionGraph,
    PreconditionError,
    closure_mask,
    full_mask,
    is_independent,
    iter_bits,
    opposite_pair,
    opposition_graph,
)
from .shifting import left_shift_normalize, left_shift_pairs, shift_masks

log = logging.getLogger(__name__)

BRUTEFORCE_CAP = 40
BRANCHING_RULES = ("max_degree", "lexicographic")


class BruteForceRefused(ValueError):
    pass


@dataclass
class SolverConfig:
    time_budget: float | None = None
    use_symmetry: bool = True
    initial_incumbent: FlagFamily | None = None
    thread_count: int = 1
    branching_rule: str = "max_degree"
    # restrict to left-shifted families; replaces the orbit reduction when set
    left_shifted: bool = False
    # include-depth up to which orbits are used; None means until the group is trivial
    symmetry_depth: int | None = None
    node_limit: int | None = None

    def validate(self) -> None:
        if self.thread_count < 1:
            raise ValueError("thread_count must be >= 1")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("time_budget must be positive")
        if self.branching_rule not in BRANCHING_RULES:
            raise ValueError(f"branching_rule must be one of {BRANCHING_RULES}")
        if self.symmetry_depth is not None and self.symmetry_depth < 0:
            raise ValueError("symmetry_depth must be >= 0")
        if self.node_limit is not None and self.node_limit < 1:
            raise ValueError("node_limit must be >= 1")


@dataclass
class SolverStats:
    nodes: int = 0
    bound_prunes: int = 0
    symmetry_prunes: int = 0
    wall_time: float = 0.0
    mode: str = ""
    # (seconds since start, value, nodes) at every incumbent improvement
    improvements: list[tuple[float, int, int]] = field(default_factory=list)


@dataclass
class SolverResult:
    spec: GraphSpec | None
    alpha: int
    witness: FlagFamily | None
    status: str  # optimal | lower_bound_only | timeout
    stats: SolverStats
    witness_vertices: tuple[int, ...] = ()

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


class _Stop(Exception):
    def __init__(self, status: str):
        self.status = status


class _Incumbent:
    """Best value found so far; shared by all workers, never decreases."""

    def __init__(self, value: int, mask: int, started: float, stats: SolverStats):
        self.value = value
        self.mask = mask
        self._lock = threading.Lock()
        self._started = started
        self._stats = stats

    def offer(self, value: int, mask: int, nodes: int) -> None:
        with self._lock:
            if value > self.value:
                self.value = value
                self.mask = mask
                elapsed = time.monotonic() - self._started
                self._stats.improvements.append((elapsed, value, nodes))
                log.info("t=%.3fs new bound %d after %d nodes", elapsed, value, nodes)


def clique_cover_size(adj: Sequence[int], cand: int, limit: int | None = None) -> int:
    """Number of cliques in a greedy clique cover of ``cand`` (stops past ``limit``)."""
    k = 0
    while cand:
        low = cand & -cand
        cand ^= low
        c = cand & adj[low.bit_length() - 1]
        while c:
            low = c & -c
            cand ^= low
            c &= adj[low.bit_length() - 1]
        k += 1
        if limit is not None and k > limit:
            return k
    return k


def _refine(cells: tuple[int, ...], masks: tuple[int, ...], n: int) -> tuple[int, ...]:
    atoms = []
    prev = 0
    for m in masks + (full_mask(n),):
        atoms.append(m & ~prev)
        prev = m
    return tuple(c & a for c in cells for a in atoms if c & a)


class _Search:
    def __init__(self, adj: Sequence[int], cfg: SolverConfig, incumbent: _Incumbent,
                 stats: SolverStats, deadline: float | None,
                 masks: Sequence[tuple[int, ...]] | None = None, n: int = 0):
        self.adj = adj
        self.cfg = cfg
        self.inc = incumbent
        self.stats = stats
        self.deadline = deadline
        self.masks = masks
        self.n = n
        self._lock = threading.Lock()

    def _tick(self) -> None:
        with self._lock:
            self.stats.nodes += 1
            nodes = self.stats.nodes
        if self.deadline is not None and nodes & 63 == 0 and time.monotonic() > self.deadline:
            raise _Stop("timeout")
        if self.cfg.node_limit is not None and nodes > self.cfg.node_limit:
            raise _Stop("lower_bound_only")

    def _select(self, cand: int) -> int:
        if self.cfg.branching_rule == "lexicographic":
            return (cand & -cand).bit_length() - 1
        adj = self.adj
        best_v, best_d = -1, -1
        for v in iter_bits(cand):
            d = (adj[v] & cand).bit_count()
            if d > best_d:
                best_v, best_d = v, d
        return best_v

    def _orbit(self, v: int, cand: int, cells: tuple[int, ...]) -> int:
        masks = self.masks
        sig = [(m & c).bit_count() for m in masks[v] for c in cells]
        orbit = 0
        for u in iter_bits(cand):
            if [(m & c).bit_count() for m in masks[u] for c in cells] == sig:
                orbit |= 1 << u
        return orbit

    def run(self, count: int, cand: int, chosen: int, cells: tuple[int, ...] | None,
            depth: int = 0) -> None:
        """Branch and bound below a node; ``cells`` is None once symmetry is off."""
        adj = self.adj
        while True:
            self._tick()
            if count > self.inc.value:
                self.inc.offer(count, chosen, self.stats.nodes)
            if not cand:
                return
            best = self.inc.value
            if count + clique_cover_size(adj, cand, best - count) <= best:
                self.stats.bound_prunes += 1
                return
            v = self._select(cand)
            bit = 1 << v
            if cells is not None:
                orbit = self._orbit(v, cand, cells)
                sub = _refine(cells, self.masks[v], self.n)
                if len(sub) == self.n or (self.cfg.symmetry_depth is not None
                                          and depth + 1 >= self.cfg.symmetry_depth):
                    sub = None
            else:
                orbit, sub = bit, None
            self.run(count + 1, cand & ~adj[v] & ~bit, chosen | bit, sub, depth + 1)
            if orbit != bit:
                self.stats.symmetry_prunes += orbit.bit_count() - 1
            cand &= ~orbit

    def root_tasks(self, cand: int, cells: tuple[int, ...] | None):
        """Split the root into independent subtrees: include v_k, exclude orbits before it."""
        tasks = []
        while cand:
            v = self._select(cand)
            bit = 1 << v
            if cells is not None:
                orbit = self._orbit(v, cand, cells)
                sub = _refine(cells, self.masks[v], self.n)
                if len(sub) == self.n or (self.cfg.symmetry_depth is not None
                                          and self.cfg.symmetry_depth <= 1):
                    sub = None
            else:
                orbit, sub = bit, None
            tasks.append((cand & ~self.adj[v] & ~bit, bit, sub))
            if orbit != bit:
                self.stats.symmetry_prunes += orbit.bit_count() - 1
            cand &= ~orbit
        return tasks


class _ShiftedSearch(_Search):
    """Branch and bound over left-shifted (down-closed) independent families."""

    def __init__(self, *args, down: Sequence[int], up: Sequence[int], **kwargs):
        super().__init__(*args, **kwargs)
        self.down = down
        self.up = up

    def _select_minimal(self, cand: int, included: int) -> int:
        down, adj = self.down, self.adj
        lex = self.cfg.branching_rule == "lexicographic"
        best_v, best_d = -1, -1
        for v in iter_bits(cand):
            if down[v] & ~included == 1 << v:
                if lex:
                    return v
                d = (adj[v] & cand).bit_count()
                if d > best_d:
                    best_v, best_d = v, d
        return best_v

    def run_shifted(self, count: int, cand: int, included: int) -> None:
        adj, up = self.adj, self.up
        while True:
            self._tick()
            if count > self.inc.value:
                self.inc.offer(count, included, self.stats.nodes)
            if not cand:
                return
            best = self.inc.value
            if count + clique_cover_size(adj, cand, best - count) <= best:
                self.stats.bound_prunes += 1
                return
            v = self._select_minimal(cand, included)
            bit = 1 << v
            rest = cand & ~bit
            dead = 0
            for w in iter_bits(adj[v] & rest):
                dead |= up[w]
            self.run_shifted(count + 1, rest & ~dead, included | bit)
            cand &= ~up[v]


def shift_closures(g: OppositionGraph) -> tuple[list[int], list[int]]:
    """Down- and up-closures of every vertex under the left-shift order."""
    succ: list[list[int]] = [[] for _ in range(g.size)]
    for k, masks in enumerate(g.masks):
        seen = set()
        for i, j in left_shift_pairs(g.n):
            image = shift_masks(masks, i, j)
            if image != masks and image not in seen:
                seen.add(image)
                succ[k].append(g.index[image])
    # a left-shift strictly lowers the element sum, so process by that sum
    weight = [sum(sum(((m >> b) & 1) * (b + 1) for b in range(g.n)) for m in masks)
              for masks in g.masks]
    down = [0] * g.size
    for v in sorted(range(g.size), key=weight.__getitem__):
        d = 1 << v
        for s in succ[v]:
            d |= down[s]
        down[v] = d
    up = [0] * g.size
    for v in range(g.size):
        for u in iter_bits(down[v]):
            up[u] |= 1 << v
    return down, up


def _initial_mask(g: OppositionGraph, cfg: SolverConfig) -> int:
    candidates = [closure_mask(g, 0)]
    if cfg.initial_incumbent is not None:
        inc = cfg.initial_incumbent
        if inc.spec != g.spec:
            raise ValueError("initial incumbent belongs to a different graph")
        if not is_independent(inc):
            raise ValueError("initial incumbent is not independent")
        candidates.append(g.mask_of_family(inc.flags))
    elif len(g.spec.sizes) == 2:
        a, b = g.spec.sizes
        fam = best_family(g.n, a, b)
        if fam is not None:
            candidates.append(g.mask_of_family(fam.flags))
    best = max(candidates, key=int.bit_count)
    if cfg.left_shifted:
        fam = left_shift_normalize(g.family_of_mask(best))
        best = g.mask_of_family(fam.flags)
    return best


def _raise_recursion_limit(depth: int) -> None:
    if sys.getrecursionlimit() < depth + 1000:
        sys.setrecursionlimit(depth + 1000)


def alpha_exact(spec: GraphSpec, cfg: SolverConfig | None = None) -> SolverResult:
    """Maximum independent set of Gamma(n, T) by branch and bound.

    The time budget, if any, starts after the graph and the starting incumbent
    are built. ``status`` is ``optimal`` only if the search finished.
    """
    cfg = cfg or SolverConfig()
    cfg.validate()
    started = time.monotonic()
    g = opposition_graph(spec)
    stats = SolverStats()
    inc = _Incumbent(0, 0, started, stats)
    start_mask = _initial_mask(g, cfg)
    inc.offer(start_mask.bit_count(), start_mask, 0)
    deadline = None if cfg.time_budget is None else time.monotonic() + cfg.time_budget
    _raise_recursion_limit(g.size)
    everything = (1 << g.size) - 1

    status = "optimal"
    if cfg.left_shifted:
        stats.mode = "left_shifted"
        down, up = shift_closures(g)
        viable = 0
        for v in range(g.size):
            if g.is_independent_mask(down[v]):
                viable |= 1 << v
        search = _ShiftedSearch(g.adj, cfg, inc, stats, deadline, down=down, up=up)
        try:
            search.run_shifted(0, viable, 0)
        except _Stop as stop:
            status = stop.status
    else:
        stats.mode = "orbits" if cfg.use_symmetry else "plain"
        cells = (full_mask(g.n),) if cfg.use_symmetry else None
        if cells is not None and cfg.symmetry_depth == 0:
            cells = None
        search = _Search(g.adj, cfg, inc, stats, deadline, masks=g.masks, n=g.n)
        try:
            if cfg.thread_count == 1:
                search.run(0, everything, 0, cells)
            else:
                status = _run_parallel(search, everything, cells, cfg.thread_count)
        except _Stop as stop:
            status = stop.status

    stats.wall_time = time.monotonic() - started
    witness = g.family_of_mask(inc.mask)
    return SolverResult(spec, inc.value, witness, status, stats, tuple(iter_bits(inc.mask)))


def _run_parallel(search: _Search, cand: int, cells, threads: int) -> str:
    tasks = search.root_tasks(cand, cells)

    def work(task):
        sub_cand, bit, sub_cells = task
        try:
            search.run(1, sub_cand, bit, sub_cells, 1)
            return "optimal"
        except _Stop as stop:
            return stop.status

    with ThreadPoolExecutor(max_workers=threads) as pool:
        statuses = list(pool.map(work, tasks))
    for s in ("timeout", "lower_bound_only"):
        if s in statuses:
            return s
    return "optimal"


def max_independent_set(adj: Sequence[int], cfg: SolverConfig | None = None) -> SolverResult:
    """Plain branch and bound on an arbitrary graph given as bitset rows."""
    cfg = cfg or SolverConfig(use_symmetry=False)
    cfg.validate()
    started = time.monotonic()
    stats = SolverStats(mode="plain")
    inc = _Incumbent(0, 0, started, stats)
    deadline = None if cfg.time_budget is None else started + cfg.time_budget
    _raise_recursion_limit(len(adj))
    search = _Search(adj, cfg, inc, stats, deadline)
    status = "optimal"
    try:
        search.run(0, (1 << len(adj)) - 1, 0, None)
    except _Stop as stop:
        status = stop.status
    stats.wall_time = time.monotonic() - started
    return SolverResult(None, inc.value, None, status, stats, tuple(iter_bits(inc.mask)))


def alpha_bruteforce(spec: GraphSpec) -> SolverResult:
    """Exhaustive include/exclude search; only for graphs with at most 40 vertices."""
    if spec.vertex_count > BRUTEFORCE_CAP:
        raise BruteForceRefused(
            f"{spec} has {spec.vertex_count} vertices, brute force is capped at {BRUTEFORCE_CAP}")
    started = time.monotonic()
    g = opposition_graph(spec)
    adj = g.adj
    best = [0, 0]
    nodes = [0]

    def go(count: int, cand: int, chosen: int) -> None:
        nodes[0] += 1
        if count > best[0]:
            best[0], best[1] = count, chosen
        if not cand or count + cand.bit_count() <= best[0]:
            return
        low = cand & -cand
        v = low.bit_length() - 1
        go(count + 1, cand & ~adj[v] & ~low, chosen | low)
        go(count, cand & ~low, chosen)

    go(0, (1 << g.size) - 1, 0)
    stats = SolverStats(nodes=nodes[0], wall_time=time.monotonic() - started, mode="bruteforce")
    return SolverResult(spec, best[0], g.family_of_mask(best[1]), "optimal", stats,
                        tuple(iter_bits(best[1])))


@dataclass
class Table2Row:
    n: int
    expected: int
    alpha: int | None
    status: str  # pass | fail | inconclusive
    seconds: float
    solver_status: str = ""


def verify_table2(max_n: int, cfg: SolverConfig | None = None,
                  min_n: int = 5) -> list[Table2Row]:
    """Recompute alpha(Gamma(n, 1, n-3)) for n = min_n..max_n against the table."""
    if not 5 <= min_n <= max_n <= 10:
        raise ValueError("table rows exist for 5 <= n <= 10")
    rows = []
    for n in range(min_n, max_n + 1):
        res = alpha_exact(GraphSpec.of(n, 1, n - 3), cfg)
        expected = TABLE2[n]
        if res.status != "optimal":
            status = "fail" if res.alpha > expected else "inconclusive"
        else:
            status = "pass" if res.alpha == expected else "fail"
        rows.append(Table2Row(n, expected, res.alpha, status, res.stats.wall_time, res.status))
    return rows


def certify_lower_bound(spec: GraphSpec, family: FlagFamily) -> Certificate:
    """alpha(spec) >= |family| whenever the family is independent."""
    if family.spec != spec:
        raise PreconditionError("family does not live on this graph")
    hyp = {"graph": str(spec)}
    pair = opposite_pair(family)
    if pair is not None:
        return Certificate("lower_bound", "fail", hyp, observed=len(family), witness=pair,
                           notes=["family contains an opposite pair"])
    return Certificate("lower_bound", "pass", hyp, bound=len(family), observed=len(family),
                       notes=[f"alpha >= {len(family)}"])

