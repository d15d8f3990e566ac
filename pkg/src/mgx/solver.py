"""Exact branch-and-bound for the extremal product/sum numbers.

ex_pi_exact / ex_sigma_exact maximize the edge product / edge sum over all
n-vertex multigraphs in which every s-set spans at most q edges counting
multiplicity. Branching assigns multiplicities edge by edge in colex order
(all edges into vertex k form one contiguous block), so constraints on
fully-assigned s-sets apply as early as possible.

Pruning, all exact:
  (a) running s-set sums: the per-edge domain cap is q minus the largest
      partial sum among s-sets containing the edge;
  (b) optimistic completion bounds from balanced products over the remaining
      sum slack, both against the global averaging cap
      floor(C(n,s) q / C(n-2,s-2)) and against per-block caps derived from
      averaging over the (s-1)-subsets below each vertex;
  (c) symmetry breaking: when a vertex block completes, the prefix is
      compared against vertex permutations of the assigned subgraph and
      dominated (lex-smaller) prefixes are cut. All permutations are used
      while (k+1)! <= 5040, a fixed-seed sample of 5040 above that. Sampling
      only weakens pruning, never soundness.

The optimum is deterministic across thread counts and budgets whenever the
search completes; an exhausted budget returns the best found with
complete=False.
"""

from __future__ import annotations

import os
import random
import threading
import time
from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb
from typing import Iterator, Optional

from .core import (
    Multigraph,
    averaging_bound,
    edge_product,
    edge_sum,
    is_sq_graph,
    max_product_with_sum,
    pair_from_index,
    pair_index,
)
from .constructions import Partition, TuranSpec, build_turan, pi_max, sigma

_PERM_SAMPLE_CAP = 5040


@dataclass
class SearchBudget:
    """Limits for one search: node count, wall time, worker threads.

    threads = 0 means use all cores. The MGX_THREADS environment variable is
    applied by the CLI layer, not here.
    """

    max_nodes: int = 10**9
    max_seconds: float = 600.0
    threads: int = 0

    def __post_init__(self) -> None:
        if self.max_nodes < 1 or self.max_seconds <= 0 or self.threads < 0:
            raise ValueError("budget limits must be positive")

    def resolved_threads(self) -> int:
        return self.threads if self.threads > 0 else (os.cpu_count() or 1)


@dataclass
class SearchResult:
    optimum: int
    witness: Multigraph
    nodes_explored: int
    complete: bool


@dataclass
class GirthResult:
    optimum: int
    witness: Multigraph
    nodes_explored: int
    complete: bool


class _Shared:
    """Incumbent + budget state shared by worker tasks."""

    def __init__(self, max_nodes: int, deadline: float):
        self.lock = threading.Lock()
        self.best = -1
        self.best_weights: Optional[list[int]] = None
        self.nodes = 0
        self.stop = False
        self.max_nodes = max_nodes
        self.deadline = deadline

    def offer(self, value: int, weights: list[int]) -> None:
        with self.lock:
            if value > self.best:
                self.best = value
                self.best_weights = list(weights)

    def note_nodes(self, delta: int) -> bool:
        with self.lock:
            self.nodes += delta
            if self.nodes > self.max_nodes or time.monotonic() > self.deadline:
                self.stop = True
            return self.stop


def _permutation_pool(k: int) -> list[tuple[int, ...]]:
    """Non-identity permutations of range(k+1): all if few, sampled if many."""
    size = k + 1
    total = 1
    for i in range(2, size + 1):
        total *= i
    ident = tuple(range(size))
    if total - 1 <= _PERM_SAMPLE_CAP:
        return [p for p in permutations(range(size)) if p != ident]
    rng = random.Random(0)
    seen: set[tuple[int, ...]] = set()
    pool = []
    while len(pool) < _PERM_SAMPLE_CAP:
        p = tuple(rng.sample(range(size), size))
        if p != ident and p not in seen:
            seen.add(p)
            pool.append(p)
    return pool


def _dominated_prefix(
    w: list[int], perms: list[tuple[int, ...]], upto: int
) -> bool:
    """True if some permutation makes the assigned prefix lex-larger."""
    for perm in perms:
        for t in range(upto):
            u, v = pair_from_index(t)
            pw = w[pair_index(perm[u], perm[v])]
            if pw != w[t]:
                if pw > w[t]:
                    return True
                break
    return False


def _seed_graphs(n: int, s: int, q: int) -> Iterator[Multigraph]:
    """Feasible candidates handed to the incumbent before the search starts."""
    c = q // comb(s, 2)
    yield Multigraph(n, fill=c)
    # layered-family members whose s-vertex sections fit under q
    for a in range(1, c + 2):
        for r in range(1, min(s, 6) + 1):
            for d in range(0, a):
                spec = TuranSpec(r=r, d=d, a=a)
                if sigma(spec, s) > q:
                    continue
                _, part = pi_max(spec, n)
                yield build_turan(spec, part)
    # uniform base plus one boosted pattern
    if n >= 3:
        ring = Multigraph(n, fill=c)
        for v in range(n):
            ring.set(v, (v + 1) % n, c + 1)
        yield ring
    match = Multigraph(n, fill=c)
    for v in range(0, n - 1, 2):
        match.set(v, v + 1, c + 1)
    yield match
    if c >= 1 and s >= 3:
        # disjoint (s-1)-vertex stars, centers doubled to c+1
        stars = Multigraph(n, fill=c)
        for start in range(0, n, s - 1):
            for leaf in range(start + 1, min(start + s - 1, n)):
                stars.set(start, leaf, c + 1)
        yield stars


class _Context:
    """Immutable per-search tables shared by all workers."""

    def __init__(self, n: int, s: int, q: int, objective: str, prune: bool,
                 symmetry: bool):
        self.n, self.s, self.q = n, s, q
        self.objective = objective
        self.prune = prune
        self.symmetry = symmetry
        self.m = comb(n, 2)
        self.pairs = [pair_from_index(t) for t in range(self.m)]
        sets = list(combinations(range(n), s))
        self.edge_to_sets: list[list[int]] = [[] for _ in range(self.m)]
        for idx, vs in enumerate(sets):
            for u, v in combinations(vs, 2):
                self.edge_to_sets[pair_index(u, v)].append(idx)
        self.set_count = len(sets)
        self.global_cap = averaging_bound(n, s, q)
        # unconditional per-block sum caps (block k = edges from k down)
        self.block_cap = [0] * n
        for k in range(1, n):
            cap = k * q
            if k >= s - 1:
                cap = min(cap, comb(k, s - 1) * q // comb(k - 1, s - 2))
            self.block_cap[k] = cap
        # suffix tables over whole blocks k..n-1
        self.suffix_sum = [0] * (n + 1)
        for k in range(n - 1, 0, -1):
            self.suffix_sum[k] = self.suffix_sum[k + 1] + self.block_cap[k]
        self.suffix_bal = [1] * (n + 1)
        for k in range(n - 1, 0, -1):
            self.suffix_bal[k] = self.suffix_bal[k + 1] * max_product_with_sum(
                k, self.block_cap[k]
            )
        self.perms = {
            k: _permutation_pool(k) for k in range(2, max(2, n - 1))
        }
        self._bal_memo: dict[tuple[int, int], int] = {}

    def bal(self, count: int, total: int) -> int:
        key = (count, total)
        got = self._bal_memo.get(key)
        if got is None:
            got = max_product_with_sum(count, max(total, 0))
            self._bal_memo[key] = got
        return got

    def cond_block_cap(self, k: int, prefix_sum: int) -> int:
        """Cap on the block-k edge sum given the assigned sum below it."""
        cap = k * self.q
        if k >= self.s - 1:
            num = comb(k, self.s - 1) * self.q
            if self.s >= 3:
                num -= comb(k - 2, self.s - 3) * prefix_sum
            cap = min(cap, num // comb(k - 1, self.s - 2))
        return cap


def _run_task(ctx: _Context, shared: _Shared, first_value: int) -> None:
    """Depth-first search with w[0] fixed to first_value."""
    m, q = ctx.m, ctx.q
    product = ctx.objective == "product"
    lo = 1 if product else 0
    w = [0] * m
    set_sums = [0] * ctx.set_count
    pairs = ctx.pairs
    edge_to_sets = ctx.edge_to_sets
    local_nodes = 0

    def dfs(t: int, rem_block: int, slack: int, value: int) -> None:
        nonlocal local_nodes
        local_nodes += 1
        if local_nodes >= 1024:
            if shared.note_nodes(local_nodes):
                return
            local_nodes = 0
        if shared.stop:
            return
        if t == m:
            shared.offer(value, w)
            return
        i, k = pairs[t]
        if i == 0:
            rem_block = ctx.cond_block_cap(k, sum(w[0 : t]))
        sets_here = edge_to_sets[t]
        ub = q
        for idx in sets_here:
            room = q - set_sums[idx]
            if room < ub:
                ub = room
        left_in_block = k - 1 - i
        left_global = m - t - 1
        if ctx.prune:
            ub = min(ub, rem_block - lo * left_in_block,
                     slack - lo * left_global)
        if ub < lo:
            return
        inc = shared.best
        for val in range(ub, lo - 1, -1):
            if product:
                new_value = value * val
            else:
                new_value = value + val
            if ctx.prune:
                if product:
                    b_blocks = (
                        new_value
                        * ctx.bal(left_in_block, min(rem_block - val, slack - val))
                        * ctx.suffix_bal[k + 1]
                    )
                    if b_blocks <= inc:
                        continue
                    b_global = new_value * ctx.bal(left_global, slack - val)
                    if b_global <= inc:
                        continue
                else:
                    rest = min(
                        (rem_block - val) + ctx.suffix_sum[k + 1],
                        slack - val,
                    )
                    if new_value + rest <= inc:
                        continue
            w[t] = val
            for idx in sets_here:
                set_sums[idx] += val
            skip = False
            if (
                ctx.symmetry
                and i == k - 1
                and 2 <= k <= ctx.n - 2
                and _dominated_prefix(w, ctx.perms[k], t + 1)
            ):
                skip = True
            if not skip:
                dfs(t + 1, rem_block - val, slack - val, new_value)
            for idx in sets_here:
                set_sums[idx] -= val
            w[t] = 0
            if shared.stop:
                return
            inc = shared.best

    # fix the first edge and search below it
    if first_value > q:
        return
    w[0] = first_value
    for idx in edge_to_sets[0]:
        set_sums[idx] += first_value
    rem0 = ctx.cond_block_cap(1, 0) - first_value
    dfs(1, rem0, ctx.global_cap - first_value, first_value)
    shared.note_nodes(local_nodes)


def _exact_search(
    n: int,
    s: int,
    q: int,
    objective: str,
    budget: Optional[SearchBudget],
    prune: bool,
    symmetry: bool,
) -> SearchResult:
    if not 2 <= s <= n:
        raise ValueError("need 2 <= s <= n")
    if q < 0:
        raise ValueError("q must be nonnegative")
    if budget is None:
        budget = SearchBudget()
    shared = _Shared(budget.max_nodes, time.monotonic() + budget.max_seconds)
    ctx = _Context(n, s, q, objective, prune, symmetry)

    # the all-zero graph is always feasible, so the incumbent starts at value 0
    zero = Multigraph(n)
    shared.offer(0, list(zero._w))
    if prune:
        for g in _seed_graphs(n, s, q):
            if g.n == n and is_sq_graph(g, s, q):
                val = edge_product(g) if objective == "product" else edge_sum(g)
                shared.offer(val, list(g._w))

    lo = 1 if objective == "product" else 0
    first_cap = min(q, ctx.cond_block_cap(1, 0))
    first_values = list(range(first_cap, lo - 1, -1))
    threads = budget.resolved_threads()
    if threads <= 1 or len(first_values) <= 1:
        for c in first_values:
            if shared.stop:
                break
            _run_task(ctx, shared, c)
    else:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(_run_task, ctx, shared, c) for c in first_values]
            for f in futures:
                f.result()

    weights = shared.best_weights or [0] * ctx.m
    witness = Multigraph.from_weights(n, weights)
    return SearchResult(shared.best, witness, shared.nodes, not shared.stop)


def ex_pi_exact(
    n: int,
    s: int,
    q: int,
    budget: Optional[SearchBudget] = None,
    prune: bool = True,
    symmetry: bool = True,
) -> SearchResult:
    """Exact max edge product over n-vertex graphs with all s-sets <= q.

    prune/symmetry switches exist for oracle tests (pure enumeration must
    reproduce the optimum); leave them on for real use.
    """
    return _exact_search(n, s, q, "product", budget, prune, symmetry)


def ex_sigma_exact(
    n: int,
    s: int,
    q: int,
    budget: Optional[SearchBudget] = None,
    prune: bool = True,
    symmetry: bool = True,
) -> SearchResult:
    """Exact max edge sum over the same family; see ex_pi_exact."""
    return _exact_search(n, s, q, "sum", budget, prune, symmetry)


# ---------------------------------------------------------------------------
# Girth-constrained Turan numbers: max edges, no cycle of length <= s.

def _bfs_within(adj: list[int], start: int, limit: int) -> int:
    """Bitmask of vertices at distance <= limit from start."""
    seen = 1 << start
    frontier = 1 << start
    for _ in range(limit):
        nxt = 0
        f = frontier
        while f:
            v = (f & -f).bit_length() - 1
            f &= f - 1
            nxt |= adj[v]
        nxt &= ~seen
        if not nxt:
            break
        seen |= nxt
        frontier = nxt
    return seen


def girth_turan(n: int, s: int, budget: Optional[SearchBudget] = None) -> GirthResult:
    """Max edge count of a simple n-vertex graph with no cycle of length <= s.

    Vertex-incremental branch and bound: vertex k chooses a neighbor subset of
    the earlier vertices that is pairwise at distance >= s-1 (anything closer
    would close a short cycle through k), with permutation-based symmetry
    breaking on completed prefixes and greedy seeding.
    """
    if s < 3:
        raise ValueError("s must be at least 3")
    if n < 1:
        raise ValueError("n must be at least 1")
    if budget is None:
        budget = SearchBudget()
    shared = _Shared(budget.max_nodes, time.monotonic() + budget.max_seconds)
    m = comb(n, 2)
    perms = {k: _permutation_pool(k) for k in range(2, max(2, n - 1))}

    def valid_subsets(adj: list[int], count: int) -> list[int]:
        near = [_bfs_within(adj, u, s - 2) for u in range(count)]
        out = []
        for mask in range(1 << count):
            ok = True
            mm = mask
            while mm:
                u = (mm & -mm).bit_length() - 1
                mm &= mm - 1
                if near[u] & mask & ~(1 << u):
                    ok = False
                    break
            if ok:
                out.append(mask)
        out.sort(key=lambda x: (-bin(x).count("1"), x))
        return out

    # greedy seeds over a few vertex orders
    rng = random.Random(0)
    for trial in range(16):
        adj = [0] * n
        edges = 0
        wvec = [0] * m
        for k in range(1, n):
            cands = valid_subsets(adj, k)
            if trial:
                best_size = bin(cands[0]).count("1")
                tied = [c for c in cands if bin(c).count("1") == best_size]
                choice = rng.choice(tied)
            else:
                choice = cands[0]
            mm = choice
            while mm:
                u = (mm & -mm).bit_length() - 1
                mm &= mm - 1
                adj[u] |= 1 << k
                adj[k] |= 1 << u
                wvec[pair_index(u, k)] = 1
                edges += 1
        shared.offer(edges, wvec)

    adj = [0] * n
    wvec = [0] * m
    local_nodes = 0

    def dfs(k: int, edges: int) -> None:
        nonlocal local_nodes
        local_nodes += 1
        if local_nodes >= 256:
            if shared.note_nodes(local_nodes):
                return
            local_nodes = 0
        if shared.stop:
            return
        remaining = sum(range(k, n))
        if edges + remaining <= shared.best:
            return
        cands = valid_subsets(adj, k)
        if k == n - 1:
            mask = cands[0]
            added = bin(mask).count("1")
            mm = mask
            while mm:
                u = (mm & -mm).bit_length() - 1
                mm &= mm - 1
                wvec[pair_index(u, k)] = 1
            shared.offer(edges + added, wvec)
            mm = mask
            while mm:
                u = (mm & -mm).bit_length() - 1
                mm &= mm - 1
                wvec[pair_index(u, k)] = 0
            return
        for mask in cands:
            added = bin(mask).count("1")
            if edges + added + sum(range(k + 1, n)) <= shared.best:
                continue
            mm = mask
            while mm:
                u = (mm & -mm).bit_length() - 1
                mm &= mm - 1
                adj[u] |= 1 << k
                adj[k] |= 1 << u
                wvec[pair_index(u, k)] = 1
            if not (
                2 <= k <= n - 2
                and _dominated_prefix(wvec, perms[k], comb(k + 1, 2))
            ):
                dfs(k + 1, edges + added)
            mm = mask
            while mm:
                u = (mm & -mm).bit_length() - 1
                mm &= mm - 1
                adj[u] &= ~(1 << k)
                adj[k] &= ~(1 << u)
                wvec[pair_index(u, k)] = 0
            if shared.stop:
                return

    if n == 1:
        return GirthResult(0, Multigraph(1), 0, True)
    dfs(1, 0)
    shared.note_nodes(local_nodes)
    witness = Multigraph.from_weights(n, shared.best_weights or [0] * m)
    return GirthResult(shared.best, witness, shared.nodes, not shared.stop)


# ---------------------------------------------------------------------------
# Conjectured-equality checker at concrete (spec, s, n).

EQUAL = "EQUAL"
CONSTRUCTION_BEATEN = "CONSTRUCTION-BEATEN"
SEARCH_INCOMPLETE = "SEARCH-INCOMPLETE"


@dataclass
class ConjectureReport:
    status: str
    q: int
    construction_value: int
    construction_partition: Partition
    search: SearchResult


def conjecture_check(
    spec: TuranSpec, s: int, n: int, budget: Optional[SearchBudget] = None
) -> ConjectureReport:
    """Compare the exact optimum against the layered-family maximum.

    Runs the exact product search at q = sigma(spec, s) and reports EQUAL,
    CONSTRUCTION-BEATEN (search strictly above the family value), or
    SEARCH-INCOMPLETE when the budget ran out first.
    """
    threshold = (spec.r - 1) * (spec.d + 1) + 2
    if s < threshold:
        raise ValueError(f"s must be at least {threshold} for this spec")
    q = sigma(spec, s)
    cons_val, cons_part = pi_max(spec, n)
    result = ex_pi_exact(n, s, q, budget)
    if not result.complete:
        status = SEARCH_INCOMPLETE
    elif result.optimum == cons_val:
        status = EQUAL
    else:
        if result.optimum < cons_val:
            raise AssertionError(
                "complete search below the feasible construction value"
            )
        status = CONSTRUCTION_BEATEN
    return ConjectureReport(status, q, cons_val, cons_part, result)
