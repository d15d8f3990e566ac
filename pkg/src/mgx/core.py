"""Exact multigraph values and the arithmetic primitives everything else uses.

A Multigraph is n labeled vertices plus one nonnegative integer multiplicity
per unordered pair, stored as a dense length-C(n,2) vector. All quantities
derived from it (edge sums, edge products, degrees) are exact Python integers;
this module contains no floating point.

Pair storage order is colexicographic: the edge {u,v} with u < v lives at
index v*(v-1)//2 + u. That puts all edges incident to vertex v and a smaller
vertex in one contiguous block, which the exact solver leans on, and the index
of a pair does not depend on n.
"""

from __future__ import annotations

import json
from itertools import combinations
from math import comb, isqrt
from typing import Iterator, Optional, Sequence


def pair_index(u: int, v: int) -> int:
    """Index of the unordered pair {u,v} in colex order."""
    if u == v:
        raise ValueError("self-loops are not representable")
    if u > v:
        u, v = v, u
    return v * (v - 1) // 2 + u


def pair_from_index(t: int) -> tuple[int, int]:
    """Inverse of pair_index: (u, v) with u < v."""
    v = (1 + isqrt(1 + 8 * t)) // 2
    u = t - v * (v - 1) // 2
    return u, v


def colex_combinations(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """All k-subsets of range(n) in colexicographic order."""
    if k == 0:
        yield ()
        return
    for top in range(k - 1, n):
        for rest in colex_combinations(top, k - 1):
            yield rest + (top,)


class Multigraph:
    """Dense multigraph value: n vertices, integer multiplicity per pair.

    Two multigraphs compare equal iff they have the same n and the same
    multiplicity on every pair. Mutation is allowed (the reductions rewrite
    rows in place on copies); treat instances shared across threads as frozen.
    """

    __slots__ = ("n", "_w")

    def __init__(self, n: int, fill: int = 0):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        if fill < 0:
            raise ValueError("multiplicities must be nonnegative")
        self.n = n
        self._w = [fill] * (n * (n - 1) // 2)

    @classmethod
    def from_weights(cls, n: int, weights: Sequence[int]) -> "Multigraph":
        """Build directly from a length-C(n,2) colex-ordered vector."""
        g = cls(n)
        if len(weights) != len(g._w):
            raise ValueError("weight vector has wrong length")
        for w in weights:
            if w < 0:
                raise ValueError("multiplicities must be nonnegative")
        g._w = list(weights)
        return g

    def get(self, u: int, v: int) -> int:
        self._check_vertex(u)
        self._check_vertex(v)
        return self._w[pair_index(u, v)]

    def set(self, u: int, v: int, w: int) -> None:
        self._check_vertex(u)
        self._check_vertex(v)
        if w < 0:
            raise ValueError("multiplicities must be nonnegative")
        self._w[pair_index(u, v)] = w

    def weights(self) -> tuple[int, ...]:
        """The underlying colex-ordered multiplicity vector."""
        return tuple(self._w)

    def pairs(self) -> Iterator[tuple[int, int, int]]:
        """Yield (u, v, w) for every pair, u < v, in colex order."""
        for t, w in enumerate(self._w):
            u, v = pair_from_index(t)
            yield u, v, w

    def copy(self) -> "Multigraph":
        g = Multigraph(self.n)
        g._w = list(self._w)
        return g

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range for n={self.n}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.n == other.n and self._w == other._w

    def __repr__(self) -> str:
        return f"Multigraph(n={self.n}, weights={self._w!r})"


def edge_sum(g: Multigraph, vertices: Optional[Sequence[int]] = None) -> int:
    """Sum of multiplicities inside the given vertex set (all of g if None)."""
    if vertices is None:
        return sum(g._w)
    vs = _checked_set(g, vertices)
    return sum(g._w[pair_index(u, v)] for u, v in combinations(vs, 2))


def edge_product(g: Multigraph, vertices: Optional[Sequence[int]] = None) -> int:
    """Product of multiplicities inside the vertex set; empty product is 1."""
    if vertices is None:
        pairs = g._w
    else:
        vs = _checked_set(g, vertices)
        pairs = [g._w[pair_index(u, v)] for u, v in combinations(vs, 2)]
    out = 1
    for w in pairs:
        if w == 0:
            return 0
        out *= w
    return out


def degree(g: Multigraph, v: int) -> int:
    """Sum of multiplicities of edges at v."""
    g._check_vertex(v)
    return sum(g._w[pair_index(u, v)] for u in range(g.n) if u != v)


def product_degree(g: Multigraph, v: int) -> int:
    """Product of multiplicities of edges at v; 1 when n == 1."""
    g._check_vertex(v)
    out = 1
    for u in range(g.n):
        if u == v:
            continue
        w = g._w[pair_index(u, v)]
        if w == 0:
            return 0
        out *= w
    return out


def induced(g: Multigraph, vertices: Sequence[int]) -> Multigraph:
    """Induced sub-multigraph on the given vertices, relabeled in sorted order."""
    vs = _checked_set(g, vertices)
    sub = Multigraph(len(vs))
    for i, j in combinations(range(len(vs)), 2):
        sub._w[pair_index(i, j)] = g._w[pair_index(vs[i], vs[j])]
    return sub


def is_sq_graph(g: Multigraph, s: int, q: int) -> bool:
    """True iff every s-set of vertices spans at most q edges with multiplicity.

    Vacuously true when n < s.
    """
    if s < 2:
        raise ValueError("s must be at least 2")
    if q < 0:
        raise ValueError("q must be nonnegative")
    return violating_set(g, s, q) is None


_SET_INDEX_CACHE: dict = {}
_SET_INDEX_CACHE_LIMIT = 200_000


def set_pair_indices(n: int, s: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """(s-set, pair indices of its C(s,2) edges) in colex order, memoized.

    Shared by every routine that scans all s-sets; caching the index tuples
    avoids recomputing pair_index in the hot membership checks.
    """
    key = (n, s)
    hit = _SET_INDEX_CACHE.get(key)
    if hit is not None:
        return hit
    table = [
        (sub, tuple(pair_index(u, v) for u, v in combinations(sub, 2)))
        for sub in colex_combinations(n, s)
    ]
    if comb(n, s) <= _SET_INDEX_CACHE_LIMIT:
        _SET_INDEX_CACHE[key] = table
    return table


def violating_set(
    g: Multigraph, s: int, q: int
) -> Optional[tuple[tuple[int, ...], int]]:
    """First s-set (colex order) spanning more than q edges, with its excess."""
    if s < 2:
        raise ValueError("s must be at least 2")
    if q < 0:
        raise ValueError("q must be nonnegative")
    w = g._w
    getter = w.__getitem__
    for sub, idxs in set_pair_indices(g.n, s):
        tot = sum(map(getter, idxs))
        if tot > q:
            return sub, tot - q
    return None


def max_product_with_sum(m: int, total: int) -> int:
    """Max product of m nonnegative integers with sum at most `total`.

    0 when total < m (some factor must vanish); the balanced split otherwise.
    """
    if m < 0:
        raise ValueError("factor count must be nonnegative")
    if m == 0:
        return 1
    if total < m:
        return 0
    base, extra = divmod(total, m)
    return (base + 1) ** extra * base ** (m - extra)


def amgm_bound(a: int, n: int, t: int) -> int:
    """a^(n-t) * (a+1)^t: max product of n nonneg integers summing to a*n + t."""
    if n < 1 or a < 1:
        raise ValueError("a and n must be positive")
    if not 0 <= t <= n:
        raise ValueError("t must lie in [0, n]")
    return a ** (n - t) * (a + 1) ** t


def amgm_bound_fixed_factor(a: int, n: int, t: int) -> int:
    """(a-1) * a^(n-t-2) * (a+1)^(t+1): same bound with one factor pinned to a-1."""
    if n < 2 or a < 1:
        raise ValueError("a must be positive and n at least 2")
    if not 0 <= t <= n - 2:
        raise ValueError("t must lie in [0, n-2]")
    return (a - 1) * a ** (n - t - 2) * (a + 1) ** (t + 1)


def averaging_bound(n: int, s: int, q: int) -> int:
    """floor(C(n,s)*q / C(n-2,s-2)): the edge-sum cap from averaging over s-sets."""
    if not 2 <= s <= n:
        raise ValueError("need 2 <= s <= n")
    return comb(n, s) * q // comb(n - 2, s - 2)


# ---------------------------------------------------------------------------
# JSON codec. Canonical form is dense: every pair listed, sorted by (u, v),
# default 0, compact separators. Sparse inputs (default + overrides) load fine.

def to_json_obj(g: Multigraph) -> dict:
    edges = [[u, v, g._w[pair_index(u, v)]] for u, v in combinations(range(g.n), 2)]
    return {"n": g.n, "default": 0, "edges": edges}


def from_json_obj(obj: dict) -> Multigraph:
    n = obj["n"]
    default = obj.get("default", 0)
    if not isinstance(n, int) or n < 0:
        raise ValueError("bad vertex count")
    if not isinstance(default, int) or default < 0:
        raise ValueError("bad default multiplicity")
    g = Multigraph(n, fill=default)
    for entry in obj.get("edges", []):
        u, v, w = entry
        g.set(u, v, w)
    return g


def dumps(g: Multigraph) -> str:
    return json.dumps(to_json_obj(g), separators=(",", ":"))


def loads(text: str) -> Multigraph:
    return from_json_obj(json.loads(text))


def save(path: str, g: Multigraph) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(g))
        fh.write("\n")


def load(path: str) -> Multigraph:
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())


def _checked_set(g: Multigraph, vertices: Sequence[int]) -> list[int]:
    vs = sorted(set(vertices))
    for v in vs:
        g._check_vertex(v)
    return vs
