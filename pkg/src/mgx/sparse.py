"""Piecewise regime map for the maximum edge-multiplicity product when the
per-s-set budget q stays at most twice C(s,2).

Eight regimes, keyed purely by (s, q): below C(s,2) the product is zero, at
it one, then a short window of fixed powers of two, two linear-exponent rows
(one order-of-growth, one exact), an exact row driven by girth-constrained
edge counts, and two top windows where only growth orders are known. Exact
rows return ExactValue, the others explicit Bounds with notes on where each
side comes from.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, isqrt
from typing import Optional, Union

from .core import Multigraph, pair_index
from .constructions import balanced_sizes
from .solver import SearchBudget, girth_turan

ZERO = "ZERO"
ONE = "ONE"
POWER = "POWER"
LINEAR_THETA = "LINEAR_THETA"
LINEAR_EXACT = "LINEAR_EXACT"
GIRTH = "GIRTH"
SUBQUADRATIC = "SUBQUADRATIC"
QUADRATIC_THETA = "QUADRATIC_THETA"

_TAGS = (ZERO, ONE, POWER, LINEAR_THETA, LINEAR_EXACT, GIRTH,
         SUBQUADRATIC, QUADRATIC_THETA)


@dataclass(frozen=True)
class SparseRegime:
    tag: str
    exponent: Optional[int] = None

    def __post_init__(self) -> None:
        if self.tag not in _TAGS:
            raise ValueError(f"unknown regime tag {self.tag!r}")


@dataclass(frozen=True)
class ExactValue:
    value: int


@dataclass(frozen=True)
class Bounds:
    lower: int
    upper: int
    lower_note: str
    upper_note: str


def classify(s: int, q: int) -> SparseRegime:
    """Match (s, q) to its regime row; boundaries are exact.

    Valid for s >= 2 and 0 <= q <= 2*C(s,2).
    """
    if s < 2:
        raise ValueError("s must be at least 2")
    c = comb(s, 2)
    if q < 0 or q > 2 * c:
        raise ValueError(f"q={q} outside the sparse range [0, {2 * c}]")
    if q < c:
        return SparseRegime(ZERO)
    if q == c:
        return SparseRegime(ONE)
    if q < c + s // 2:
        return SparseRegime(POWER, exponent=q - c)
    if q < c + s - 2:
        return SparseRegime(LINEAR_THETA)
    if q == c + s - 2:
        return SparseRegime(LINEAR_EXACT)
    if q == c + s - 1:
        return SparseRegime(GIRTH)
    if q < c + (s * s) // 4:
        return SparseRegime(SUBQUADRATIC)
    return SparseRegime(QUADRATIC_THETA)


def _girth_edge_count(n: int, s: int, budget: Optional[SearchBudget]) -> int:
    if s == 2:
        # no simple-graph cycle has length <= 2, so nothing is forbidden
        return comb(n, 2)
    result = girth_turan(n, s, budget)
    if not result.complete:
        raise RuntimeError("girth-constrained edge search ran out of budget")
    return result.optimum


def sparse_value(
    n: int, s: int, q: int, budget: Optional[SearchBudget] = None
) -> Union[ExactValue, Bounds]:
    """Maximum product over F(n, s, q), exact or two-sided, per regime."""
    regime = classify(s, q)
    if n < s:
        raise ValueError("n must be at least s")
    tag = regime.tag
    if tag == ZERO:
        return ExactValue(0)
    if tag == ONE:
        return ExactValue(1)
    if tag == POWER:
        assert regime.exponent is not None
        return ExactValue(2**regime.exponent)
    if tag == LINEAR_EXACT:
        return ExactValue(2 ** (((s - 2) * n) // (s - 1)))
    if tag == GIRTH:
        return ExactValue(2 ** _girth_edge_count(n, s, budget))
    if tag == LINEAR_THETA:
        return Bounds(
            lower=2 ** (n // 2),
            upper=_ceil_pow2_half((s - 3) * n),
            lower_note="doubled maximal matching over the all-1 graph",
            upper_note="product of per-vertex degree caps, exponent (s-3)n/2",
        )
    if tag == SUBQUADRATIC:
        return Bounds(
            lower=2 ** _girth_edge_count(n, s, budget),
            upper=((s * s) // 4 + 1) ** comb(n, 2),
            lower_note="girth-row witness, valid since larger q only relaxes",
            upper_note="trivial per-pair cap, not tight; the true exponent "
            "grows subquadratically",
        )
    assert tag == QUADRATIC_THETA
    return Bounds(
        lower=2 ** (n * n // 4),
        upper=2 ** comb(n, 2),
        lower_note="doubled complete balanced bipartite graph over all-1",
        upper_note="every pair at multiplicity 2",
    )


def _ceil_pow2_half(k: int) -> int:
    """Ceiling of 2^(k/2), exact (2^k is never a square for odd k)."""
    if k % 2 == 0:
        return 2 ** (k // 2)
    return isqrt(2**k) + 1


def _with_doubled(n: int, doubled: list[tuple[int, int]]) -> Multigraph:
    g = Multigraph(n, fill=1)
    for u, v in doubled:
        g.set(u, v, 2)
    return g


def sparse_witness(
    n: int, s: int, q: int, budget: Optional[SearchBudget] = None
) -> Multigraph:
    """A member of F(n, s, q) attaining its regime's stated lower bound."""
    regime = classify(s, q)
    if n < s:
        raise ValueError("n must be at least s")
    tag = regime.tag
    if tag == ZERO:
        return Multigraph(n)
    if tag == ONE:
        return Multigraph(n, fill=1)
    if tag == POWER:
        assert regime.exponent is not None
        pairs = [(2 * i, 2 * i + 1) for i in range(regime.exponent)]
        return _with_doubled(n, pairs)
    if tag == LINEAR_THETA:
        pairs = [(2 * i, 2 * i + 1) for i in range(n // 2)]
        return _with_doubled(n, pairs)
    if tag == LINEAR_EXACT:
        # disjoint stars on s-1 vertices each; the leftover vertices form
        # one smaller star
        pairs = []
        start = 0
        while start < n:
            size = min(s - 1, n - start)
            pairs.extend((start, start + i) for i in range(1, size))
            start += size
        return _with_doubled(n, pairs)
    if tag in (GIRTH, SUBQUADRATIC):
        if s == 2:
            return Multigraph(n, fill=2)
        result = girth_turan(n, s, budget)
        if not result.complete:
            raise RuntimeError("girth-constrained edge search ran out of budget")
        pairs = [(u, v) for u, v, w in result.witness.pairs() if w]
        return _with_doubled(n, pairs)
    assert tag == QUADRATIC_THETA
    left = n // 2
    pairs = [(u, v) for u in range(left) for v in range(left, n)]
    return _with_doubled(n, pairs)


def h6(n: int) -> Multigraph:
    """Six near-balanced parts: internal pairs 1, cyclically adjacent parts 3,
    all other cross pairs 2. Lies in F(n, 5, 24) for every n >= 6."""
    if n < 6:
        raise ValueError("needs at least 6 vertices")
    sizes = balanced_sizes(n, 6)
    label = []
    for i, size in enumerate(sizes):
        label.extend([i] * size)
    g = Multigraph(n)
    for u in range(n):
        for v in range(u + 1, n):
            li, lj = label[u], label[v]
            if li == lj:
                w = 1
            elif (li - lj) % 6 in (1, 5):
                w = 3
            else:
                w = 2
            g._w[pair_index(u, v)] = w
    return g
