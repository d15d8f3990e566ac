"""Layered clique constructions and their exact/asymptotic optima.

Two families live here. The single-level family turan(r, d, a): r parts, the
special part 0 internally a-d, parts 1..r-1 internally a, all cross pairs a+1.
The iterated family takes an admissible pair (r-vector, strictly decreasing
a-vector): layer i contributes r_i parts internally a_i, and every edge leaving
a part toward a higher-indexed part gets a_i + 1 where i is the layer of the
lower-indexed part.

Sum/product maxima over a family at fixed n are computed by exact scans over
part sizes (other parts balanced, which is forced for both objectives), with
exact integer comparison of products. The asymptotic quantities (x_star,
entropy densities, product-optimal weightings) are closed-form floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb, log
from typing import Iterator, Optional, Sequence

from .core import Multigraph, pair_index


@dataclass(frozen=True)
class TuranSpec:
    """Parameters (r, d, a) of the single-level family."""

    r: int
    d: int
    a: int

    def __post_init__(self) -> None:
        if self.r < 1:
            raise ValueError("r must be at least 1")
        if self.a < 1:
            raise ValueError("a must be at least 1")
        if not 0 <= self.d <= self.a - 1:
            raise ValueError("d must lie in [0, a-1]")


@dataclass(frozen=True)
class Partition:
    """Part sizes of a canonical partition; order matters."""

    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(s < 0 for s in self.sizes):
            raise ValueError("part sizes must be nonnegative")

    @property
    def n(self) -> int:
        return sum(self.sizes)


def balanced_sizes(total: int, parts: int) -> tuple[int, ...]:
    """Split total into `parts` sizes differing by at most 1, larger first."""
    if parts < 1:
        if total:
            raise ValueError("cannot place vertices into zero parts")
        return ()
    base, extra = divmod(total, parts)
    return (base + 1,) * extra + (base,) * (parts - extra)


def build_turan(spec: TuranSpec, part: Partition) -> Multigraph:
    """Construct the family member with the given part sizes."""
    if len(part.sizes) != spec.r:
        raise ValueError("partition length must equal r")
    labels: list[int] = []
    for i, size in enumerate(part.sizes):
        labels.extend([i] * size)
    g = Multigraph(part.n)
    internal = [spec.a - spec.d] + [spec.a] * (spec.r - 1)
    for u, v in combinations(range(part.n), 2):
        if labels[u] == labels[v]:
            g._w[pair_index(u, v)] = internal[labels[u]]
        else:
            g._w[pair_index(u, v)] = spec.a + 1
    return g


def _rest_pairs(total: int, parts: int) -> int:
    """Sum of C(v_i, 2) over a balanced split of `total` into `parts` parts."""
    if parts == 0:
        return 0
    base, extra = divmod(total, parts)
    return extra * comb(base + 1, 2) + (parts - extra) * comb(base, 2)


def _sigma_at(spec: TuranSpec, n: int, v0: int) -> int:
    """Edge sum of the member with |part 0| = v0 and the rest balanced."""
    rest = _rest_pairs(n - v0, spec.r - 1)
    return (
        (spec.a + 1) * comb(n, 2)
        - (spec.d + 1) * comb(v0, 2)
        - rest
    )


def _pi_at(spec: TuranSpec, n: int, v0: int) -> int:
    """Edge product of the member with |part 0| = v0 and the rest balanced."""
    rest = _rest_pairs(n - v0, spec.r - 1)
    cross = comb(n, 2) - comb(v0, 2) - rest
    return (
        (spec.a - spec.d) ** comb(v0, 2)
        * spec.a**rest
        * (spec.a + 1) ** cross
    )


def _v0_range(spec: TuranSpec, n: int) -> range:
    # r = 1 forces everything into part 0.
    return range(n, n + 1) if spec.r == 1 else range(n + 1)


def sigma(spec: TuranSpec, n: int) -> int:
    """Maximum edge sum over the family at n vertices."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return max(_sigma_at(spec, n, v0) for v0 in _v0_range(spec, n))


def sigma_increment(spec: TuranSpec, n: int) -> int:
    """Closed form for sigma(spec, n+1) - sigma(spec, n).

    Valid for n >= r*d + r - d; below that threshold the two-branch formula
    does not apply and a ValueError is raised.
    """
    r, d, a = spec.r, spec.d, spec.a
    period = r * d + r - d
    if n < period:
        raise ValueError(f"increment formula needs n >= {period}")
    q, t = divmod(n, period)
    if t <= r - 1:
        return (a + 1) * n - (d + 1) * q
    return (a + 1) * n - (d + 1) * q - (t - 1) // (r - 1)


def extremal_v0_set(spec: TuranSpec, n: int, objective: str) -> set[int]:
    """All sizes of part 0 attaining the optimum (exact integer comparison)."""
    if objective == "sum":
        value = lambda v0: _sigma_at(spec, n, v0)
    elif objective == "product":
        value = lambda v0: _pi_at(spec, n, v0)
    else:
        raise ValueError("objective must be 'sum' or 'product'")
    best = None
    arg: set[int] = set()
    for v0 in _v0_range(spec, n):
        val = value(v0)
        if best is None or val > best:
            best, arg = val, {v0}
        elif val == best:
            arg.add(v0)
    return arg


def pi_max(spec: TuranSpec, n: int) -> tuple[int, Partition]:
    """Maximum edge product over the family at n, with a witness partition.

    Exact big-integer comparison throughout; the witness uses the smallest
    optimal size of part 0.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    best = -1
    best_v0 = 0
    for v0 in _v0_range(spec, n):
        val = _pi_at(spec, n, v0)
        if val > best:
            best, best_v0 = val, v0
    sizes = (best_v0,) + balanced_sizes(n - best_v0, spec.r - 1)
    return best, Partition(sizes)


def pi_max_log(spec: TuranSpec, n: int) -> float:
    """log of pi_max, computed in floats so it scales to very large n."""
    r, d, a = spec.r, spec.d, spec.a
    la, la1, lad = log(a), log(a + 1), log(a - d)
    best = None
    for v0 in _v0_range(spec, n):
        rest = _rest_pairs(n - v0, r - 1)
        cross = comb(n, 2) - comb(v0, 2) - rest
        val = comb(v0, 2) * lad + rest * la + cross * la1
        if best is None or val > best:
            best = val
    assert best is not None
    return best


def x_star(r: int, a: int, d: int) -> float:
    """Asymptotically optimal fraction of vertices in part 0.

    For r >= 2 this is log((a+1)/a) / log((a+1)^r / (a (a-d)^(r-1))); the
    r = 1 family has no cross-part structure and the value is fixed at 1 by
    convention so downstream formulas stay total.
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    if not (a >= 1 and 0 <= d <= a - 1):
        raise ValueError("need a >= 1 and 0 <= d <= a-1")
    if r == 1:
        return 1.0
    num = log(a + 1) - log(a)
    den = r * log(a + 1) - log(a) - (r - 1) * log(a - d)
    return num / den


def x_star_residual(r: int, a: int, d: int) -> float:
    """Log-form residual of the defining balance equation at x_star(r, a, d).

    The equation: (a-d)^x (a+1)^(1-x) = a^((1-x)/(r-1)) (a+1)^((r-2+x)/(r-1)).
    Zero (to float precision) certifies x_star solves it. r = 1 returns 0 by
    the same convention as x_star.
    """
    if r == 1:
        return 0.0
    x = x_star(r, a, d)
    lhs = x * log(a - d) + (1 - x) * log(a + 1)
    rhs = (1 - x) / (r - 1) * log(a) + (r - 2 + x) / (r - 1) * log(a + 1)
    return lhs - rhs


def x_star_upper_limit(r: int, d: int) -> float:
    """Strict upper bound 1/(d(r-1)+r) for x_star(r, a, d) over all a > d."""
    return 1.0 / (d * (r - 1) + r)


def entropy_density(spec: TuranSpec) -> float:
    """Asymptotic log-product density of the family (natural log).

    For r = 1 this returns log(a) by the artifact convention that makes the
    function total; note the actual one-part family with d > 0 has density
    log(a-d), so only d = 0 single-part specs should rely on this value.
    """
    r, d, a = spec.r, spec.d, spec.a
    if r == 1:
        return log(a)
    x = x_star(r, a, d)
    return (
        log(a + 1)
        - x * x * log((a + 1) / (a - d))
        - (1 - x) * (1 - x) / (r - 1) * log((a + 1) / a)
    )


def entropy_compare(spec1: TuranSpec, spec2: TuranSpec) -> int:
    """Order two specs with equal a by entropy density: -1, 0, or +1.

    Densities sort by the key (r, -d): larger r wins; at equal r smaller d
    wins. Verified numerically in the test suite.
    """
    if spec1.a != spec2.a:
        raise ValueError("entropy comparison requires equal a")
    k1 = (spec1.r, -spec1.d)
    k2 = (spec2.r, -spec2.d)
    return (k1 > k2) - (k1 < k2)


def pi_ratio_lower_bound(a: int, n: int) -> float:
    """log of (a^(1-x) (a+1)^x)^n with x = x_star(2, a, 1).

    Lower-bounds log pi_max(turan(2,1,a), n+1) - log pi_max(turan(2,1,a), n).
    """
    x = x_star(2, a, 1)
    return n * ((1 - x) * log(a) + x * log(a + 1))


# ---------------------------------------------------------------------------
# Iterated constructions.

@dataclass(frozen=True)
class AdmissiblePair:
    """Layer counts r and strictly decreasing internal multiplicities a."""

    r: tuple[int, ...]
    a: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.r) != len(self.a) or not self.r:
            raise ValueError("r and a must be equal-length nonempty tuples")
        if any(x < 1 for x in self.r):
            raise ValueError("layer counts must be positive")
        if any(x < 1 for x in self.a):
            raise ValueError("multiplicities must be positive")
        if any(self.a[i] <= self.a[i + 1] for i in range(len(self.a) - 1)):
            raise ValueError("a must be strictly decreasing")

    @property
    def k(self) -> int:
        return len(self.r)

    @property
    def total_parts(self) -> int:
        return sum(self.r)


@dataclass(frozen=True)
class Weighting:
    """Limiting part-size proportions: positive reals summing to 1."""

    x: tuple[float, ...]

    def __post_init__(self) -> None:
        if abs(sum(self.x) - 1.0) > 1e-12:
            raise ValueError("weighting must sum to 1")
        if any(c <= 0 for c in self.x):
            raise ValueError("weighting coordinates must be positive")


def _part_layers(pair: AdmissiblePair) -> list[int]:
    """Layer index (0-based) of each of the R parts, in part order."""
    out: list[int] = []
    for i, cnt in enumerate(pair.r):
        out.extend([i] * cnt)
    return out


def build_iterated(pair: AdmissiblePair, part: Partition) -> Multigraph:
    """Construct the iterated-family member with the given part sizes.

    Edges inside a layer-i part get a_i; every edge from a part to any
    higher-indexed part gets a_i + 1 where i is the lower part's layer.
    """
    if len(part.sizes) != pair.total_parts:
        raise ValueError("partition length must equal the total part count")
    layer_of_part = _part_layers(pair)
    labels: list[int] = []
    for p, size in enumerate(part.sizes):
        labels.extend([p] * size)
    g = Multigraph(part.n)
    for u, v in combinations(range(part.n), 2):
        pu, pv = labels[u], labels[v]
        if pu == pv:
            g._w[pair_index(u, v)] = pair.a[layer_of_part[pu]]
        else:
            g._w[pair_index(u, v)] = pair.a[layer_of_part[min(pu, pv)]] + 1
    return g


def _layer_totals(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """All k-tuples of nonnegative ints summing to n."""
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _layer_totals(n - first, k - 1):
            yield (first,) + rest


def _iterated_guard(pair: AdmissiblePair, n: int, max_nodes: int) -> None:
    nodes = comb(n + pair.k - 1, pair.k - 1)
    if nodes > max_nodes:
        raise ValueError(
            f"layer-total enumeration would visit {nodes} compositions "
            f"(limit {max_nodes})"
        )


def _iterated_counts(
    pair: AdmissiblePair, totals: Sequence[int]
) -> tuple[int, list[tuple[int, int]]]:
    """Cross-pair count at a_i+1 per layer i plus internal (a_i, count) terms.

    Returns (ignored, terms) where terms lists (multiplicity, pair count)
    covering all C(n,2) pairs for the balanced-within-layer member.
    """
    k = pair.k
    n = sum(totals)
    terms: list[tuple[int, int]] = []
    for i in range(k):
        internal = _rest_pairs(totals[i], pair.r[i])
        across_same_layer = comb(totals[i], 2) - internal
        higher = sum(totals[j] for j in range(i + 1, k))
        terms.append((pair.a[i], internal))
        terms.append((pair.a[i] + 1, across_same_layer + totals[i] * higher))
    return n, terms


def sigma_iterated(
    pair: AdmissiblePair, n: int, max_nodes: int = 2_000_000
) -> int:
    """Maximum edge sum over the iterated family at n vertices.

    Enumerates layer totals with parts balanced inside each layer (cross
    multiplicities depend only on layer totals, so balancing is optimal).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    _iterated_guard(pair, n, max_nodes)
    best = None
    for totals in _layer_totals(n, pair.k):
        _, terms = _iterated_counts(pair, totals)
        val = sum(m * c for m, c in terms)
        if best is None or val > best:
            best = val
    assert best is not None
    return best


def pi_iterated(
    pair: AdmissiblePair, n: int, max_nodes: int = 2_000_000
) -> tuple[int, Partition]:
    """Maximum edge product over the iterated family at n, with a witness."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    _iterated_guard(pair, n, max_nodes)
    best = -1
    best_totals: Optional[tuple[int, ...]] = None
    for totals in _layer_totals(n, pair.k):
        _, terms = _iterated_counts(pair, totals)
        val = 1
        for m, c in terms:
            val *= m**c
        if val > best:
            best, best_totals = val, totals
    assert best_totals is not None
    sizes: tuple[int, ...] = ()
    for i in range(pair.k):
        sizes += balanced_sizes(best_totals[i], pair.r[i])
    return best, Partition(sizes)


def iterated_entropy(pair: AdmissiblePair) -> float:
    """Asymptotic log-product density of the iterated family (natural log)."""
    return _pow_recurse(pair.r, pair.a)[0]


def product_optimal_weighting(pair: AdmissiblePair) -> Weighting:
    """The unique limiting part-size proportions of product maximizers.

    Layer 1 gets total share 1 - p1 split equally over its r1 parts; the
    remaining share p1 is distributed over the tail recursively. Every
    coordinate is strictly positive.
    """
    return Weighting(tuple(_pow_recurse(pair.r, pair.a)[1]))


def _pow_recurse(r: tuple[int, ...], a: tuple[int, ...]) -> tuple[float, list[float]]:
    """(entropy, weighting) for the (sub)pair, computed bottom-up."""
    r1, a1 = r[0], a[0]
    la, la1 = log(a1), log(a1 + 1)
    if len(r) == 1:
        ent = la + (r1 - 1) / r1 * (la1 - la)
        return ent, [1.0 / r1] * r1
    tail_ent, tail_weights = _pow_recurse(r[1:], a[1:])
    den = (r1 + 1) * la1 - la - r1 * tail_ent
    p1 = (la1 - la) / den
    if not 0.0 < p1 < 1.0 / (r1 + 1):
        raise ValueError("weighting fraction out of range; pair not admissible")
    ent = la + ((r1 * la1 - la - (r1 - 1) * tail_ent) / den) * (la1 - la)
    weights = [(1.0 - p1) / r1] * r1 + [p1 * w for w in tail_weights]
    return ent, weights


def admissible_less(pair1: AdmissiblePair, pair2: AdmissiblePair) -> bool:
    """Strict order on admissible pairs; larger means higher entropy.

    Coordinates (r_i, a_i) compare by a first, then r; sequences compare at
    the first differing coordinate, and a strict prefix is smaller.
    """
    for (r1, a1), (r2, a2) in zip(
        zip(pair1.r, pair1.a), zip(pair2.r, pair2.a)
    ):
        if (a1, r1) != (a2, r2):
            return (a1, r1) < (a2, r2)
    return pair1.k < pair2.k


def entropy_monotone_check(
    pairs: Sequence[AdmissiblePair], tolerance: float = 1e-12
) -> list[tuple[AdmissiblePair, AdmissiblePair]]:
    """Ordered pairs violating order-implies-smaller-entropy; empty is good."""
    bad = []
    ents = [iterated_entropy(p) for p in pairs]
    for i, j in combinations(range(len(pairs)), 2):
        for lo, hi in ((i, j), (j, i)):
            if admissible_less(pairs[lo], pairs[hi]):
                if ents[lo] >= ents[hi] - tolerance:
                    bad.append((pairs[lo], pairs[hi]))
    return bad


def enumerate_admissible_pairs(
    max_k: int, max_r: int, max_a1: int
) -> Iterator[AdmissiblePair]:
    """All pairs with k <= max_k, r_i <= max_r, a_1 <= max_a1, fixed order."""
    if max_k < 1 or max_r < 1 or max_a1 < 1:
        raise ValueError("universe bounds must be positive")
    from itertools import product

    for k in range(1, max_k + 1):
        for a_vec in combinations(range(max_a1, 0, -1), k):
            for r_vec in product(range(1, max_r + 1), repeat=k):
                yield AdmissiblePair(r=tuple(r_vec), a=a_vec)


def is_s_dominant(
    pair: AdmissiblePair,
    s: int,
    universe: tuple[int, int, int] = (3, 4, 8),
) -> tuple[bool, Optional[AdmissiblePair]]:
    """Whether no pair in the universe beats this one at s vertices.

    A pair is beaten when some other admissible pair reaches an edge sum at s
    that is no larger while having strictly larger entropy. Returns the first
    such certificate in enumeration order, or (True, None). The verdict is
    relative to the finite universe (max_k, max_r, max_a1).
    """
    own_sigma = sigma_iterated(pair, s)
    own_ent = iterated_entropy(pair)
    for other in enumerate_admissible_pairs(*universe):
        if other == pair:
            continue
        if sigma_iterated(other, s) <= own_sigma:
            if iterated_entropy(other) > own_ent + 1e-12:
                return False, other
    return True, None
