"""Heavy-substructure reducers, symmetrization, the class-graph machinery
and the peeling drivers. Instances are planted by hand so the expected
branch is known in advance."""

from __future__ import annotations

import random
from itertools import combinations

import pytest

from mgx.core import (
    Multigraph,
    edge_product,
    edge_sum,
    induced,
    is_sq_graph,
    product_degree,
    violating_set,
)
from mgx.constructions import Partition, TuranSpec, build_turan, sigma
from mgx.reductions import (
    AllLight,
    InLowerClass,
    LowDegreeWitness,
    PowerBound,
    acyclic_transform,
    acyclic_transform_stages,
    auxiliary_graph,
    cycle_reduce,
    heavy_edge_reduce,
    heavy_kset_reduce,
    heavy_triangle_reduce,
    mt_pipeline,
    peel,
    step_down_reduce,
    symmetrize,
)


def _uniform(n: int, w: int) -> Multigraph:
    return Multigraph(n, fill=w)


def _class_graph(a: int, sizes, heavy_pairs) -> Multigraph:
    """Clique classes of the given sizes: internal a-1, cross a, except a+1
    between the class pairs listed in heavy_pairs."""
    label = []
    for i, size in enumerate(sizes):
        label.extend([i] * size)
    heavy = {frozenset(p) for p in heavy_pairs}
    g = Multigraph(len(label))
    for u, v in combinations(range(len(label)), 2):
        if label[u] == label[v]:
            g.set(u, v, a - 1)
        elif frozenset((label[u], label[v])) in heavy:
            g.set(u, v, a + 1)
        else:
            g.set(u, v, a)
    return g


def test_power_bound_exact_arithmetic():
    b = PowerBound(((2, 7), (3, 2)), denominator=3)
    assert b.raised() == 2**7 * 3**2
    assert b.holds_for(10)      # 1000 <= 1152
    assert not b.holds_for(11)  # 1331 > 1152
    with pytest.raises(ValueError):
        PowerBound(((2, -1),))
    with pytest.raises(ValueError):
        PowerBound(((2, 1),), denominator=0)


def test_heavy_triangle_planted_witness():
    a, n = 2, 8
    g = _uniform(n, a)
    for u, v in ((0, 1), (0, 2), (1, 2)):
        g.set(u, v, a + 1)  # triangle sum 3a+3, every 4-set still <= 6a+3
    out = heavy_triangle_reduce(g, a)
    assert isinstance(out, LowDegreeWitness)
    assert out.vertex in (0, 1, 2)
    assert out.reducer == "heavy-triangle"
    assert out.bound.holds_for(product_degree(g, out.vertex))
    assert out.bound.factors == ((a + 1, 2), (a, n - 3))


def test_heavy_triangle_all_light():
    g = _uniform(7, 3)
    assert isinstance(heavy_triangle_reduce(g, 3), AllLight)
    assert violating_set(g, 3, 11) is None


def test_heavy_triangle_input_validation():
    with pytest.raises(ValueError):
        heavy_triangle_reduce(_uniform(6, 2), 2)  # too small
    bad = _uniform(7, 2)
    bad.set(0, 1, 10)  # 4-set cap broken
    with pytest.raises(ValueError):
        heavy_triangle_reduce(bad, 2)


def test_heavy_edge_planted_witness():
    a, n = 3, 9
    g = _uniform(n, a)
    g.set(2, 5, a + 2)  # triangles through it reach exactly 3a+2
    out = heavy_edge_reduce(g, a)
    assert isinstance(out, LowDegreeWitness)
    assert out.vertex in (2, 5)
    assert out.reducer == "heavy-edge"
    assert out.bound.holds_for(product_degree(g, out.vertex))
    assert out.bound.factors == ((a + 2, 1), (a, n - 2))
    assert isinstance(heavy_edge_reduce(_uniform(7, a), a), AllLight)


def test_heavy_kset_planted_witness():
    a, k, n = 2, 4, 9
    g = _uniform(n, a)
    for u, v in combinations(range(k), 2):
        if u + v <= 3:
            g.set(u, v, a + 1)
    # the bumped 4-set now exceeds sigma(2,1,2;4) = 15 while 5-sets stay legal
    assert edge_sum(g, range(k)) == 16
    spec = TuranSpec(2, 1, a)
    assert is_sq_graph(g, k + 1, sigma(spec, k + 1))
    out = heavy_kset_reduce(g, a, k, min_n=7)
    assert isinstance(out, LowDegreeWitness)
    assert out.vertex < k
    assert out.reducer == "heavy-4set"
    assert out.bound.holds_for(product_degree(g, out.vertex))


def test_heavy_kset_all_light_and_floor():
    a = 2
    g = _uniform(9, a)
    assert isinstance(heavy_kset_reduce(g, a, 4, min_n=7), AllLight)
    with pytest.raises(ValueError):
        heavy_kset_reduce(g, a, 5)  # default floor for k=5 is N-1 >= 12
    with pytest.raises(ValueError):
        heavy_kset_reduce(g, a, 7, min_n=7)  # k outside {4,5,6}


def test_step_down_in_lower_class():
    r, d, a, s = 3, 1, 2, 2
    g = _uniform(7, a)
    out = step_down_reduce(g, r, d, a, s)
    assert isinstance(out, InLowerClass)
    assert out.s == 2
    assert out.q == sigma(TuranSpec(r, d, a), 2)


def test_step_down_planted_witness():
    r, d, a, s = 3, 1, 2, 2
    g = _uniform(7, a)
    g.set(0, 1, 4)  # above the pair cap 3, triangles at 8 <= sigma(3) = 9
    out = step_down_reduce(g, r, d, a, s)
    assert isinstance(out, LowDegreeWitness)
    assert out.vertex in (0, 1)
    assert out.bound.holds_for(product_degree(g, out.vertex))
    with pytest.raises(ValueError):
        step_down_reduce(g, r, d, a, 6)  # s beyond (r-1)(d+1)+1


def test_symmetrize_never_lowers_product_and_reaches_class_form():
    rng = random.Random(5)
    for _ in range(40):
        a = rng.choice((2, 3))
        n = rng.randint(4, 7)
        g = _uniform(n, a)
        # random in-class noise: lower some pairs, raise a few to a+1
        for u, v in combinations(range(n), 2):
            roll = rng.random()
            if roll < 0.25:
                g.set(u, v, rng.randint(0, a - 1))
            elif roll < 0.35:
                g.set(u, v, a + 1)
        if not is_sq_graph(g, 2, a + 1) or not is_sq_graph(g, 3, 3 * a + 2) \
                or not is_sq_graph(g, 4, 6 * a + 3):
            continue
        sym = symmetrize(g, a)
        assert edge_product(sym) >= edge_product(g)
        auxiliary_graph(sym, a)  # class form reached: must not raise
        again = symmetrize(sym, a)
        assert again == sym


def test_symmetrize_two_vertex_overwrite():
    # lone low pair: one endpoint's row is copied over the other's
    a = 3
    g = _uniform(5, a)
    g.set(0, 1, 1)
    g.set(1, 4, a + 1)
    sym = symmetrize(g, a)
    assert sym.get(0, 1) == a - 1
    assert edge_product(sym) >= edge_product(g)
    aux = auxiliary_graph(sym, a)
    assert {0, 1} <= set(min((c for c in aux.classes if 0 in c), key=len))


def test_auxiliary_graph_star_example():
    a = 2
    g = _class_graph(a, (2, 2, 1, 1), [(0, 1), (0, 2), (0, 3)])
    aux = auxiliary_graph(g, a)
    assert aux.classes == ((0, 1), (2, 3), (4,), (5,))
    assert aux.weights == (2, 2, 1, 1)
    assert aux.is_forest()
    assert aux.adjacent(0, 1) and aux.adjacent(0, 2) and aux.adjacent(0, 3)
    assert not aux.adjacent(1, 2)


def test_auxiliary_graph_rejects_non_class_input():
    g = _uniform(4, 2)
    g.set(0, 1, 0)
    with pytest.raises(ValueError):
        auxiliary_graph(g, 2)


def test_acyclic_transform_reaches_layered_form():
    a = 3
    # path 1 - 0 - 2 in the class graph, class 0 heaviest
    g = _class_graph(a, (3, 2, 1), [(0, 1), (0, 2)])
    star, final = acyclic_transform_stages(g, a)
    assert edge_product(g) <= edge_product(star) <= edge_product(final)
    assert final == acyclic_transform(g, a)
    # final must equal the two-part layered member with part 0 = class 0
    expected = build_turan(TuranSpec(2, 1, a), Partition((3, 3)))
    assert final == expected


def test_acyclic_transform_rejects_cycles():
    g = _class_graph(2, (1,) * 5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    with pytest.raises(ValueError):
        acyclic_transform(g, 2)


def test_cycle_reduce_on_a_five_cycle_of_classes():
    a = 2
    cyc = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]
    g = _class_graph(a, (2, 2, 1, 1, 1), cyc)
    out = cycle_reduce(g, a)
    assert isinstance(out, LowDegreeWitness)
    assert out.reducer == "cycle"
    assert out.bound.denominator == 5
    assert out.bound.holds_for(product_degree(g, out.vertex))
    with pytest.raises(ValueError):
        cycle_reduce(_class_graph(a, (2, 2), [(0, 1)]), a)  # acyclic


def test_peel_driver_reasons():
    a = 2
    light = _uniform(7, a)
    reducers = [("triangle", lambda h: heavy_triangle_reduce(h, a))]
    res = peel(light, reducers, stop=lambda h: False, floor_n=0)
    assert res.reason == "certified"
    assert res.removals == []
    res = peel(light, reducers, stop=lambda h: h.n == 7)
    assert res.reason == "stopped"
    res = peel(light, reducers, stop=lambda h: False, floor_n=7)
    assert res.reason == "floor"


def test_peel_removes_planted_heavy_triangles():
    a = 2
    g = _uniform(9, a)
    for u, v in ((0, 1), (0, 2), (1, 2)):
        g.set(u, v, a + 1)
    reducers = [("triangle", lambda h: heavy_triangle_reduce(h, a))]
    res = peel(g, reducers, stop=lambda h: False, floor_n=7)
    assert res.reason == "certified"
    assert len(res.removals) == 1
    rec = res.removals[0]
    assert rec.n_before == 9
    assert rec.reducer == "heavy-triangle"
    assert rec.bound.holds_for(product_degree(g, rec.vertex))
    assert violating_set(res.final, 3, 3 * a + 2) is None
    obj = rec.to_json_obj()
    assert set(obj) == {"n", "vertex", "reducer", "bound"}


def test_mt_pipeline_acyclic_outcome():
    a = 2
    g = _uniform(8, a)
    g.set(3, 4, a + 2)  # single heavy edge, then a flat graph remains
    res = mt_pipeline(g, a)
    assert res.reason == "acyclic"
    assert len(res.removals) == 1
    assert res.removals[0].reducer == "heavy-edge"
    assert res.transformed is not None
    assert edge_product(res.transformed) >= edge_product(res.final)
    # replay the single removal: the logged vertex and bound refer to g
    rec = res.removals[0]
    assert rec.bound.holds_for(product_degree(g, rec.vertex))
    remaining = induced(g, [v for v in range(g.n) if v != rec.vertex])
    assert res.final == remaining


def test_mt_pipeline_cycle_then_floor():
    a = 2
    cyc = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]
    g = _class_graph(a, (2, 2, 1, 1, 1), cyc)
    res = mt_pipeline(g, a, floor_n=6)
    assert res.reason == "floor"
    assert res.transformed is None
    assert len(res.removals) == 1
    assert res.removals[0].reducer == "cycle"
    assert res.final.n == 6


def test_mt_pipeline_floor_immediately():
    res = mt_pipeline(_uniform(5, 2), 2, floor_n=6)
    assert res.reason == "floor"
    assert res.removals == []
    assert res.final.n == 5
