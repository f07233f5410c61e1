import random

import networkx as nx
import pytest
from conftest import (
    bridged_corpus,
    oracle_bridges,
    oracle_has_claw,
    oracle_has_diamond,
    random_simple_corpus,
    to_nx,
)

from powerdom.generators import (
    complete,
    complete_bipartite,
    cycle,
    figure1,
    figure2_g0,
    path,
    random_cubic_multigraph,
    star,
)
from powerdom.graph import GraphError, Multigraph
from powerdom.structure import (
    bridge_decomposition,
    bridges,
    cartesian_product,
    classify,
    has_claw,
    has_diamond,
    product_pair,
    smooth,
    subdivide,
    triangle_contraction,
    triangle_expansion,
)


def test_k33_has_claw():
    f = classify(complete_bipartite(3, 3))
    assert f.cubic and not f.claw_free


def test_figure1_flags():
    f = classify(figure1())
    assert f.cubic and f.claw_free and f.diamond_free and f.two_edge_connected


def test_k4_is_not_diamond_free():
    assert not classify(complete(4)).diamond_free


@pytest.mark.parametrize("g", random_simple_corpus()[:120], ids=lambda g: f"n{g.n}m{g.m}")
def test_claw_and_diamond_match_four_subset_search(g):
    assert has_claw(g) == oracle_has_claw(g)
    assert has_diamond(g) == oracle_has_diamond(g)


def test_bridges_small_cases():
    assert bridges(path(4)) == [(0, 1), (1, 2), (2, 3)]
    assert bridges(cycle(6)) == []
    assert bridges(figure2_g0()) == sorted(bridges(figure2_g0()))
    assert len(bridges(figure2_g0())) == 3


def test_parallel_pair_is_not_a_bridge():
    assert bridges(Multigraph(3, [(0, 1, 2), (1, 2)])) == [(1, 2)]


def test_bridges_need_connected_input():
    with pytest.raises(GraphError):
        bridges(Multigraph(3, [(0, 1)]))


@pytest.mark.parametrize("g", random_simple_corpus()[:150] + bridged_corpus()[:10], ids=lambda g: f"n{g.n}m{g.m}")
def test_bridges_match_deletion_oracle(g):
    assert bridges(g) == oracle_bridges(g)


def test_multigraph_bridges_match_oracle():
    for seed in range(40):
        g = random_cubic_multigraph(8, seed=seed, two_edge_connected=False)
        assert bridges(g) == oracle_bridges(g)


def test_figure2_decomposition():
    dec = bridge_decomposition(figure2_g0())
    kinds = sorted(c.kind for c in dec.components)
    assert kinds == ["II", "III", "III", "III"]
    assert sorted(dec.tree.degrees()) == [1, 1, 1, 3]


def test_two_edge_connected_is_single_component():
    dec = bridge_decomposition(figure1())
    assert len(dec.components) == 1 and dec.tree.n == 1


def test_path_three_gives_type_one():
    dec = bridge_decomposition(path(3))
    assert [c.kind for c in dec.components] == ["I", "I", "I"]


def test_bridge_tree_is_a_tree():
    for g in bridged_corpus():
        dec = bridge_decomposition(g)
        t = dec.tree
        assert t.is_connected() and t.m == t.n - 1 == len(dec.bridges)


def test_smooth_middle_of_path():
    assert smooth(path(3), 1) == Multigraph(2, [(0, 1)])


def test_smooth_triangle_vertex_doubles_edge():
    g = smooth(cycle(3), 0)
    assert g.n == 2 and g.multiplicity(0, 1) == 2


def test_smooth_requires_degree_two():
    with pytest.raises(GraphError):
        smooth(star(3), 0)


def test_smoothing_a_leaf_component_port_gives_2ec_cubic():
    for g in bridged_corpus()[:15]:
        dec = bridge_decomposition(g)
        for i, comp in enumerate(dec.components):
            if comp.kind != "III" or dec.tree.degree(i) != 1:
                continue
            sub, labels = g.induced(comp.vertices)
            (port,) = [v for v in sub.vertices() if sub.degree(v) == 2]
            f = classify(smooth(sub, port))
            assert f.cubic and f.two_edge_connected


def test_product_shapes():
    square = cartesian_product(path(2), path(2))
    assert nx.is_isomorphic(to_nx(square), to_nx(cycle(4)))
    prism = cartesian_product(cycle(3), path(2))
    assert prism.n == 6 and set(prism.degrees()) == {3}
    assert cartesian_product(path(7), path(20)).n == 140


def test_product_matches_networkx():
    for a, b in [(cycle(4), path(3)), (star(3), complete(3)), (figure1(), path(2))]:
        mine = nx.Graph(to_nx(cartesian_product(a, b)))
        theirs = nx.cartesian_product(nx.Graph(to_nx(a)), nx.Graph(to_nx(b)))
        relabel = {(x, y): x * b.n + y for x, y in theirs.nodes}
        expected = nx.relabel_nodes(theirs, relabel)
        assert set(map(frozenset, mine.edges)) == set(map(frozenset, expected.edges))


def test_product_degrees_add():
    g, h = star(3), cycle(5)
    gh = cartesian_product(g, h)
    for v in gh.vertices():
        x, y = product_pair(v, h.n)
        assert gh.degree(v) == g.degree(x) + h.degree(y)


def test_figure1_contraction():
    h, tmap = triangle_contraction(figure1())
    assert h.n == 4 and set(h.degrees()) == {3}
    assert len(h.doubled_pairs()) == 2


def test_contraction_requires_triangles():
    with pytest.raises(GraphError):
        triangle_contraction(complete_bipartite(3, 3))


def test_expansion_contraction_roundtrip():
    for seed in range(100):
        h = random_cubic_multigraph(2 * (1 + seed % 8), seed=seed)
        g = triangle_expansion(h)
        f = classify(g)
        assert f.cubic and f.claw_free and f.diamond_free and f.simple
        back, _ = triangle_contraction(g)
        assert nx.is_isomorphic(to_nx(back), to_nx(h))


def test_expansion_triangles_partition_vertices():
    g = triangle_expansion(random_cubic_multigraph(10, seed=7))
    _, tmap = triangle_contraction(g)
    covered = sorted(v for t in tmap.triangles for v in t)
    assert covered == list(range(g.n))


def test_subdivide():
    g, x = subdivide(cycle(3), 0, 1)
    assert x == 3 and g.n == 4 and g.has_edge(0, 3) and g.has_edge(3, 1) and not g.has_edge(0, 1)


def test_random_expansions_stay_2ec():
    rng = random.Random(5)
    for _ in range(20):
        h = random_cubic_multigraph(2 * rng.randint(1, 6), seed=rng.randrange(10**6))
        assert classify(triangle_expansion(h)).two_edge_connected


def test_small_claw_and_diamond_cases():
    assert has_claw(star(3)) and not has_claw(star(2))
    assert all(not has_diamond(cycle(n)) for n in range(3, 8))
    assert has_diamond(complete(4).with_edges(remove=[(0, 1)]))
