from itertools import combinations

import pytest

from powerdom.generators import complete, cycle, figure1, random_cubic_multigraph
from powerdom.graph import GraphError, Multigraph
from powerdom.matching import Matching, factor_from_matching, perfect_matching, two_factor
from powerdom.structure import triangle_contraction


def has_perfect_matching_brute(g: Multigraph, forbidden=()) -> bool:
    """Enumerate n/2-subsets of edge copies, skipping forbidden copies."""
    pool = g.edge_list()
    for e in forbidden:
        pool.remove(e)
    for pick in combinations(pool, g.n // 2):
        if len({v for e in pick for v in e}) == g.n:
            return True
    return False


def test_c6_two_alternating_matchings():
    m = perfect_matching(cycle(6))
    assert m is not None and m.is_perfect(6)
    other = perfect_matching(cycle(6), forbidden=[m.edges[0]])
    assert other is not None and not set(other.edges) & set(m.edges)


def test_odd_order_has_no_perfect_matching():
    assert perfect_matching(cycle(5)) is None


def test_forbidding_one_copy_of_a_double_edge_still_allows_it():
    g = Multigraph(2, [(0, 1, 2)])
    assert perfect_matching(g, [(0, 1)]) is not None
    assert perfect_matching(g, [(0, 1), (0, 1)]) is None


@pytest.mark.parametrize("seed", range(30))
def test_existence_matches_brute_force(seed):
    g = random_cubic_multigraph(6, seed=seed, two_edge_connected=False)
    forbidden = [g.edge_list()[seed % g.m]]
    assert (perfect_matching(g, forbidden) is not None) == has_perfect_matching_brute(g, forbidden)


@pytest.mark.parametrize("seed", range(40))
def test_bridgeless_cubic_avoids_any_single_edge(seed):
    g = random_cubic_multigraph(2 * (1 + seed % 8), seed=seed)
    for e in g.pairs():
        m = perfect_matching(g, [e])
        assert m is not None and m.is_perfect(g.n)
        if g.multiplicity(*e) == 1:
            assert e not in m.edges


def test_k4_factor_is_a_four_cycle():
    f = two_factor(complete(4))
    assert f.lengths() == [4]


def test_required_edge_lies_on_factor():
    h, _ = triangle_contraction(figure1())
    simple_pairs = [e for e in h.pairs() if h.multiplicity(*e) == 1]
    for e in simple_pairs:
        assert e in two_factor(h, required=e).edges()


@pytest.mark.parametrize("seed", range(40))
def test_factor_covers_all_vertices(seed):
    g = random_cubic_multigraph(2 * (1 + seed % 10), seed=seed)
    f = two_factor(g)
    assert sorted(v for c in f.cycles for v in c) == list(range(g.n))
    assert min(f.lengths()) >= 2


def test_factor_needs_perfect_matching():
    with pytest.raises(GraphError):
        factor_from_matching(cycle(4), Matching(((0, 1),)))


def test_matching_validation():
    with pytest.raises(GraphError):
        Matching(((0, 1), (1, 2)))
