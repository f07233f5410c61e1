import random

import pytest

from powerdom.exact import SizeGuardError, domination_number, gamma_p_exact
from powerdom.generators import (
    complete_bipartite,
    cycle,
    double_star,
    path,
    random_connected_graph,
    random_tree,
    star,
)
from powerdom.graph import GraphError
from powerdom.observe import is_power_dominating
from powerdom.products import (
    block_blocks_observation,
    dominating_zero_forcing_seed,
    flaw_witness_search,
    pd_bounds,
    strong_support_pairs,
    support_block,
    vizing_tree_check,
)
from powerdom.structure import cartesian_product


def test_prism_bounds():
    r = pd_bounds(cycle(3), path(2), compute_exact=True)
    assert r.upper == 1 and r.exact == 1


def test_k23_times_k2():
    r = pd_bounds(complete_bipartite(2, 3), path(2), compute_exact=True)
    assert r.exact == 2 == domination_number(complete_bipartite(2, 3))[0]


def test_path_equality_flag_fires():
    g = star(3)  # gamma_P = gamma = 1
    r = pd_bounds(g, path(4), compute_exact=True)
    assert r.equality_flags["path[GH]"] == 1 == r.exact


def test_lower_factor_uses_both_orientations():
    r = pd_bounds(path(2), complete_bipartite(3, 3))
    assert r.lower_factor == 2


def test_zero_forcing_lower_bound_from_strong_supports():
    g = double_star(2, 2)
    r = pd_bounds(g, star(3), compute_zf=True)
    assert r.lower_vs == 2 and r.zf_exact >= r.lower_vs
    assert r.consistent()


def test_size_guard_on_oversized_products():
    with pytest.raises(SizeGuardError):
        pd_bounds(cycle(7), cycle(7), compute_exact=True)
    assert pd_bounds(cycle(7), cycle(7)).upper >= 1


def test_factors_must_be_simple_connected():
    from powerdom.graph import Multigraph
    with pytest.raises(GraphError):
        pd_bounds(Multigraph(2, [(0, 1, 2)]), path(2))


@pytest.mark.parametrize("i", range(25))
def test_dominating_zero_forcing_seed_power_dominates(i):
    rng = random.Random(i)
    g = random_connected_graph(rng.randint(2, 6), 0.4, seed=i)
    h = random_connected_graph(rng.randint(2, 6), 0.4, seed=100 + i)
    seed = dominating_zero_forcing_seed(g, h)
    gh = cartesian_product(g, h)
    assert is_power_dominating(gh, [x * h.n + y for x, y in seed])[0]


def test_vizing_examples():
    v = vizing_tree_check(star(3), star(3))
    assert v.status == "holds" and v.bound == 1
    assert vizing_tree_check(path(4), star(3)).status == "hypothesis_not_met"


def test_vizing_double_star_pair():
    v = vizing_tree_check(double_star(2, 2), double_star(2, 2))
    assert v.status == "holds" and v.bound == 4 and v.product_gamma_p >= 4


def test_vizing_rejects_non_tree():
    with pytest.raises(GraphError):
        vizing_tree_check(cycle(4), star(3))


def test_support_block_gadget_stays_dark():
    g = h = double_star(2, 2)
    for x, y in strong_support_pairs(g, h):
        block, corner = support_block(g, x, h, y)
        assert len(block) == 9 and corner in block
        assert block_blocks_observation(g, x, h, y)


def test_support_block_needs_strong_support():
    with pytest.raises(GraphError):
        support_block(path(4), 1, star(3), 0)


def test_flaw_search_small_cases():
    assert flaw_witness_search(path(2), path(3)) is None


def test_flaw_search_size_guard():
    with pytest.raises(SizeGuardError):
        flaw_witness_search(cycle(7), random_tree(20, seed=0))


def test_flaw_witnesses_satisfy_their_invariants():
    from powerdom.exact import spider_partition_verify
    found = 0
    for g in (path(2), cycle(3), path(3), star(3)):
        for t in (double_star(2, 2), double_star(2, 3), random_tree(9, seed=4)):
            if g.n * t.n > 40:
                continue
            w = flaw_witness_search(g, t)
            if w is None:
                continue
            found += 1
            prod = cartesian_product(g, t)
            assert len(w.pds) == gamma_p_exact(prod)[0]
            assert is_power_dominating(prod, w.pds)[0]
            assert spider_partition_verify(t, [list(p) for p in w.partition])
            assert not set(w.pds) & w.product_blocks()[w.block]
    assert found > 0
