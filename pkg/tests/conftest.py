"""Shared deterministic corpora and brute-force oracles."""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations

import networkx as nx

from powerdom.generators import (
    bridged_cubic,
    insert_doubled_pair,
    random_connected_graph,
    random_cubic_multigraph,
)
from powerdom.graph import Multigraph
from powerdom.structure import classify, triangle_expansion


def to_nx(g: Multigraph) -> nx.MultiGraph:
    x = nx.MultiGraph()
    x.add_nodes_from(g.vertices())
    x.add_edges_from(g.edge_list())
    return x


# ---------------------------------------------------------------------------
# oracles written against definitions, independent of the bit-mask engine


def oracle_closure(g: Multigraph, seed) -> set[int]:
    """Plain set-based domination plus forcing on a simple graph."""
    obs = set(seed)
    for v in seed:
        obs.update(g.neighbors(v))
    changed = True
    while changed:
        changed = False
        for x in list(obs):
            un = [y for y in g.neighbors(x) if y not in obs]
            if len(un) == 1:
                obs.add(un[0])
                changed = True
    return obs


def oracle_gamma_p(g: Multigraph) -> int:
    for k in range(1, g.n + 1):
        for s in combinations(range(g.n), k):
            if len(oracle_closure(g, s)) == g.n:
                return k
    return 0


def oracle_gamma(g: Multigraph) -> tuple[int, list[tuple[int, ...]]]:
    x = nx.Graph(to_nx(g))
    for k in range(1, g.n + 1):
        sets = [s for s in combinations(range(g.n), k) if nx.is_dominating_set(x, s)]
        if sets:
            return k, sets
    return 0, [()]


def oracle_bridges(g: Multigraph) -> list[tuple[int, int]]:
    out = []
    for (u, v), k in g.edges.items():
        if k > 1:
            continue
        if not g.with_edges(remove=[(u, v)]).is_connected():
            out.append((u, v))
    return sorted(out)


def oracle_has_claw(g: Multigraph) -> bool:
    s = g.support()
    for quad in combinations(range(g.n), 4):
        for c in quad:
            rest = [x for x in quad if x != c]
            if all(s.has_edge(c, x) for x in rest) and not any(
                    s.has_edge(a, b) for a, b in combinations(rest, 2)):
                return True
    return False


def oracle_has_diamond(g: Multigraph) -> bool:
    s = g.support()
    return any(sum(s.has_edge(a, b) for a, b in combinations(q, 2)) >= 5
               for q in combinations(range(g.n), 4))


# ---------------------------------------------------------------------------
# corpora


@lru_cache(maxsize=None)
def expansion_corpus(count: int = 60, max_n: int = 60) -> tuple[Multigraph, ...]:
    """Triangle expansions of random 2-edge-connected cubic multigraphs, orders cycling 6..max_n."""
    orders = list(range(2, max_n // 3 + 1, 2))
    return tuple(
        triangle_expansion(random_cubic_multigraph(orders[i % len(orders)], seed=1000 + i))
        for i in range(count)
    )


@lru_cache(maxsize=None)
def bridged_corpus(count: int = 30) -> tuple[Multigraph, ...]:
    return tuple(bridged_cubic(2 + i % 6, seed=2000 + i) for i in range(count))


@lru_cache(maxsize=None)
def doubled_pair_corpus(count: int = 30) -> tuple[tuple[Multigraph, tuple[int, int, int, int]], ...]:
    """A doubled pair inserted on a non-triangle edge of an expansion."""
    out = []
    rng = random.Random(3000)
    i = 0
    while len(out) < count:
        base = triangle_expansion(random_cubic_multigraph(2 * (1 + i % 6), seed=3000 + i))
        i += 1
        links = [e for e in base.pairs()
                 if not set(base.neighbors(e[0])) & set(base.neighbors(e[1]))]
        a, b = rng.choice(links)
        g, tag = insert_doubled_pair(base, a, b)
        f = classify(g)
        if f.cubic and f.claw_free and f.diamond_free and f.two_edge_connected:
            out.append((g, tag))
    return tuple(out)


@lru_cache(maxsize=None)
def random_simple_corpus(count: int = 200, max_n: int = 12) -> tuple[Multigraph, ...]:
    rng = random.Random(4000)
    return tuple(random_connected_graph(rng.randint(1, max_n), rng.random() * 0.5, seed=4000 + i)
                 for i in range(count))


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
