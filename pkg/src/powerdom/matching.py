"""Perfect matchings and 2-factors of cubic multigraphs."""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass

import networkx as nx

from .graph import GraphError, Multigraph, Pair, norm
from .structure import is_two_edge_connected


@dataclass(frozen=True)
class Matching:
    edges: tuple[Pair, ...]

    def __post_init__(self):
        seen: set[int] = set()
        for u, v in self.edges:
            if u in seen or v in seen or u == v:
                raise GraphError("matching edges must be pairwise vertex-disjoint")
            seen.update((u, v))

    def covered(self) -> set[int]:
        return {x for e in self.edges for x in e}

    def is_perfect(self, n: int) -> bool:
        return len(self.edges) * 2 == n

    def partner(self) -> dict[int, int]:
        out = {}
        for u, v in self.edges:
            out[u] = v
            out[v] = u
        return out


@dataclass(frozen=True)
class TwoFactor:
    """Vertex-disjoint cycles covering every vertex; a 2-cycle is a doubled edge."""

    cycles: tuple[tuple[int, ...], ...]

    def edges(self) -> list[Pair]:
        out = []
        for c in self.cycles:
            for i, x in enumerate(c):
                out.append(norm(x, c[(i + 1) % len(c)]))
        return out

    def cycle_of(self) -> dict[int, int]:
        return {x: i for i, c in enumerate(self.cycles) for x in c}

    def lengths(self) -> list[int]:
        return [len(c) for c in self.cycles]


def perfect_matching(g: Multigraph, forbidden: Iterable[Pair] = ()) -> Matching | None:
    """A perfect matching using no forbidden edge copy, or ``None`` if none exists.

    Forbidding one copy of a doubled pair leaves the pair usable through its
    other copy. Matching runs on the support graph.
    """
    banned = Counter(norm(u, v) for u, v in forbidden)
    if g.n % 2:
        return None
    sup = nx.Graph()
    sup.add_nodes_from(range(g.n))
    sup.add_edges_from(p for p, k in g.edges.items() if k - banned[p] > 0)
    mate = nx.max_weight_matching(sup, maxcardinality=True)
    edges = tuple(sorted(norm(u, v) for u, v in mate))
    if 2 * len(edges) != g.n:
        return None
    return Matching(edges)


def factor_from_matching(g: Multigraph, m: Matching) -> TwoFactor:
    """Cycles of the complement of a perfect matching in a cubic multigraph."""
    rest = Counter(g.edges)
    for p in m.edges:
        rest[p] -= 1
        if rest[p] < 0:
            raise GraphError(f"matching edge {p} not in graph")
    adj: dict[int, list[int]] = {v: [] for v in g.vertices()}
    for (u, v), k in rest.items():
        for _ in range(k):
            adj[u].append(v)
            adj[v].append(u)
    for v, nb in adj.items():
        if len(nb) != 2:
            raise GraphError(f"complement degree at {v} is {len(nb)}, expected 2")
    seen: set[int] = set()
    cycles = []
    for s in g.vertices():
        if s in seen:
            continue
        a, b = sorted(adj[s])
        if a == b:
            cycles.append((s, a))
            seen.update((s, a))
            continue
        cyc = [s]
        seen.add(s)
        prev, cur = s, a
        while cur != s:
            cyc.append(cur)
            seen.add(cur)
            nb = adj[cur]
            nxt = nb[1] if nb[0] == prev else nb[0]
            prev, cur = cur, nxt
        cycles.append(tuple(cyc))
    return TwoFactor(tuple(cycles))


def two_factor(g: Multigraph, required: Pair | None = None) -> TwoFactor:
    """2-factor of a bridgeless cubic multigraph, optionally through one copy of ``required``."""
    if not all(d == 3 for d in g.degrees()):
        raise GraphError("two_factor: graph must be cubic")
    comps = g.components()
    for c in comps:
        sub, _ = g.induced(c)
        if not is_two_edge_connected(sub):
            raise GraphError("two_factor: graph has a bridge")
    forbidden = []
    if required is not None:
        if not g.has_edge(*required):
            raise GraphError(f"two_factor: required edge {required} not in graph")
        if len(comps) != 1:
            raise GraphError("two_factor: required edge needs a 2-edge-connected graph")
        forbidden = [norm(*required)]
    m = perfect_matching(g, forbidden)
    if m is None:
        raise GraphError("two_factor: no perfect matching found")
    return factor_from_matching(g, m)
