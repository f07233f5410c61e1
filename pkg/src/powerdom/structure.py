"""Recognizers and structural decompositions of cubic (multi)graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .graph import GraphError, Multigraph, Pair, norm


@dataclass(frozen=True)
class ClassFlags:
    cubic: bool
    claw_free: bool
    diamond_free: bool
    two_edge_connected: bool
    connected: bool
    tree: bool
    simple: bool


def has_claw(g: Multigraph) -> bool:
    """True when some vertex has three pairwise non-adjacent distinct neighbors."""
    for v in g.vertices():
        nb = g.neighbors(v)
        if len(nb) < 3:
            continue
        for a, b, c in combinations(nb, 3):
            if not (g.has_edge(a, b) or g.has_edge(a, c) or g.has_edge(b, c)):
                return True
    return False


def has_diamond(g: Multigraph) -> bool:
    """True when some edge lies in two triangles (a diamond subgraph, not necessarily induced)."""
    for u, v in g.pairs():
        common = set(g.neighbors(u)) & set(g.neighbors(v))
        if len(common) >= 2:
            return True
    return False


def classify(g: Multigraph) -> ClassFlags:
    connected = g.is_connected()
    return ClassFlags(
        cubic=g.n > 0 and all(d == 3 for d in g.degrees()),
        claw_free=not has_claw(g),
        diamond_free=not has_diamond(g),
        two_edge_connected=connected and not bridges(g),
        connected=connected,
        tree=connected and g.is_simple and g.m == g.n - 1,
        simple=g.is_simple,
    )


def bridges(g: Multigraph) -> list[Pair]:
    """Cut edges of a connected multigraph, sorted. A parallel pair is never a bridge."""
    if not g.is_connected():
        raise GraphError("bridges: graph must be connected")
    n = g.n
    disc = [-1] * n
    low = [0] * n
    out: list[Pair] = []
    timer = 0
    disc[0] = low[0] = timer
    # iterative DFS: (vertex, parent, neighbor iterator)
    stack = [(0, -1, iter(g.neighbors(0)))]
    while stack:
        v, parent, it = stack[-1]
        advanced = False
        for w in it:
            if w == parent:
                continue
            if disc[w] < 0:
                timer += 1
                disc[w] = low[w] = timer
                stack.append((w, v, iter(g.neighbors(w))))
                advanced = True
                break
            low[v] = min(low[v], disc[w])
        if advanced:
            continue
        stack.pop()
        if parent >= 0:
            low[parent] = min(low[parent], low[v])
            if low[v] > disc[parent] and g.multiplicity(parent, v) == 1:
                out.append(norm(parent, v))
    return sorted(out)


def is_two_edge_connected(g: Multigraph) -> bool:
    return g.is_connected() and not bridges(g)


# ---------------------------------------------------------------------------
# bridge decomposition


@dataclass(frozen=True)
class Component:
    vertices: tuple[int, ...]
    kind: str  # "I", "II" or "III"


@dataclass(frozen=True)
class BridgeDecomposition:
    bridges: tuple[Pair, ...]
    components: tuple[Component, ...]
    tree: Multigraph
    owner: tuple[int, ...]  # vertex -> component index

    def bridge_between(self, i: int, j: int) -> Pair:
        for u, v in self.bridges:
            if {self.owner[u], self.owner[v]} == {i, j}:
                return (u, v)
        raise KeyError((i, j))


def _component_kind(sub: Multigraph) -> str:
    if sub.n == 1:
        return "I"
    degs = sub.degrees()
    if all(d == 2 for d in degs):
        return "II"
    if max(degs) <= 3:
        return "III"
    raise GraphError("component matches none of the types I/II/III")


def bridge_decomposition(g: Multigraph) -> BridgeDecomposition:
    """Components of ``g - B(g)`` typed I/II/III, and the tree joining them.

    Components are indexed by their smallest vertex; tree vertex ``i`` is component ``i``.
    """
    bs = bridges(g)
    pruned = g.with_edges(remove=bs)
    comps = pruned.components()
    owner = [0] * g.n
    for i, c in enumerate(comps):
        for v in c:
            owner[v] = i
    typed = []
    for c in comps:
        sub, _ = pruned.induced(c)
        typed.append(Component(tuple(c), _component_kind(sub)))
    tree = Multigraph(len(comps), sorted({norm(owner[u], owner[v]) for u, v in bs}))
    return BridgeDecomposition(tuple(bs), tuple(typed), tree, tuple(owner))


# ---------------------------------------------------------------------------
# local rewrites


def smooth(g: Multigraph, v: int) -> Multigraph:
    """Replace the degree-2 vertex ``v`` by an edge between its neighbors.

    Vertices above ``v`` shift down by one. The new edge may double an existing one.
    """
    if g.degree(v) != 2:
        raise GraphError(f"smooth: vertex {v} has degree {g.degree(v)}, expected 2")
    nb = g.neighbors(v)
    if len(nb) != 2:
        raise GraphError(f"smooth: vertex {v} has a doubled edge to {nb[0]}; smoothing would make a loop")
    a, b = nb
    h = g.with_edges(add=[(a, b)])
    sub, _ = h.without([v])
    return sub


def cartesian_product(g: Multigraph, h: Multigraph) -> Multigraph:
    """``G □ H``; the pair ``(x, y)`` gets index ``x * |V(H)| + y``."""
    if not (g.is_simple and h.is_simple):
        raise GraphError("cartesian_product: both factors must be simple")
    nh = h.n
    edges = []
    for x in g.vertices():
        for a, b in h.pairs():
            edges.append((x * nh + a, x * nh + b))
    for a, b in g.pairs():
        for y in h.vertices():
            edges.append((a * nh + y, b * nh + y))
    return Multigraph(g.n * nh, edges)


def product_pair(index: int, h_order: int) -> tuple[int, int]:
    return divmod(index, h_order)


# ---------------------------------------------------------------------------
# triangle contraction / expansion


@dataclass(frozen=True)
class TriangleMap:
    """Correspondence between ``G`` and its contraction ``H``.

    ``triangles[t]`` are the three ``G`` vertices of ``H`` vertex ``t``;
    ``owner[v]`` is the ``H`` vertex containing ``v``;
    ``links[(s, t)]`` lists the ``G`` edges realizing the ``H`` pair ``(s, t)``.
    """

    triangles: tuple[tuple[int, int, int], ...]
    owner: tuple[int, ...]
    links: dict[Pair, tuple[Pair, ...]] = field(hash=False)

    def h_pair(self, e: Pair) -> Pair:
        return norm(self.owner[e[0]], self.owner[e[1]])


def triangles_at(g: Multigraph, v: int) -> list[tuple[int, int, int]]:
    nb = g.neighbors(v)
    return [tuple(sorted((v, a, b))) for a, b in combinations(nb, 2) if g.has_edge(a, b)]


def triangle_contraction(g: Multigraph) -> tuple[Multigraph, TriangleMap]:
    """Contract each triangle of ``g`` to a vertex, keeping the other edges (with multiplicity).

    Every vertex must lie in exactly one triangle. ``H`` vertices are ordered by
    the smallest ``G`` vertex of their triangle.
    """
    if not g.is_simple:
        raise GraphError("triangle_contraction: input must be simple")
    owner = [-1] * g.n
    tris: list[tuple[int, int, int]] = []
    for v in g.vertices():
        ts = triangles_at(g, v)
        if len(ts) != 1:
            raise GraphError(f"triangle_contraction: vertex {v} lies in {len(ts)} triangles")
        if owner[v] < 0:
            t = ts[0]
            for x in t:
                owner[x] = len(tris)
            tris.append(t)
    links: dict[Pair, list[Pair]] = {}
    for u, v in g.pairs():
        if owner[u] == owner[v]:
            continue
        links.setdefault(norm(owner[u], owner[v]), []).append((u, v))
    h = Multigraph(len(tris), [(s, t, len(es)) for (s, t), es in links.items()])
    tmap = TriangleMap(tuple(tris), tuple(owner), {p: tuple(es) for p, es in sorted(links.items())})
    return h, tmap


def triangle_expansion(h: Multigraph) -> Multigraph:
    """Replace each vertex ``t`` of a cubic multigraph by the triangle ``3t, 3t+1, 3t+2``.

    Edge copies are taken in sorted pair order; each uses the next unused corner
    of both end triangles.
    """
    if not all(d == 3 for d in h.degrees()):
        raise GraphError("triangle_expansion: host must be cubic")
    used = [0] * h.n
    edges = []
    for t in h.vertices():
        a, b, c = 3 * t, 3 * t + 1, 3 * t + 2
        edges += [(a, b), (a, c), (b, c)]
    for s, t in h.edge_list():
        edges.append((3 * s + used[s], 3 * t + used[t]))
        used[s] += 1
        used[t] += 1
    return Multigraph(3 * h.n, edges)


def subdivide(g: Multigraph, u: int, v: int) -> tuple[Multigraph, int]:
    """Replace one copy of ``uv`` by a path ``u - x - v``; returns the graph and ``x = n``."""
    x = g.n
    base = Multigraph(g.n + 1, [(a, b, k) for (a, b), k in g.edges.items()])
    return base.with_edges(add=[(u, x), (x, v)], remove=[(u, v)]), x
