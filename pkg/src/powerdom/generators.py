"""Named graph families with fixed vertex numbering.

Numbering per family:

* ``path(n)``: ``0 - 1 - ... - n-1``.
* ``cycle(n)``: the path plus ``n-1 - 0``.
* ``complete_bipartite(a, b)``: sides ``0..a-1`` and ``a..a+b-1``.
* ``star(k)``: center ``0``, leaves ``1..k``.
* ``double_star(a, b)``: centers ``0 - 1``; leaves ``2..a+1`` on ``0``, the next ``b`` on ``1``.
* ``diamond_necklace(k)``: diamond ``i`` is ``4i..4i+3`` with tips ``4i`` and ``4i+3``;
  tip ``4i+3`` joins tip ``4(i+1)`` cyclically, so ``k = 1`` gives ``K_4``.
* ``figure1``: the 12-vertex sharpness example; left triangle pair ``0..5``, right ``6..11``,
  ``u = 2`` and ``v = 11``.
* ``figure2_g0``: the bridged multigraph ``G_0``; Type II triangle ``0, 1, 2``.
* ``hypercube(d)``: vertices are ``d``-bit integers, adjacent when differing in one bit.
* ``triangle_expansion(H)``: see :func:`powerdom.structure.triangle_expansion`.
"""

from __future__ import annotations

import random

from .graph import GraphError, Multigraph, norm
from .structure import is_two_edge_connected, subdivide, triangle_expansion

FIGURE1_EDGES = [
    (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6), (2, 4), (1, 5), (3, 9),
    (7, 8), (8, 9), (9, 10), (10, 11), (11, 12), (7, 12), (6, 12), (7, 11), (8, 10),
]
FIGURE1_U, FIGURE1_V = 2, 11

G0_EDGES = [
    (1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (4, 6), (5, 6), (5, 6), (1, 7), (7, 8),
    (7, 9), (8, 9), (8, 9), (2, 10), (10, 11), (10, 12), (11, 12), (11, 12),
]


def path(n: int) -> Multigraph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return Multigraph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Multigraph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Multigraph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Multigraph:
    if n < 1:
        raise GraphError("complete needs n >= 1")
    return Multigraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Multigraph:
    if a < 1 or b < 1:
        raise GraphError("complete_bipartite needs both sides >= 1")
    return Multigraph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star(k: int) -> Multigraph:
    return complete_bipartite(1, k)


def double_star(a: int, b: int) -> Multigraph:
    if a < 1 or b < 1:
        raise GraphError("double_star needs a, b >= 1")
    edges = [(0, 1)] + [(0, 2 + i) for i in range(a)] + [(1, 2 + a + j) for j in range(b)]
    return Multigraph(2 + a + b, edges)


def diamond_necklace(k: int) -> Multigraph:
    if k < 1:
        raise GraphError("diamond_necklace needs k >= 1")
    edges = []
    for i in range(k):
        a, b, c, d = 4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3
        edges += [(a, b), (a, c), (b, c), (b, d), (c, d)]
        edges.append((d, 4 * ((i + 1) % k)))
    return Multigraph(4 * k, edges)


def ring_of_diamonds(k: int) -> Multigraph:
    if k < 2:
        raise GraphError("ring_of_diamonds needs k >= 2")
    return diamond_necklace(k)


def figure1() -> Multigraph:
    return Multigraph(12, [(u - 1, v - 1) for u, v in FIGURE1_EDGES])


def figure2_g0() -> Multigraph:
    return Multigraph(12, [(u - 1, v - 1) for u, v in G0_EDGES])


def hypercube(d: int) -> Multigraph:
    if d < 0:
        raise GraphError("hypercube needs d >= 0")
    n = 1 << d
    return Multigraph(n, [(v, v ^ (1 << b)) for v in range(n) for b in range(d) if v < v ^ (1 << b)])


def random_tree(n: int, seed: int = 0) -> Multigraph:
    """Uniform labelled tree from a random Prüfer sequence."""
    if n < 1:
        raise GraphError("random_tree needs n >= 1")
    if n <= 2:
        return path(n)
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [w for w in range(n) if degree[w] == 1]
    edges.append((u, v))
    return Multigraph(n, edges)


def random_cubic_multigraph(n: int, seed: int = 0, two_edge_connected: bool = True,
                            max_tries: int = 10_000) -> Multigraph:
    """Loopless cubic multigraph from the pairing model, by rejection."""
    if n < 2 or n % 2:
        raise GraphError("random_cubic_multigraph needs an even n >= 2")
    rng = random.Random(seed)
    for _ in range(max_tries):
        points = [v for v in range(n) for _ in range(3)]
        rng.shuffle(points)
        pairs = list(zip(points[::2], points[1::2]))
        if any(u == v for u, v in pairs):
            continue
        g = Multigraph(n, pairs)
        if not g.is_connected():
            continue
        if two_edge_connected and not is_two_edge_connected(g):
            continue
        return g
    raise GraphError(f"no cubic multigraph found for n={n} after {max_tries} tries")


def insert_doubled_pair(g: Multigraph, a: int, b: int) -> tuple[Multigraph, tuple[int, int, int, int]]:
    """Subdivide ``ab`` twice and double the middle edge.

    New vertices are ``u = n`` (next to ``a``) and ``v = n + 1``; returns the graph
    and ``(u, v, w, z)`` with ``w = a`` and ``z = b``.
    """
    if not g.has_edge(a, b):
        raise GraphError(f"insert_doubled_pair: ({a}, {b}) is not an edge")
    u, v = g.n, g.n + 1
    base = Multigraph(g.n + 2, [(x, y, k) for (x, y), k in g.edges.items()])
    out = base.with_edges(add=[(a, u), (u, v), (u, v), (v, b)], remove=[(a, b)])
    return out, (u, v, a, b)


def _port_component(rng: random.Random, ports: int) -> tuple[Multigraph, list[int]]:
    """Type III building block: 2-edge-connected, claw-free, diamond-free, with ``ports`` degree-2 vertices.

    A random cubic multigraph (or a bare cycle of port vertices) gets ``ports``
    subdivision vertices; then every vertex becomes a triangle, port triangles
    keeping one corner free for a bridge.
    """
    if ports >= 2 and rng.random() < 0.2:
        core = Multigraph(ports, [(i, (i + 1) % ports) for i in range(ports)]) if ports > 2 \
            else Multigraph(2, [(0, 1, 2)])
        port_vertices = list(range(ports))
    else:
        size = 2 * rng.randint(max(1, (ports + 2) // 3), max(1, (ports + 2) // 3) + 2)
        core = random_cubic_multigraph(size, seed=rng.randrange(1 << 30))
        port_vertices = []
        for _ in range(ports):
            u, v = rng.choice(core.edge_list())
            core, x = subdivide(core, u, v)
            port_vertices.append(x)
    # expand: corners of vertex t are 3t, 3t+1, 3t+2; ports leave 3t+2 free
    used = [0] * core.n
    edges = []
    for t in core.vertices():
        edges += [(3 * t, 3 * t + 1), (3 * t, 3 * t + 2), (3 * t + 1, 3 * t + 2)]
    for s, t in core.edge_list():
        edges.append((3 * s + used[s], 3 * t + used[t]))
        used[s] += 1
        used[t] += 1
    return Multigraph(3 * core.n, edges), [3 * p + 2 for p in port_vertices]


def bridged_cubic(components: int, seed: int = 0, triangle_rate: float = 0.4) -> Multigraph:
    """Connected claw-free diamond-free cubic graph with bridges.

    A random tree on ``components`` nodes is realized node by node: a degree-3
    node becomes a bare triangle (Type II) with probability ``triangle_rate``,
    every other node a Type III block with one port per incident tree edge.
    """
    if components < 2:
        raise GraphError("bridged_cubic needs at least 2 components")
    rng = random.Random(seed)
    shape = random_tree(components, seed=rng.randrange(1 << 30))
    offset = 0
    edges = []
    ports: list[list[int]] = []
    for node in shape.vertices():
        r = shape.degree(node)
        if r == 3 and rng.random() < triangle_rate:
            block = Multigraph(3, [(0, 1), (0, 2), (1, 2)])
            free = [0, 1, 2]
        else:
            block, free = _port_component(rng, r)
        edges += [(offset + a, offset + b, k) for (a, b), k in block.edges.items()]
        ports.append([offset + p for p in free])
        offset += block.n
    for a, b in shape.pairs():
        edges.append((ports[a].pop(), ports[b].pop()))
    return Multigraph(offset, edges)


FAMILIES = {
    "path": path,
    "cycle": cycle,
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "star": star,
    "double_star": double_star,
    "diamond_necklace": diamond_necklace,
    "ring_of_diamonds": ring_of_diamonds,
    "figure1": figure1,
    "figure2_g0": figure2_g0,
    "hypercube": hypercube,
    "random_tree": random_tree,
    "random_cubic_multigraph": random_cubic_multigraph,
    "bridged_cubic": bridged_cubic,
}


def generate(family: str, *params) -> Multigraph:
    """Build a named family. ``triangle_expansion`` takes a cubic multigraph as its parameter."""
    if family == "triangle_expansion":
        if len(params) != 1 or not isinstance(params[0], Multigraph):
            raise GraphError("triangle_expansion takes one cubic Multigraph")
        return triangle_expansion(params[0])
    try:
        fn = FAMILIES[family]
    except KeyError:
        raise GraphError(f"unknown family {family!r}") from None
    try:
        return fn(*params)
    except TypeError as exc:
        raise GraphError(f"invalid parameters for {family}: {exc}") from None


def random_connected_graph(n: int, p: float, seed: int = 0) -> Multigraph:
    """Random tree on ``n`` vertices plus each remaining pair with probability ``p``."""
    rng = random.Random(seed)
    tree = random_tree(n, seed=rng.randrange(1 << 30))
    edges = set(tree.pairs())
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) not in edges and rng.random() < p:
                edges.add(norm(i, j))
    return Multigraph(n, sorted(edges))
