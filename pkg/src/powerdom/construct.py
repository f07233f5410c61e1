"""Certified power dominating sets of size at most n/6 for claw-free diamond-free cubic graphs.

Pipeline for the 2-edge-connected case: contract the (vertex-disjoint) triangles
to a cubic multigraph ``H``, take a 2-factor of ``H``, lift it to a 2-factor of
``G`` whose cycles walk through each triangle, and match the triangle corners
left out of the lifted cycles. One endpoint of each matching edge is selected so
that every cycle is hit; the selection has exactly ``n/6`` vertices.

The one-doubled-pair and general (bridged) cases reduce to it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import Multigraph, Pair, norm
from .matching import Matching, TwoFactor, factor_from_matching, perfect_matching
from .observe import PdsCertificate, make_certificate
from .structure import (
    BridgeDecomposition,
    ClassFlags,
    bridge_decomposition,
    classify,
    smooth,
    triangle_contraction,
)


class ConstructionError(RuntimeError):
    """Hypotheses fail, or an internal check failed (the latter is a bug)."""


@dataclass(frozen=True)
class CycleAdjacency:
    """Graph ``J`` on cycle indices; ``links`` gives the matching edges realizing each ``J`` edge."""

    graph: Multigraph
    links: dict[Pair, tuple[Pair, ...]]
    root: int
    depth: tuple[int, ...]
    parent: tuple[int, ...]

    @property
    def layers(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(max(self.depth) + 1)]
        for c, d in enumerate(self.depth):
            out[d].append(c)
        return out


@dataclass
class ConstructionLog:
    kind: str
    n: int
    contracted: Multigraph | None = None
    h_factor: TwoFactor | None = None
    factor: TwoFactor | None = None
    matching: Matching | None = None
    adjacency: CycleAdjacency | None = None
    selection: tuple[int, ...] = ()
    repairs: int = 0
    notes: list[str] = field(default_factory=list)
    parts: list[ComponentLog] = field(default_factory=list)

    def describe(self, indent: str = "") -> str:
        lines = [f"{indent}[{self.kind}] n={self.n}"]
        if self.contracted is not None:
            h = self.contracted
            lines.append(f"{indent}  contracted H: n={h.n} m={h.m} doubled={h.doubled_pairs()}")
        if self.h_factor is not None:
            lines.append(f"{indent}  2-factor of H: {list(self.h_factor.cycles)}")
        if self.factor is not None:
            lines.append(f"{indent}  lifted cycles (length {self.factor.lengths()}):")
            for i, c in enumerate(self.factor.cycles):
                lines.append(f"{indent}    C{i}: {list(c)}")
        if self.matching is not None:
            lines.append(f"{indent}  matching M: {list(self.matching.edges)}")
        if self.adjacency is not None:
            lines.append(f"{indent}  J layers from C{self.adjacency.root}: {self.adjacency.layers}")
        if self.repairs:
            lines.append(f"{indent}  repair swaps: {self.repairs}")
        lines.append(f"{indent}  selected: {list(self.selection)}")
        lines += [f"{indent}  note: {s}" for s in self.notes]
        for p in self.parts:
            lines.append(f"{indent}  component H{p.index} type {p.kind} depth {p.depth} "
                         f"r={p.ports} case={p.case} -> {list(p.selected)}")
            if p.log is not None:
                lines.append(p.log.describe(indent + "    "))
        return "\n".join(lines)


@dataclass
class ComponentLog:
    index: int
    kind: str
    depth: int
    ports: int
    case: str
    labels: list[int]
    selected: tuple[int, ...]
    log: ConstructionLog | None = None


# ---------------------------------------------------------------------------
# hitting selection


def cycle_adjacency(factor: TwoFactor, m: Matching, root: int = 0) -> CycleAdjacency:
    cyc = factor.cycle_of()
    links: dict[Pair, list[Pair]] = {}
    for e in m.edges:
        a, b = cyc[e[0]], cyc[e[1]]
        if a != b:
            links.setdefault(norm(a, b), []).append(e)
    k = len(factor.cycles)
    j = Multigraph(k, sorted(links))
    depth = [-1] * k
    parent = [-1] * k
    depth[root] = 0
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in j.neighbors(x):
            if depth[y] < 0:
                depth[y] = depth[x] + 1
                parent[y] = x
                queue.append(y)
    if min(depth) < 0:
        raise ConstructionError("cycle adjacency graph J is disconnected")
    return CycleAdjacency(j, {p: tuple(es) for p, es in sorted(links.items())}, root,
                          tuple(depth), tuple(parent))


def _missed(factor: TwoFactor, chosen: set[int]) -> list[int]:
    return [i for i, c in enumerate(factor.cycles) if not chosen.intersection(c)]


def _repair(factor: TwoFactor, m: Matching, pick: dict[Pair, int]) -> int:
    """Flip choices along augmenting paths until every cycle is hit; returns the flip count.

    A missed cycle starts a search over matching edges whose chosen endpoint lies
    on the current cycle's partner; the path ends at a cycle hit at least twice.
    """
    cyc = factor.cycle_of()
    flips = 0
    while True:
        chosen = set(pick.values())
        missed = _missed(factor, chosen)
        if not missed:
            return flips
        hits = [0] * len(factor.cycles)
        for x in chosen:
            hits[cyc[x]] += 1
        start = missed[0]
        # BFS: from cycle c, an edge with its unchosen endpoint on c leads to the chosen endpoint's cycle
        prev: dict[int, tuple[int, Pair]] = {start: (-1, ())}
        queue = deque([start])
        end = None
        while queue and end is None:
            c = queue.popleft()
            for e in m.edges:
                w = pick[e]
                other = e[0] if w == e[1] else e[1]
                if cyc[other] != c or cyc[w] in prev:
                    continue
                prev[cyc[w]] = (c, e)
                if hits[cyc[w]] >= 2:
                    end = cyc[w]
                    break
                queue.append(cyc[w])
        if end is None:
            raise ConstructionError("hitting selection impossible: no augmenting path")
        c = end
        while c != start:
            pc, e = prev[c]
            pick[e] = e[0] if pick[e] == e[1] else e[1]
            flips += 1
            c = pc
        after = _missed(factor, set(pick.values()))
        if not len(after) < len(missed):
            raise ConstructionError("repair did not reduce the missed cycles")


def select_hitting_endpoints(factor: TwoFactor, m: Matching, j: CycleAdjacency) -> tuple[tuple[int, ...], int]:
    """One endpoint per matching edge, meeting every cycle of ``factor``.

    Layered choice: every inter-cycle edge is oriented from the shallower cycle
    (``w``) to the deeper one (``v``); edges along a root path to a deepest cycle
    take ``w``, all other inter-cycle edges take ``v``, intra-cycle edges their
    smaller endpoint. A deepest cycle missed this way takes a same-depth edge's
    endpoint instead; any cycle still missed triggers augmenting-path repair.
    Returns the selection and the number of repair flips.
    """
    cyc = factor.cycle_of()
    depth = j.depth
    k = len(factor.cycles)
    far = min(range(k), key=lambda c: (-depth[c], c))
    path = [far]
    while path[-1] != j.root:
        path.append(j.parent[path[-1]])
    path.reverse()
    path_edges = {j.links[norm(a, b)][0] for a, b in zip(path, path[1:])}

    pick: dict[Pair, int] = {}
    for e in m.edges:
        a, b = e
        if cyc[a] == cyc[b]:
            pick[e] = min(a, b)
            continue
        w, v = sorted((a, b), key=lambda x: (depth[cyc[x]], x))
        pick[e] = w if e in path_edges else v

    if len(path) > 1 and not set(pick.values()).intersection(factor.cycles[far]):
        for e in m.edges:
            a, b = e
            if far in (cyc[a], cyc[b]) and cyc[a] != cyc[b]:
                other = b if cyc[a] == far else a
                if depth[cyc[other]] == depth[far] and pick[e] == other:
                    pick[e] = a if other == b else b
                    break
    flips = _repair(factor, m, pick)
    sel = tuple(sorted(pick[e] for e in m.edges))
    if len(set(sel)) != len(m.edges) or _missed(factor, set(sel)):
        raise ConstructionError("hitting selection postcondition failed")
    return sel, flips


# ---------------------------------------------------------------------------
# 2-edge-connected pipeline


def _lift(g: Multigraph, h: Multigraph, tmap, mh: Matching, required: Pair | None):
    """Lift a perfect matching of ``H`` to the matching ``M`` of ``G`` and the cycles of ``G``."""
    m_edges = []
    for p in mh.edges:
        options = [e for e in tmap.links[p] if required is None or e != required]
        m_edges.append(options[0])
    m_g = Matching(tuple(sorted(m_edges)))
    designated = m_g.covered()
    matched = set(m_g.edges)
    adj: dict[int, list[int]] = {v: [] for v in g.vertices()}
    for tri in tmap.triangles:
        d = [x for x in tri if x in designated]
        if len(d) != 1:
            raise ConstructionError(f"triangle {tri} has {len(d)} matched corners")
        for x in tri:
            if x != d[0]:
                adj[d[0]].append(x)
                adj[x].append(d[0])
    for u, v in g.pairs():
        if tmap.owner[u] != tmap.owner[v] and (u, v) not in matched:
            adj[u].append(v)
            adj[v].append(u)
    seen: set[int] = set()
    cycles = []
    for s in sorted(designated):
        if s in seen:
            continue
        cyc = [s]
        seen.add(s)
        prev, cur = s, min(adj[s])
        while cur != s:
            cyc.append(cur)
            seen.add(cur)
            a, b = adj[cur]
            prev, cur = cur, (b if a == prev else a)
        cycles.append(tuple(cyc))
    if len(seen) != g.n:
        raise ConstructionError("lifted cycles do not cover G")
    for c in cycles:
        if len(c) < 6 or len(c) % 3:
            raise ConstructionError(f"lifted cycle of length {len(c)}")
        if any((c[i] in designated) != (i % 3 == 0) for i in range(len(c))):
            raise ConstructionError("matched corners are not at positions 0 mod 3")
    return m_g, TwoFactor(tuple(cycles))


def _factor_selection(g: Multigraph, required: Pair | None = None) -> tuple[tuple[int, ...], ConstructionLog]:
    h, tmap = triangle_contraction(g)
    forbidden = [tmap.h_pair(required)] if required is not None else []
    mh = perfect_matching(h, forbidden)
    if mh is None:
        raise ConstructionError("contracted multigraph has no suitable perfect matching")
    log = ConstructionLog("2ec", g.n, contracted=h, h_factor=factor_from_matching(h, mh))
    m_g, factor = _lift(g, h, tmap, mh, required)
    if required is not None:
        if required in m_g.edges or required not in factor.edges():
            raise ConstructionError("required edge missing from the lifted 2-factor")
    j = cycle_adjacency(factor, m_g)
    sel, flips = select_hitting_endpoints(factor, m_g, j)
    log.factor, log.matching, log.adjacency = factor, m_g, j
    log.selection, log.repairs = sel, flips
    return sel, log


def _require(flags: ClassFlags, names: list[str], what: str) -> None:
    bad = [name for name in names if not getattr(flags, name)]
    if bad:
        raise ConstructionError(f"{what}: hypotheses fail ({', '.join(bad)})")


def _certify(g: Multigraph, sel, model: str, bound: Fraction, log: ConstructionLog) -> PdsCertificate:
    cert = make_certificate(g, sel, model, bound)
    if not cert.trace.covers(g.n):
        raise ConstructionError(f"internal verification failure: {sorted(sel)} observes "
                                f"{len(cert.trace.observed)} of {g.n} vertices")
    if cert.size > bound:
        raise ConstructionError(f"internal verification failure: |S|={cert.size} > {bound}")
    cert.log = log
    return cert


def construct_2ec(g: Multigraph) -> PdsCertificate:
    """Certified power dominating set of size exactly ``n/6`` for a 2-edge-connected input."""
    flags = classify(g)
    _require(flags, ["simple", "cubic", "claw_free", "diamond_free", "two_edge_connected"], "construct_2ec")
    sel, log = _factor_selection(g)
    if 6 * len(sel) != g.n:
        raise ConstructionError(f"internal verification failure: |S|={len(sel)} but n={g.n}")
    return _certify(g, sel, "vertex", Fraction(g.n, 6), log)


def construct_doubled_pair(g: Multigraph) -> PdsCertificate:
    """Certified set of size ``(n-2)/6`` avoiding the doubled pair and its outside neighbors.

    Verified under the edge model.
    """
    doubled = g.doubled_pairs()
    if len(doubled) != 1 or g.multiplicity(*doubled[0]) != 2:
        raise ConstructionError(f"construct_doubled_pair: need exactly one doubled pair, found {doubled}")
    flags = classify(g)
    _require(flags, ["cubic", "claw_free", "diamond_free", "two_edge_connected"], "construct_doubled_pair")
    u, v = doubled[0]
    (w,) = [x for x in g.neighbors(u) if x != v]
    (z,) = [x for x in g.neighbors(v) if x != u]
    if w == z:
        raise ConstructionError("construct_doubled_pair: w = z, graph is not 2-edge-connected")
    if g.has_edge(w, z):
        raise ConstructionError("construct_doubled_pair: w and z already adjacent")
    reduced, labels = g.without([u, v])
    index = {x: i for i, x in enumerate(labels)}
    wz = norm(index[w], index[z])
    reduced = reduced.with_edges(add=[wz])
    rflags = classify(reduced)
    _require(rflags, ["simple", "cubic", "claw_free", "diamond_free", "two_edge_connected"],
             "construct_doubled_pair (reduced graph)")
    sel_r, inner = _factor_selection(reduced, required=wz)
    sel = tuple(sorted(labels[x] for x in sel_r))
    if set(sel) & {u, v, w, z}:
        raise ConstructionError("internal verification failure: selection meets {u, v, w, z}")
    log = ConstructionLog("doubled_pair", g.n, selection=sel, parts=[])
    log.notes.append(f"doubled pair u={u} v={v}, outside neighbors w={w} z={z}")
    log.notes.append(f"reduced graph relabels {labels}")
    log.parts.append(ComponentLog(0, "reduced", 0, 0, "factor through wz", labels, sel, inner))
    return _certify(g, sel, "edge", Fraction(g.n - 2, 6), log)


# ---------------------------------------------------------------------------
# general case via the bridge tree


def _root_tree(tree: Multigraph) -> tuple[int, list[int], list[int]]:
    """Root at an end of a diametral path; returns (root, depth, parent)."""
    d0 = tree.distances(0)
    a = min(range(tree.n), key=lambda x: (-d0[x], x))
    depth = tree.distances(a)
    parent = [-1] * tree.n
    for x in range(tree.n):
        if x != a:
            parent[x] = min(y for y in tree.neighbors(x) if depth[y] == depth[x] - 1)
    return a, depth, parent


def _component_selection(g: Multigraph, dec: BridgeDecomposition, i: int, parent: int,
                         depth: int) -> ComponentLog:
    comp = dec.components[i]
    local, labels = g.induced(comp.vertices)
    index = {x: k for k, x in enumerate(labels)}
    ports = [x for x in comp.vertices if local.degree(index[x]) == 2]
    if parent >= 0:
        up = dec.bridge_between(i, parent)
        first = up[0] if dec.owner[up[0]] == i else up[1]
    else:
        if len(ports) != 1:
            raise ConstructionError("root component is not a leaf of the bridge tree")
        first = ports[0]
    xs = [index[first]] + sorted(index[x] for x in ports if x != first)
    r = len(xs)
    if r % 2 == 0:
        aug = local.with_edges(add=[(xs[a], xs[a + 1]) for a in range(0, r, 2)])
        case = "even: pair x1x2, x3x4, ..."
        flags = classify(aug)
        _require(flags, ["simple", "cubic", "claw_free", "diamond_free", "two_edge_connected"],
                 f"augmented component H{i}")
        cert = construct_2ec(aug)
        sel = tuple(sorted(labels[x] for x in cert.seed))
    else:
        aug = local.with_edges(add=[(xs[a], xs[a + 1]) for a in range(1, r - 1, 2)])
        aug = smooth(aug, xs[0])
        case = "odd: pair x2x3, x4x5, ..., smooth x1"
        flags = classify(aug)
        _require(flags, ["cubic", "claw_free", "diamond_free", "two_edge_connected"],
                 f"augmented component H{i}")
        cert = construct_doubled_pair(aug)
        sel = tuple(sorted(labels[x if x < xs[0] else x + 1] for x in cert.seed))
    return ComponentLog(i, comp.kind, depth, r, case, labels, sel, cert.log)


def construct_general(g: Multigraph) -> PdsCertificate:
    """Certified power dominating set of size at most ``n/6`` for a connected input."""
    flags = classify(g)
    _require(flags, ["simple", "cubic", "claw_free", "diamond_free", "connected"], "construct_general")
    dec = bridge_decomposition(g)
    if not dec.bridges:
        return construct_2ec(g)
    root, depth, parent = _root_tree(dec.tree)
    log = ConstructionLog("general", g.n)
    log.notes.append(f"{len(dec.bridges)} bridges, {len(dec.components)} components, "
                     f"root H{root}, bridge-tree depth {max(depth)}")
    selected: list[int] = []
    for i, comp in enumerate(dec.components):
        if comp.kind == "I":
            raise ConstructionError("Type I component in a claw-free cubic graph")
        if comp.kind == "II":
            if len(comp.vertices) != 3:
                raise ConstructionError(f"Type II component H{i} is not a triangle")
            log.parts.append(ComponentLog(i, "II", depth[i], 3, "triangle: no vertices",
                                          list(comp.vertices), ()))
            continue
        part = _component_selection(g, dec, i, parent[i], depth[i])
        log.parts.append(part)
        selected += part.selected
    log.selection = tuple(sorted(selected))
    return _certify(g, log.selection, "vertex", Fraction(g.n, 6), log)


def construct_any(g: Multigraph) -> list[PdsCertificate]:
    """Per-component certificates for a possibly disconnected input."""
    certs = []
    for comp in g.components():
        sub, _ = g.induced(comp)
        certs.append(construct_general(sub))
    return certs
