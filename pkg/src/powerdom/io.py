"""Edge-list text, graph6 and DOT formats.

Edge-list format: a header line ``n m`` (``m`` counts edges with multiplicity),
then one ``u v [mult]`` line per adjacent pair, 0-based. ``#`` starts a comment.
"""

from __future__ import annotations

from collections.abc import Iterable
from pathlib import Path

import networkx as nx

from .graph import GraphError, Multigraph


def parse_edge_list(text: str) -> Multigraph:
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise GraphError("edge list: missing 'n m' header")
    try:
        n, m = (int(x) for x in rows[0])
        edges = []
        for r in rows[1:]:
            if len(r) not in (2, 3):
                raise GraphError(f"edge list: bad line {' '.join(r)!r}")
            edges.append(tuple(int(x) for x in r) if len(r) == 3 else (int(r[0]), int(r[1]), 1))
    except ValueError as exc:
        raise GraphError(f"edge list: {exc}") from None
    g = Multigraph(n, edges)
    if g.m != m:
        raise GraphError(f"edge list: header says {m} edges, found {g.m}")
    return g


def format_edge_list(g: Multigraph) -> str:
    lines = [f"{g.n} {g.m}"]
    for (u, v), k in g.edges.items():
        lines.append(f"{u} {v}" if k == 1 else f"{u} {v} {k}")
    return "\n".join(lines) + "\n"


def parse_graph6(text: str) -> Multigraph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    try:
        nxg = nx.from_graph6_bytes(s.encode("ascii"))
    except (nx.NetworkXError, ValueError) as exc:
        raise GraphError(f"graph6: {exc}") from None
    return Multigraph(nxg.number_of_nodes(), sorted(nxg.edges()))


def format_graph6(g: Multigraph) -> str:
    if not g.is_simple:
        raise GraphError("graph6 encodes simple graphs only")
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from(g.pairs())
    return nx.to_graph6_bytes(nxg, header=False).decode("ascii")


def to_dot(g: Multigraph, highlight: Iterable[int] = (), name: str = "G") -> str:
    marked = set(highlight)
    out = [f"graph {name} {{"]
    for v in g.vertices():
        style = ' [style=filled, fillcolor=black, fontcolor=white]' if v in marked else ""
        out.append(f"  {v}{style};")
    for u, v in g.edge_list():
        out.append(f"  {u} -- {v};")
    out.append("}")
    return "\n".join(out) + "\n"


def read_graph(path: str | Path) -> Multigraph:
    """Read a graph file; ``.g6`` / ``.graph6`` are graph6, anything else an edge list."""
    p = Path(path)
    text = p.read_text()
    if p.suffix in (".g6", ".graph6"):
        return parse_graph6(text)
    return parse_edge_list(text)


def write_graph(g: Multigraph, path: str | Path) -> None:
    p = Path(path)
    if p.suffix in (".g6", ".graph6"):
        p.write_text(format_graph6(g))
    elif p.suffix == ".dot":
        p.write_text(to_dot(g))
    else:
        p.write_text(format_edge_list(g))
