"""Immutable undirected multigraph on vertices ``0..n-1``."""

from __future__ import annotations

import hashlib
from collections.abc import Iterable, Mapping
from functools import cached_property
from types import MappingProxyType

Pair = tuple[int, int]


class GraphError(ValueError):
    """Raised when a graph violates the preconditions of an operation."""


def norm(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


class Multigraph:
    """Loopless multigraph; the single representation for simple graphs, trees and products.

    ``edges`` may contain ``(u, v)`` pairs (repeated pairs add up) or
    ``(u, v, mult)`` triples. Instances are immutable and hashable.
    """

    def __init__(self, n: int, edges: Iterable = ()):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        mult: dict[Pair, int] = {}
        for e in edges:
            if len(e) == 2:
                u, v = e
                k = 1
            else:
                u, v, k = e
            u, v, k = int(u), int(v), int(k)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"loop at vertex {u} rejected")
            if k < 1:
                raise GraphError(f"multiplicity of ({u}, {v}) must be >= 1")
            p = norm(u, v)
            mult[p] = mult.get(p, 0) + k
        self.n = n
        self._mult = dict(sorted(mult.items()))

    # -- basic queries ---------------------------------------------------

    @property
    def edges(self) -> Mapping[Pair, int]:
        """Read-only view ``pair -> multiplicity`` in sorted pair order."""
        return MappingProxyType(self._mult)

    @cached_property
    def m(self) -> int:
        """Number of edges counted with multiplicity."""
        return sum(self._mult.values())

    @cached_property
    def _adj(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self._mult:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def _deg(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for (u, v), k in self._mult.items():
            deg[u] += k
            deg[v] += k
        return tuple(deg)

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Distinct neighbors of ``v`` in ascending order."""
        return self._adj[v]

    def degree(self, v: int) -> int:
        """Degree counting multiplicities."""
        return self._deg[v]

    def degrees(self) -> tuple[int, ...]:
        return self._deg

    def multiplicity(self, u: int, v: int) -> int:
        if u == v:
            return 0
        return self._mult.get(norm(u, v), 0)

    def has_edge(self, u: int, v: int) -> bool:
        return self.multiplicity(u, v) > 0

    def pairs(self) -> list[Pair]:
        """Distinct adjacent pairs ``(u, v)`` with ``u < v``, sorted."""
        return list(self._mult)

    def edge_list(self) -> list[Pair]:
        """Every edge copy as a pair; parallel edges repeat."""
        return [p for p, k in self._mult.items() for _ in range(k)]

    @cached_property
    def is_simple(self) -> bool:
        return all(k == 1 for k in self._mult.values())

    def doubled_pairs(self) -> list[Pair]:
        return [p for p, k in self._mult.items() if k > 1]

    # -- derived graphs --------------------------------------------------

    def support(self) -> Multigraph:
        """Underlying simple graph."""
        if self.is_simple:
            return self
        return Multigraph(self.n, self._mult)

    def with_edges(self, add: Iterable[Pair] = (), remove: Iterable[Pair] = ()) -> Multigraph:
        """Copy with edge copies added/removed (one copy per listed pair)."""
        mult = dict(self._mult)
        for u, v in remove:
            p = norm(u, v)
            if mult.get(p, 0) == 0:
                raise GraphError(f"cannot remove missing edge {p}")
            mult[p] -= 1
            if mult[p] == 0:
                del mult[p]
        for u, v in add:
            p = norm(u, v)
            mult[p] = mult.get(p, 0) + 1
        return Multigraph(self.n, [(u, v, k) for (u, v), k in mult.items()])

    def induced(self, vertices: Iterable[int]) -> tuple[Multigraph, list[int]]:
        """Induced subgraph relabelled ``0..k-1`` in ascending order of ``vertices``.

        Returns the subgraph and ``labels`` with ``labels[i]`` the original vertex.
        """
        labels = sorted(set(vertices))
        index = {v: i for i, v in enumerate(labels)}
        sub = [
            (index[u], index[v], k)
            for (u, v), k in self._mult.items()
            if u in index and v in index
        ]
        return Multigraph(len(labels), sub), labels

    def without(self, vertices: Iterable[int]) -> tuple[Multigraph, list[int]]:
        drop = set(vertices)
        return self.induced(v for v in range(self.n) if v not in drop)

    # -- connectivity ----------------------------------------------------

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self._adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def distances(self, source: int) -> list[int]:
        """BFS distances from ``source``; ``-1`` for unreachable vertices."""
        dist = [-1] * self.n
        dist[source] = 0
        frontier = [source]
        while frontier:
            nxt = []
            for x in frontier:
                for y in self._adj[x]:
                    if dist[y] < 0:
                        dist[y] = dist[x] + 1
                        nxt.append(y)
            frontier = nxt
        return dist

    # -- bit masks used by the fast closures ------------------------------

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << w for w in a) for a in self._adj)

    @cached_property
    def closed_masks(self) -> tuple[int, ...]:
        return tuple(m | (1 << v) for v, m in enumerate(self.neighbor_masks))

    # -- identity --------------------------------------------------------

    def canonical_text(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines += [f"{u} {v} {k}" for (u, v), k in self._mult.items()]
        return "\n".join(lines) + "\n"

    def fingerprint(self) -> dict:
        digest = hashlib.sha256(self.canonical_text().encode()).hexdigest()
        return {"order": self.n, "size": self.m, "sha256": digest}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.n == other.n and self._mult == other._mult

    def __hash__(self) -> int:
        return hash((self.n, tuple(self._mult.items())))

    def __repr__(self) -> str:
        kind = "simple" if self.is_simple else "multi"
        return f"Multigraph(n={self.n}, m={self.m}, {kind})"

    def __setattr__(self, name, value):
        if name in ("n", "_mult") and hasattr(self, "_mult"):
            raise AttributeError("Multigraph is immutable")
        object.__setattr__(self, name, value)
