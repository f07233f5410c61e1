"""Exact oracles by exhaustive subset search.

Searches ascend by cardinality and, within a cardinality, go in lexicographic
order, so witnesses are canonical. Work is capped by a size guard.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .graph import GraphError, Multigraph
from .observe import default_model, dominated_mask, edge_model_mask, propagate_mask
from .structure import classify

MAX_N_SEARCH = 40
MAX_N_ALL_GAMMA = 20
MAX_WORK = 3_000_000


class SizeGuardError(RuntimeError):
    """The requested exhaustive search exceeds the configured work cap."""


@dataclass(frozen=True)
class Guard:
    max_n: int = MAX_N_SEARCH
    max_work: int = MAX_WORK


def _min_subset(n: int, accept: Callable[[tuple[int, ...]], bool], guard: Guard,
                what: str, start: int = 0) -> tuple[int, tuple[int, ...]]:
    if n > guard.max_n:
        raise SizeGuardError(f"{what}: n={n} exceeds size guard max_n={guard.max_n}")
    work = 0
    for k in range(start, n + 1):
        work += comb(n, k)
        if work > guard.max_work:
            raise SizeGuardError(f"{what}: work {work} at cardinality {k} exceeds cap {guard.max_work}")
        for s in combinations(range(n), k):
            if accept(s):
                return k, s
    raise AssertionError(f"{what}: no subset accepted")  # the full vertex set always works


def _all_at(n: int, k: int, accept: Callable[[tuple[int, ...]], bool]) -> Iterator[tuple[int, ...]]:
    for s in combinations(range(n), k):
        if accept(s):
            yield s


def pd_predicate(g: Multigraph, model: str | None = None) -> Callable[[tuple[int, ...]], bool]:
    model = model or default_model(g)
    full = (1 << g.n) - 1
    if model == "edge":
        return lambda s: edge_model_mask(g, s) == full
    if not g.is_simple:
        raise GraphError("vertex model refused on a multigraph; use model='edge'")

    def accept(s):
        m = 0
        for v in s:
            m |= 1 << v
        return propagate_mask(g, dominated_mask(g, m)) == full
    return accept


def gamma_p_exact(g: Multigraph, model: str | None = None,
                  guard: Guard = Guard()) -> tuple[int, tuple[int, ...]]:
    """Power domination number and the lexicographically least minimum witness.

    Disconnected graphs are solved per component and summed.
    """
    comps = g.components()
    if len(comps) > 1:
        total, witness = 0, []
        for c in comps:
            sub, labels = g.induced(c)
            k, w = gamma_p_exact(sub, model, guard)
            total += k
            witness += [labels[v] for v in w]
        return total, tuple(sorted(witness))
    if g.n == 0:
        return 0, ()
    return _min_subset(g.n, pd_predicate(g, model), guard, "gamma_p", start=1)


def all_min_pds(g: Multigraph, model: str | None = None, guard: Guard = Guard()) -> list[tuple[int, ...]]:
    k, _ = gamma_p_exact(g, model, guard)
    if comb(g.n, k) > guard.max_work:
        raise SizeGuardError(f"all_min_pds: C({g.n},{k}) exceeds cap {guard.max_work}")
    return list(_all_at(g.n, k, pd_predicate(g, model)))


def _dom_predicate(g: Multigraph):
    full = (1 << g.n) - 1

    def accept(s):
        m = 0
        for v in s:
            m |= 1 << v
        return dominated_mask(g, m) == full
    return accept


def gamma_exact(g: Multigraph, guard: Guard = Guard(max_n=MAX_N_ALL_GAMMA)) -> tuple[int, list[tuple[int, ...]]]:
    """Domination number and every minimum dominating set."""
    if g.n == 0:
        return 0, [()]
    accept = _dom_predicate(g)
    k, _ = _min_subset(g.n, accept, guard, "gamma", start=1)
    return k, list(_all_at(g.n, k, accept))


def domination_number(g: Multigraph, guard: Guard = Guard()) -> tuple[int, tuple[int, ...]]:
    """Domination number with one witness; cheaper than :func:`gamma_exact`."""
    if g.n == 0:
        return 0, ()
    return _min_subset(g.n, _dom_predicate(g), guard, "gamma", start=1)


def zero_forcing_number(g: Multigraph, guard: Guard = Guard()) -> tuple[int, tuple[int, ...]]:
    if not g.is_simple:
        raise GraphError("zero forcing number: simple graphs only")
    if g.n == 0:
        return 0, ()
    full = (1 << g.n) - 1

    def accept(s):
        m = 0
        for v in s:
            m |= 1 << v
        return propagate_mask(g, m) == full
    return _min_subset(g.n, accept, guard, "zero_forcing", start=1)


def strong_support_vertices(g: Multigraph) -> list[int]:
    return [v for v in g.vertices() if sum(1 for w in g.neighbors(v) if g.degree(w) == 1) >= 2]


def strong_support_count(g: Multigraph) -> int:
    return len(strong_support_vertices(g))


# ---------------------------------------------------------------------------
# trees


def _require_tree(t: Multigraph, what: str) -> None:
    if not classify(t).tree:
        raise GraphError(f"{what}: input is not a tree")


@dataclass(frozen=True)
class TreeEqualityVerdict:
    holds: bool
    explanation: str
    gamma: int
    gamma_p: int
    gamma_sets: tuple[tuple[int, ...], ...]


def tree_pd_equals_dom(t: Multigraph) -> TreeEqualityVerdict:
    """Decide ``γ_P(T) = γ(T)`` from the γ-sets: unique, and made of strong support vertices.

    The verdict is cross-checked against both numbers computed directly.
    """
    _require_tree(t, "tree_pd_equals_dom")
    if t.n < 3:
        raise GraphError("tree_pd_equals_dom: order must be at least 3")
    gamma, sets = gamma_exact(t)
    gp, _ = gamma_p_exact(t)
    strong = set(strong_support_vertices(t))
    if len(sets) > 1:
        holds, why = False, f"{len(sets)} distinct gamma-sets"
    elif not set(sets[0]) <= strong:
        weak = sorted(set(sets[0]) - strong)
        holds, why = False, f"gamma-set vertices {weak} are not strong support vertices"
    else:
        holds, why = True, "unique gamma-set of strong support vertices"
    if holds != (gp == gamma):
        raise AssertionError(f"characterization disagrees with direct values gamma={gamma}, gamma_p={gp}")
    return TreeEqualityVerdict(holds, why, gamma, gp, tuple(sets))


def spider_partition_verify(t: Multigraph, parts: list[set[int]] | list[list[int]]) -> bool:
    seen: list[int] = [v for p in parts for v in p]
    if sorted(seen) != list(range(t.n)) or any(len(p) == 0 for p in parts):
        raise GraphError("spider_partition_verify: parts do not partition V(T)")
    for p in parts:
        sub, _ = t.induced(p)
        if not sub.is_connected():
            return False
        if sum(1 for d in sub.degrees() if d >= 3) > 1:
            return False
    return True


def _parts_after_cut(t: Multigraph, cut: tuple[tuple[int, int], ...]) -> list[list[int]]:
    return t.with_edges(remove=cut).components()


def _spider_cuts(t: Multigraph, k: int) -> Iterator[list[list[int]]]:
    for cut in combinations(t.pairs(), k - 1):
        parts = _parts_after_cut(t, cut)
        if spider_partition_verify(t, parts):
            yield parts


def spider_number(t: Multigraph, method: str = "partition",
                  max_edges: int = 24) -> tuple[int, list[list[int]]]:
    """Minimum spider partition of a tree.

    ``method="partition"`` searches partitions directly: a partition of a tree
    into subtrees is the component set of ``T - F`` for an edge set ``F``.
    ``method="power"`` takes the size from :func:`gamma_p_exact` and only
    searches cuts of that size for a witness.
    """
    _require_tree(t, "spider_number")
    if t.m > max_edges:
        raise SizeGuardError(f"spider_number: {t.m} edges exceeds guard {max_edges}")
    if method == "power":
        k, _ = gamma_p_exact(t)
        parts = next(_spider_cuts(t, k), None)
        if parts is None:
            raise AssertionError("no spider partition of size gamma_p")
        return k, parts
    if method != "partition":
        raise ValueError(f"unknown method {method!r}")
    for k in range(1, t.n + 1):
        parts = next(_spider_cuts(t, k), None)
        if parts is not None:
            return k, parts
    raise AssertionError("singletons always form a spider partition")


def min_spider_partitions(t: Multigraph, max_edges: int = 24) -> list[list[list[int]]]:
    """Every minimum spider partition, blocks sorted by smallest vertex."""
    k, _ = spider_number(t, max_edges=max_edges)
    return list(_spider_cuts(t, k))
