"""Bounds on the power domination number of Cartesian products."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

from .exact import (
    Guard,
    SizeGuardError,
    all_min_pds,
    domination_number,
    gamma_p_exact,
    min_spider_partitions,
    strong_support_count,
    strong_support_vertices,
    zero_forcing_number,
)
from .graph import GraphError, Multigraph
from .observe import observed_mask
from .structure import cartesian_product, classify

MAX_PRODUCT = 40


@dataclass(frozen=True)
class FactorValues:
    order: int
    gamma_p: int
    gamma: int
    zero_forcing: int
    strong_support: int
    is_path: bool


def factor_values(g: Multigraph) -> FactorValues:
    flags = classify(g)
    return FactorValues(
        order=g.n,
        gamma_p=gamma_p_exact(g)[0],
        gamma=domination_number(g)[0],
        zero_forcing=zero_forcing_number(g)[0],
        strong_support=strong_support_count(g),
        is_path=flags.tree and max(g.degrees(), default=0) <= 2,
    )


@dataclass
class BoundsReport:
    lower_factor: int
    lower_vs: int
    upper_order: int
    upper_gamma_z: int
    exact: int | None = None
    zf_exact: int | None = None
    equality_flags: dict[str, int] = field(default_factory=dict)
    factors: tuple[FactorValues, FactorValues] | None = None

    @property
    def lower(self) -> int:
        return max(self.lower_factor, self.lower_vs)

    @property
    def upper(self) -> int:
        return min(self.upper_order, self.upper_gamma_z)

    def consistent(self) -> bool:
        ok = self.lower <= self.upper
        if self.exact is not None:
            ok = ok and self.lower <= self.exact <= self.upper
            ok = ok and all(v == self.exact for v in self.equality_flags.values())
        if self.zf_exact is not None:
            ok = ok and self.lower_vs <= self.zf_exact
        return ok


def _equality_flags(a: FactorValues, b: FactorValues) -> dict[str, int]:
    """Product values forced by matching lower and upper bounds, keyed by the case that fired."""
    flags = {}
    for tag, x, y in (("GH", a, b), ("HG", b, a)):
        if x.gamma_p == x.gamma and y.is_path:
            flags[f"path[{tag}]"] = x.gamma
        if x.gamma_p == x.zero_forcing and y.gamma == 1:
            flags[f"dominating_vertex[{tag}]"] = x.zero_forcing
        if x.strong_support == x.gamma and y.strong_support == y.zero_forcing:
            flags[f"strong_support[{tag}]"] = x.gamma * y.zero_forcing
    return flags


def pd_bounds(g: Multigraph, h: Multigraph, compute_exact: bool = False,
              compute_zf: bool = False, max_product: int = MAX_PRODUCT) -> BoundsReport:
    for x in (g, h):
        if not (x.is_simple and x.is_connected()):
            raise GraphError("pd_bounds: factors must be simple and connected")
    if (compute_exact or compute_zf) and g.n * h.n > max_product:
        raise SizeGuardError(f"pd_bounds: product order {g.n * h.n} exceeds cap {max_product}")
    a, b = factor_values(g), factor_values(h)
    report = BoundsReport(
        lower_factor=max(a.gamma_p, b.gamma_p),
        lower_vs=a.strong_support * b.strong_support,
        upper_order=min(a.gamma_p * b.order, b.gamma_p * a.order),
        upper_gamma_z=min(a.gamma * b.zero_forcing, b.gamma * a.zero_forcing),
        equality_flags=_equality_flags(a, b),
        factors=(a, b),
    )
    if compute_exact or compute_zf:
        gh = cartesian_product(g, h)
        guard = Guard(max_n=max_product)
        if compute_exact:
            report.exact = gamma_p_exact(gh, guard=guard)[0]
        if compute_zf:
            report.zf_exact = zero_forcing_number(gh, guard=guard)[0]
    return report


def dominating_zero_forcing_seed(g: Multigraph, h: Multigraph) -> list[tuple[int, int]]:
    """``D x Z``: a minimum dominating set of ``G`` times a minimum zero forcing set of ``H``.

    It power dominates ``G □ H``: the domination step covers ``V(G) x Z``, and
    then every force of ``Z`` in ``H`` runs in every ``G``-fiber at once.
    """
    _, d = domination_number(g)
    _, z = zero_forcing_number(h)
    return [(x, y) for x in d for y in z]


# ---------------------------------------------------------------------------
# trees


@dataclass(frozen=True)
class VizingVerdict:
    status: str  # "hypothesis_not_met", "holds", "refuted"
    gamma_p: tuple[int, int] | None = None
    gamma: tuple[int, int] | None = None
    product_gamma_p: int | None = None
    bound: int | None = None
    witness: tuple[int, ...] | None = None


def vizing_tree_check(t1: Multigraph, t2: Multigraph, max_product: int = MAX_PRODUCT) -> VizingVerdict:
    """Check ``γ_P(T1 □ T2) >= γ_P(T1) γ_P(T2)`` for trees with ``γ_P = γ``."""
    for t in (t1, t2):
        if not classify(t).tree:
            raise GraphError("vizing_tree_check: inputs must be trees")
    gp = (gamma_p_exact(t1)[0], gamma_p_exact(t2)[0])
    gm = (domination_number(t1)[0], domination_number(t2)[0])
    if gp[0] != gm[0] or gp[1] != gm[1]:
        return VizingVerdict("hypothesis_not_met", gp, gm)
    if t1.n * t2.n > max_product:
        raise SizeGuardError(f"vizing_tree_check: product order {t1.n * t2.n} exceeds cap {max_product}")
    prod = cartesian_product(t1, t2)
    k, witness = gamma_p_exact(prod, guard=Guard(max_n=max_product))
    bound = gp[0] * gp[1]
    status = "holds" if k >= bound else "refuted"
    return VizingVerdict(status, gp, gm, k, bound, witness if status == "refuted" else None)


def support_block(g: Multigraph, x: int, h: Multigraph, y: int) -> tuple[list[int], int]:
    """The 9-vertex block around strong support vertices ``x`` of ``G`` and ``y`` of ``H``.

    Returns the block's product indices and the corner ``(l1, l1')`` that no seed
    set avoiding the block can observe.
    """
    lx = [w for w in g.neighbors(x) if g.degree(w) == 1][:2]
    ly = [w for w in h.neighbors(y) if h.degree(w) == 1][:2]
    if len(lx) < 2 or len(ly) < 2:
        raise GraphError("support_block: x and y must be strong support vertices")
    nh = h.n
    block = [a * nh + b for a, b in iproduct([x] + lx, [y] + ly)]
    return sorted(block), lx[0] * nh + ly[0]


def block_blocks_observation(g: Multigraph, x: int, h: Multigraph, y: int) -> bool:
    """True when seeding every vertex outside the block still leaves its corner unobserved."""
    prod = cartesian_product(g, h)
    block, corner = support_block(g, x, h, y)
    outside = [v for v in prod.vertices() if v not in set(block)]
    return not (observed_mask(prod, outside) >> corner) & 1


# ---------------------------------------------------------------------------
# flaw witness search


@dataclass(frozen=True)
class FlawWitness:
    g: Multigraph
    t: Multigraph
    pds: tuple[int, ...]
    partition: tuple[tuple[int, ...], ...]
    block: int

    def product_blocks(self) -> list[set[int]]:
        nt = self.t.n
        return [{a * nt + b for a in self.g.vertices() for b in part} for part in self.partition]


def flaw_witness_search(g: Multigraph, t: Multigraph, max_product: int = MAX_PRODUCT) -> FlawWitness | None:
    """Search a minimum PDS of ``G □ T`` missing some block ``V(G) x V_i`` of a minimum spider partition."""
    if not classify(t).tree:
        raise GraphError("flaw_witness_search: t must be a tree")
    if g.n * t.n > max_product:
        raise SizeGuardError(f"flaw_witness_search: product order {g.n * t.n} exceeds cap {max_product}")
    prod = cartesian_product(g, t)
    partitions = min_spider_partitions(t)
    if len(partitions[0]) == 1:
        return None
    nt = t.n
    for s in all_min_pds(prod, guard=Guard(max_n=max_product)):
        cols = {v % nt for v in s}
        for parts in partitions:
            for i, part in enumerate(parts):
                if not cols.intersection(part):
                    return FlawWitness(g, t, s, tuple(tuple(p) for p in parts), i)
    return None


def strong_support_pairs(g: Multigraph, h: Multigraph) -> list[tuple[int, int]]:
    return [(x, y) for x in strong_support_vertices(g) for y in strong_support_vertices(h)]
