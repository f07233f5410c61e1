"""Power domination toolkit for cubic graphs and Cartesian products."""

from .construct import ConstructionError, construct_2ec, construct_any, construct_doubled_pair, construct_general
from .exact import (
    SizeGuardError,
    domination_number,
    gamma_exact,
    gamma_p_exact,
    spider_number,
    strong_support_count,
    tree_pd_equals_dom,
    zero_forcing_number,
)
from .graph import GraphError, Multigraph
from .observe import (
    PdsCertificate,
    is_power_dominating,
    make_certificate,
    power_dominating_closure,
    verify_certificate,
    zero_forcing_closure,
)
from .products import pd_bounds, vizing_tree_check

__all__ = [
    "ConstructionError", "GraphError", "Multigraph", "PdsCertificate", "SizeGuardError",
    "construct_2ec", "construct_any", "construct_doubled_pair", "construct_general",
    "domination_number", "gamma_exact", "gamma_p_exact", "is_power_dominating",
    "make_certificate", "pd_bounds", "power_dominating_closure", "spider_number",
    "strong_support_count", "tree_pd_equals_dom", "verify_certificate", "vizing_tree_check",
    "zero_forcing_closure", "zero_forcing_number",
]
