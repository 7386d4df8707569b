"""Delta-matroid twist widths and ribbon-graph partial duality."""

from .core import (
    AxiomVerdict,
    SetSystem,
    WidthSummary,
    check_symmetric_exchange,
    elements,
    hat_family,
    make_set_system,
    max_family,
    max_twist_width,
    min_family,
    min_hat_feasible,
    sandwich,
    twist,
    width,
    width_summary,
)
from .monotone import (
    ChoiceStrategy,
    WidthTrace,
    exists_monotone_sequence_bruteforce,
    monotone_sequence,
    verify_trace,
    width_profile,
)
from .ribbon import (
    RibbonGraph,
    boundary_count,
    deficiency,
    delta_matroid_of,
    euler_genus,
    geometric_dual,
    max_pd_genus,
    partial_dual,
    pd_genus_formula,
    quasi_trees,
)

__version__ = "0.1.0"

__all__ = [
    "AxiomVerdict",
    "SetSystem",
    "WidthSummary",
    "check_symmetric_exchange",
    "elements",
    "hat_family",
    "make_set_system",
    "max_family",
    "max_twist_width",
    "min_family",
    "min_hat_feasible",
    "sandwich",
    "twist",
    "width",
    "width_summary",
    "ChoiceStrategy",
    "WidthTrace",
    "exists_monotone_sequence_bruteforce",
    "monotone_sequence",
    "verify_trace",
    "width_profile",
    "RibbonGraph",
    "boundary_count",
    "deficiency",
    "delta_matroid_of",
    "euler_genus",
    "geometric_dual",
    "max_pd_genus",
    "partial_dual",
    "pd_genus_formula",
    "quasi_trees",
]
