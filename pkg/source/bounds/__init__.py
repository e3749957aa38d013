"""Capacity bounds, grouped by communication task."""

from .bidirectional import bi_holevo_werner, bi_max_rains, bi_theta_geometric
from .classical import c_beta, c_zeta, upsilon_geometric, upsilon_max
from .discrimination import (
    discrimination_bound,
    discrimination_bound_sdp,
    discrimination_bounds,
    strong_converse_fidelity,
)
from .private import e_alpha, e_alpha_sigma, e_max, e_max_sigma
from .quantum import (
    holevo_werner,
    max_rains,
    max_rains_theta,
    rains_geometric,
    rains_geometric_state,
    rains_theta_geometric,
    theta_info_geometric,
)

__all__ = [
    "bi_holevo_werner",
    "bi_max_rains",
    "bi_theta_geometric",
    "c_beta",
    "c_zeta",
    "discrimination_bound",
    "discrimination_bound_sdp",
    "discrimination_bounds",
    "e_alpha",
    "e_alpha_sigma",
    "e_max",
    "e_max_sigma",
    "holevo_werner",
    "max_rains",
    "max_rains_theta",
    "rains_geometric",
    "rains_geometric_state",
    "rains_theta_geometric",
    "strong_converse_fidelity",
    "theta_info_geometric",
    "upsilon_geometric",
    "upsilon_max",
]
