"""Asymmetric channel discrimination.

The geometric Renyi channel divergence is a strong converse bound on the
Stein exponent for telling N from M with adaptive strategies; D_max is the
looser companion bound.
"""

from __future__ import annotations

import math
from typing import Optional, Tuple

import numpy as np

from ..channels import QuantumChannel, channel_dmax, channel_geometric_divergence
from ..config import Settings
from ..conic import geomean_epigraph, new_program, solve
from ..divergences import INFINITE, supported_in
from ..errors import ContractViolation
from .common import geometric_prefactor, log2_bits, ptrace_out, resolve, resolve_level


def discrimination_bound(N: QuantumChannel, M: QuantumChannel, alpha: float) -> float:
    """Geometric Renyi channel divergence D_alpha(N || M) in bits; inf on a support violation."""
    return channel_geometric_divergence(N, M, alpha)


def discrimination_bounds(N: QuantumChannel, M: QuantumChannel, alpha: float) -> Tuple[float, float]:
    """(D_alpha(N || M), D_max(N || M))."""
    return channel_geometric_divergence(N, M, alpha), channel_dmax(N, M)


def discrimination_bound_sdp(
    N: QuantumChannel,
    M: QuantumChannel,
    level: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> float:
    """D_alpha(N || M) at alpha = 1 + 2**-level from the epigraph program.

    min y over G_{1-alpha}(J_N, J_M) <= Z, tr_B Z <= y I; NaN if the solve
    is not optimal.
    """
    settings = resolve(settings)
    level = resolve_level(level, settings)
    if N.dims != M.dims:
        raise ContractViolation(f"Channels act on different spaces: {N.dims} vs {M.dims}")
    if not supported_in(N.choi, M.choi):
        return INFINITE
    dim_in, dim_out = N.dims
    n = dim_in * dim_out
    program = new_program(f"channel_divergence_l{level}", settings)
    Z = program.hermitian("Z", n)
    y = program.real("y")
    geomean_epigraph(program, N.choi, M.choi, Z, level, n)
    program.psd(y * np.eye(dim_in) - ptrace_out(Z, dim_in, dim_out))
    program.minimize(y)
    report = solve(program, settings)
    if not report.ok:
        return math.nan
    return geometric_prefactor(level) * log2_bits(report.objective)


def strong_converse_fidelity(n: int, rate: float, capacity_bound: float, alpha: float) -> float:
    """Ceiling 2^{-n ((alpha-1)/alpha) (rate - bound)} on the fidelity of n-use protocols.

    Rates at or below the bound give the trivial ceiling 1.
    """
    if n < 1:
        raise ContractViolation(f"n must be >= 1, got {n}")
    if not 1 < alpha <= 2:
        raise ContractViolation(f"alpha must lie in (1, 2], got {alpha}")
    if math.isnan(capacity_bound):
        return math.nan
    excess = rate - capacity_bound
    if excess <= 0:
        return 1.0
    return 2.0 ** (-n * ((alpha - 1) / alpha) * excess)
