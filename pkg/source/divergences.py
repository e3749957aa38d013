"""State-level quantum divergences in bits.

Every function returns a float. A support violation (rho not supported
inside sigma where the divergence needs it) returns `math.inf`, never a large
finite number. Support inclusion is decided by
||(I - P_sigma) rho (I - P_sigma)||_inf <= 1e-9 with P_sigma the support
projector of sigma.

alpha is taken as any real in the documented range; the dyadic grid
alpha = 1 + 2**-l only matters for the semidefinite representations.
"""

from __future__ import annotations

import math
from typing import Tuple

import numpy as np

from . import linalg
from .errors import ContractViolation, SupportViolation

INFINITE = math.inf
SUPPORT_TOL = 1e-9
LN2 = math.log(2.0)


def _pair(rho: np.ndarray, sigma: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    rho = linalg.check_hermitian(rho)
    sigma = linalg.check_hermitian(sigma)
    if rho.shape != sigma.shape:
        raise ContractViolation(f"Dimension mismatch: {rho.shape} vs {sigma.shape}")
    return rho, sigma


def _check_alpha(alpha: float, low: float, high: float, name: str) -> None:
    if not (low < alpha <= high) or alpha == 1:
        raise ContractViolation(f"{name} needs alpha in ({low}, {high}] excluding 1, got {alpha}")


def supported_in(rho: np.ndarray, sigma: np.ndarray, tol: float = SUPPORT_TOL) -> bool:
    """True when support(rho) is contained in support(sigma)."""
    complement = np.eye(sigma.shape[0]) - linalg.support_projector(sigma)
    return linalg.operator_norm(complement @ rho @ complement) <= tol


def _log2(x: float) -> float:
    if x <= 0:
        return -INFINITE if x == 0 else math.nan
    return math.log2(x)


def umegaki(rho: np.ndarray, sigma: np.ndarray) -> float:
    """D(rho||sigma) = tr rho (log rho - log sigma)."""
    rho, sigma = _pair(rho, sigma)
    if not supported_in(rho, sigma):
        return INFINITE
    value = np.trace(rho @ (linalg.psd_log(rho) - linalg.psd_log(sigma))).real
    return float(value) / LN2


def max_relative(rho: np.ndarray, sigma: np.ndarray) -> float:
    """D_max(rho||sigma) = log min{t | rho <= t sigma}."""
    rho, sigma = _pair(rho, sigma)
    if not supported_in(rho, sigma):
        return INFINITE
    inv_root = linalg.psd_power(sigma, -0.5)
    ratio = linalg.operator_norm(linalg.hermitian_part(inv_root @ rho @ inv_root))
    if ratio <= 0:
        return -INFINITE
    return math.log2(ratio)


def min_relative(rho: np.ndarray, sigma: np.ndarray) -> float:
    """D_min(rho||sigma) = -log tr P_rho sigma."""
    rho, sigma = _pair(rho, sigma)
    overlap = float(np.trace(linalg.support_projector(rho) @ sigma).real)
    if overlap <= 0:
        return INFINITE
    return -math.log2(overlap)


def petz(rho: np.ndarray, sigma: np.ndarray, alpha: float) -> float:
    """Petz Renyi divergence, alpha in (0, 1) or (1, 2]."""
    _check_alpha(alpha, 0.0, 2.0, "petz")
    rho, sigma = _pair(rho, sigma)
    if alpha > 1 and not supported_in(rho, sigma):
        return INFINITE
    q = float(np.trace(linalg.psd_power(rho, alpha) @ linalg.psd_power(sigma, 1 - alpha)).real)
    if q <= 0:
        return INFINITE
    return math.log2(q) / (alpha - 1)


def sandwiched(rho: np.ndarray, sigma: np.ndarray, alpha: float) -> float:
    """Sandwiched Renyi divergence for alpha > 1."""
    if alpha <= 1:
        raise ContractViolation(f"sandwiched needs alpha > 1, got {alpha}")
    rho, sigma = _pair(rho, sigma)
    if not supported_in(rho, sigma):
        return INFINITE
    s = linalg.psd_power(sigma, (1 - alpha) / (2 * alpha))
    inner = linalg.hermitian_part(s @ rho @ s)
    q = float(np.trace(linalg.psd_power(inner, alpha)).real)
    return _log2(q) / (alpha - 1)


def geometric_trace(rho: np.ndarray, sigma: np.ndarray, alpha: float) -> float:
    """tr G_{1-alpha}(rho, sigma), the quantity inside the geometric Renyi log."""
    return float(np.trace(linalg.weighted_geometric_mean(rho, sigma, 1 - alpha)).real)


def geometric_renyi(rho: np.ndarray, sigma: np.ndarray, alpha: float) -> float:
    """Geometric Renyi divergence (1/(alpha-1)) log tr G_{1-alpha}(rho, sigma), alpha in (1, 2]."""
    _check_alpha(alpha, 1.0, 2.0, "geometric_renyi")
    rho, sigma = _pair(rho, sigma)
    if not supported_in(rho, sigma):
        return INFINITE
    try:
        q = geometric_trace(rho, sigma, alpha)
    except SupportViolation:
        return INFINITE
    return _log2(q) / (alpha - 1)


def belavkin_staszewski(rho: np.ndarray, sigma: np.ndarray) -> float:
    """tr rho log(rho^1/2 sigma^-1 rho^1/2), the alpha -> 1 limit of the geometric divergence."""
    rho, sigma = _pair(rho, sigma)
    if not supported_in(rho, sigma):
        return INFINITE
    root = linalg.psd_sqrt(rho)
    inner = linalg.hermitian_part(root @ linalg.psd_power(sigma, -1) @ root)
    return float(np.trace(rho @ linalg.psd_log(inner)).real) / LN2


def binary_renyi(p: float, q: float, alpha: float) -> float:
    """Renyi divergence between the two-outcome distributions (p, 1-p) and (q, 1-q)."""
    if not (0 <= p <= 1 and 0 <= q <= 1):
        raise ContractViolation(f"Probabilities out of range: p={p}, q={q}")
    total = 0.0
    for a, b in ((p, q), (1 - p, 1 - q)):
        if a == 0:
            continue
        if b == 0:
            if alpha > 1:
                return INFINITE
            continue
        total += a ** alpha * b ** (1 - alpha)
    if total <= 0:
        return INFINITE
    return math.log2(total) / (alpha - 1)


def trace_distance(rho: np.ndarray, sigma: np.ndarray) -> float:
    rho, sigma = _pair(rho, sigma)
    return 0.5 * linalg.trace_norm(rho - sigma)


def geometric_renyi_sdp(rho: np.ndarray, sigma: np.ndarray, level: int, settings=None) -> float:
    """Geometric Renyi divergence at alpha = 1 + 2**-level from its semidefinite program.

    Minimizes tr M over the epigraph G_{1-alpha}(rho, sigma) <= M; NaN if the
    solve is not optimal.
    """
    from .conic import geomean_epigraph, new_program, real_trace, solve

    rho, sigma = _pair(rho, sigma)
    if not supported_in(rho, sigma):
        return INFINITE
    d = rho.shape[0]
    program = new_program(f"geometric_renyi_l{level}", settings)
    M = program.hermitian("M", d)
    geomean_epigraph(program, rho, sigma, M, level, d)
    program.minimize(real_trace(M))
    report = solve(program, settings)
    if not report.ok:
        return math.nan
    return (2.0 ** level) * _log2(report.objective)
