"""Strong converse bounds on two-way assisted quantum capacity.

  holevo_werner          log min{y | Y +- J^{T_B} >= 0, tr_B Y <= y I}
  max_rains              log min{mu | V, Y >= 0, (V - Y)^{T_B} >= J, tr_B(V + Y) <= mu I}
  max_rains_theta        log min{t | J <= G, R +- G^{T_B} >= 0, tr_B R <= t I}
  rains_geometric        max-form program of the geometric Renyi Rains information
  theta_info_geometric   geometric Renyi channel divergence to the Theta set
  rains_geometric_state  geometric Renyi Rains bound of a bipartite state

max_rains and max_rains_theta are two programs for the same quantity.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .. import linalg
from ..channels import QuantumChannel
from ..config import Settings
from ..conic import ConicProgram, geomean_epigraph, new_program, real_trace
from ..errors import ContractViolation
from ..types import BoundKind, BoundResult
from .common import (
    channel_set_bound,
    finish,
    geometric_prefactor,
    guarded,
    log2_bits,
    max_form_prefactor,
    max_form_program,
    ptrace_out,
    ptranspose,
    resolve,
    resolve_level,
)

_B = [1]


def holevo_werner(channel: QuantumChannel, settings: Optional[Settings] = None) -> BoundResult:
    settings = resolve(settings)
    dA, dB = channel.dims
    program = new_program("holevo_werner", settings)
    Y = program.hermitian("Y", dA * dB)
    y = program.real("y")
    JT = linalg.partial_transpose(channel.choi, channel.dims, 1)
    program.psd(Y - JT)
    program.psd(Y + JT)
    program.psd(y * np.eye(dA) - ptrace_out(Y, dA, dB))
    program.minimize(y)
    return finish(BoundKind.HOLEVO_WERNER, program, settings, log2_bits)


def max_rains(channel: QuantumChannel, settings: Optional[Settings] = None) -> BoundResult:
    settings = resolve(settings)
    dA, dB = channel.dims
    program = new_program("max_rains", settings)
    V = program.hermitian("V", dA * dB, psd=True)
    Y = program.hermitian("Y", dA * dB, psd=True)
    mu = program.real("mu")
    program.psd(ptranspose(V - Y, channel.dims, _B) - channel.choi)
    program.psd(mu * np.eye(dA) - ptrace_out(V + Y, dA, dB))
    program.minimize(mu)
    return finish(BoundKind.MAX_RAINS, program, settings, log2_bits)


def max_rains_theta(channel: QuantumChannel, settings: Optional[Settings] = None) -> BoundResult:
    settings = resolve(settings)
    dA, dB = channel.dims
    program = new_program("max_rains_theta", settings)
    G = program.hermitian("G", dA * dB)
    R = program.hermitian("R", dA * dB)
    t = program.real("t")
    program.psd(G - channel.choi)
    GT = ptranspose(G, channel.dims, _B)
    program.psd(R - GT)
    program.psd(R + GT)
    program.psd(t * np.eye(dA) - ptrace_out(R, dA, dB))
    program.minimize(t)
    return finish(BoundKind.MAX_RAINS_THETA, program, settings, log2_bits)


def theta_set(dims: Sequence[int], transposed: Sequence[int], dim_in: int, dim_out: int):
    """Constraints R +- S^{T} >= 0, I - tr_out R >= 0 on a channel-set member S."""

    def restrict(program: ConicProgram, S) -> None:
        R = program.hermitian("R", dim_in * dim_out)
        ST = ptranspose(S, dims, transposed)
        program.psd(R - ST)
        program.psd(R + ST)
        program.psd(np.eye(dim_in) - ptrace_out(R, dim_in, dim_out))

    return restrict


def theta_info_geometric(
    channel: QuantumChannel,
    level: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> BoundResult:
    """Geometric Renyi Theta-information at alpha = 1 + 2**-level."""
    settings = resolve(settings)
    level = resolve_level(level, settings)
    dA, dB = channel.dims
    restrict = theta_set(channel.dims, _B, dA, dB)
    return channel_set_bound(BoundKind.RAINS_THETA_GEOMETRIC, channel.choi, channel.dims, level, restrict, settings)


rains_theta_geometric = theta_info_geometric


def rains_geometric(
    channel: QuantumChannel,
    level: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> BoundResult:
    """Geometric Renyi Rains information from its maximization form."""
    settings = resolve(settings)
    level = resolve_level(level, settings)
    program, lifted, Z0 = max_form_program(f"rains_geometric_l{level}", channel.choi, channel.dims, level, settings)
    Z0T = ptranspose(Z0, channel.dims, _B)
    program.psd(lifted - Z0T)
    program.psd(lifted + Z0T)
    return finish(
        BoundKind.RAINS_GEOMETRIC,
        program,
        settings,
        lambda s: max_form_prefactor(level, s),
        level=level,
    )


def rains_geometric_state(
    rho: np.ndarray,
    dims: Sequence[int],
    level: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> BoundResult:
    """min over sigma in PPT' of the geometric Renyi divergence D_alpha(rho || sigma).

    PPT' is written as sigma^{T_B} = X - Y with X, Y >= 0 and tr(X + Y) <= 1;
    `dims` = (dA, dB) with B the transposed factor.
    """
    settings = resolve(settings)
    level = resolve_level(level, settings)
    if len(dims) != 2:
        raise ContractViolation(f"rains_geometric_state needs bipartite dims, got {tuple(dims)}")
    rho = linalg.check_density(rho, subnormalized=True)
    n = rho.shape[0]
    if n != dims[0] * dims[1]:
        raise ContractViolation(f"State of dimension {n} does not match dims {tuple(dims)}")
    program = new_program(f"rains_state_l{level}", settings)
    sigma = program.hermitian("sigma", n)
    X = program.hermitian("X", n, psd=True)
    Y = program.hermitian("Y", n, psd=True)
    program.add(ptranspose(sigma, dims, _B) == X - Y)
    program.add(real_trace(X + Y) <= 1)
    M = program.hermitian("M", n)
    geomean_epigraph(program, guarded(rho, settings), sigma, M, level, n)
    program.minimize(real_trace(M))
    scale = geometric_prefactor(level)
    return finish(BoundKind.RAINS_STATE_GEOMETRIC, program, settings, lambda v: scale * log2_bits(v), level=level)
