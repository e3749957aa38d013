"""Strong converse bounds on two-way assisted private capacity.

The separable cone is realized as the PPT cone and the block-positive cone
as {X + Y^{T_B} : X, Y >= 0}; both descriptions are exact only for
|A||B| <= 6, so larger channels raise UnsupportedDimension.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from ..channels import QuantumChannel
from ..config import Settings
from ..conic import ConicProgram, new_program
from ..types import BoundKind, BoundResult
from .common import (
    channel_set_bound,
    check_sep_dims,
    finish,
    largest_eigenvalue,
    log2_bits,
    max_form_prefactor,
    max_form_program,
    ptrace_out,
    ptranspose,
    resolve,
    resolve_level,
)

_B = [1]


def e_max(channel: QuantumChannel, settings: Optional[Settings] = None) -> BoundResult:
    """log min{||tr_B Y||_inf | Y >= J, Y separable}."""
    settings = resolve(settings)
    dA, dB = channel.dims
    check_sep_dims(dA, dB, settings)
    program = new_program("e_max", settings)
    Y = program.hermitian("Y", dA * dB, psd=True)
    program.psd(ptranspose(Y, channel.dims, _B))
    program.psd(Y - channel.choi)
    program.minimize(largest_eigenvalue(ptrace_out(Y, dA, dB)))
    return finish(BoundKind.E_MAX, program, settings, log2_bits)


def e_max_sigma(channel: QuantumChannel, settings: Optional[Settings] = None) -> BoundResult:
    """min over entanglement-breaking subchannels of the max-relative channel divergence."""
    settings = resolve(settings)
    dA, dB = channel.dims
    check_sep_dims(dA, dB, settings)
    program = new_program("e_max_sigma", settings)
    Y = program.hermitian("Y", dA * dB, psd=True)
    t = program.real("t")
    program.psd(ptranspose(Y, channel.dims, _B))
    program.psd(Y - channel.choi)
    program.psd(t * np.eye(dA) - ptrace_out(Y, dA, dB))
    program.minimize(t)
    return finish(BoundKind.E_MAX_SIGMA, program, settings, log2_bits)


def e_alpha(
    channel: QuantumChannel,
    level: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> BoundResult:
    """Geometric Renyi relative entropy of entanglement of a channel, from its maximization form.

    The dual-set condition is rho (x) I - (Z_0 + Z_0^dagger) block positive.
    """
    settings = resolve(settings)
    level = resolve_level(level, settings)
    dA, dB = channel.dims
    check_sep_dims(dA, dB, settings)
    program, lifted, Z0 = max_form_program(f"e_alpha_l{level}", channel.choi, channel.dims, level, settings)
    X = program.hermitian("X", dA * dB, psd=True)
    Y = program.hermitian("Y", dA * dB, psd=True)
    program.add(lifted - Z0 == X + ptranspose(Y, channel.dims, _B))
    return finish(BoundKind.E_ALPHA, program, settings, lambda s: max_form_prefactor(level, s), level=level)


def sigma_set(dim_a: int, dim_b: int):
    """Entanglement-breaking subchannels: S, S^{T_B} >= 0 and tr_B S <= I."""

    def restrict(program: ConicProgram, S) -> None:
        program.psd(S)
        program.psd(ptranspose(S, (dim_a, dim_b), _B))
        program.psd(np.eye(dim_a) - ptrace_out(S, dim_a, dim_b))

    return restrict


def e_alpha_sigma(
    channel: QuantumChannel,
    level: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> BoundResult:
    settings = resolve(settings)
    level = resolve_level(level, settings)
    dA, dB = channel.dims
    check_sep_dims(dA, dB, settings)
    return channel_set_bound(
        BoundKind.E_ALPHA_SIGMA, channel.choi, channel.dims, level, sigma_set(dA, dB), settings
    )
