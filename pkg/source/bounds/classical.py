"""Strong converse bounds on classical capacity.

  c_beta             log min{tr S | R +- J^{T_B} >= 0, I (x) S +- R^{T_B} >= 0}
  c_zeta             log min{tr S | J <= K, I (x) S +- K^{T_B} >= 0}
  upsilon_max        log min{tr S | J <= K, R +- K^{T_B} >= 0, I (x) S +- R^{T_B} >= 0}
  upsilon_geometric  geometric Renyi channel divergence to the Upsilon set

upsilon_max never exceeds min(c_beta, c_zeta): setting K = J in its program
recovers c_beta and setting R = K recovers c_zeta.
"""

from __future__ import annotations

from typing import Optional

import cvxpy as cp
import numpy as np

from .. import linalg
from ..channels import QuantumChannel
from ..config import Settings
from ..conic import ConicProgram, new_program, real_trace
from ..types import BoundKind, BoundResult
from .common import channel_set_bound, finish, log2_bits, ptranspose, resolve, resolve_level

_B = [1]


def _plus_minus(program: ConicProgram, upper, lower) -> None:
    program.psd(upper - lower)
    program.psd(upper + lower)


def _lift(dim_a: int, S):
    return cp.kron(np.eye(dim_a), S)


def c_beta(channel: QuantumChannel, settings: Optional[Settings] = None) -> BoundResult:
    settings = resolve(settings)
    dA, dB = channel.dims
    program = new_program("c_beta", settings)
    R = program.hermitian("R", dA * dB)
    S = program.hermitian("S", dB)
    _plus_minus(program, R, linalg.partial_transpose(channel.choi, channel.dims, 1))
    _plus_minus(program, _lift(dA, S), ptranspose(R, channel.dims, _B))
    program.minimize(real_trace(S))
    return finish(BoundKind.C_BETA, program, settings, log2_bits)


def c_zeta(channel: QuantumChannel, settings: Optional[Settings] = None) -> BoundResult:
    settings = resolve(settings)
    dA, dB = channel.dims
    program = new_program("c_zeta", settings)
    K = program.hermitian("K", dA * dB)
    S = program.hermitian("S", dB)
    program.psd(K - channel.choi)
    _plus_minus(program, _lift(dA, S), ptranspose(K, channel.dims, _B))
    program.minimize(real_trace(S))
    return finish(BoundKind.C_ZETA, program, settings, log2_bits)


def upsilon_max(channel: QuantumChannel, settings: Optional[Settings] = None) -> BoundResult:
    settings = resolve(settings)
    dA, dB = channel.dims
    program = new_program("upsilon_max", settings)
    K = program.hermitian("K", dA * dB)
    R = program.hermitian("R", dA * dB)
    S = program.hermitian("S", dB)
    program.psd(K - channel.choi)
    _plus_minus(program, R, ptranspose(K, channel.dims, _B))
    _plus_minus(program, _lift(dA, S), ptranspose(R, channel.dims, _B))
    program.minimize(real_trace(S))
    return finish(BoundKind.UPSILON_MAX, program, settings, log2_bits)


def upsilon_set(dim_a: int, dim_b: int):
    """Subchannels with R +- S^{T_B} >= 0, I (x) T +- R^{T_B} >= 0, tr T <= 1."""

    def restrict(program: ConicProgram, S) -> None:
        R = program.hermitian("R", dim_a * dim_b)
        T = program.hermitian("T", dim_b)
        _plus_minus(program, R, ptranspose(S, (dim_a, dim_b), _B))
        _plus_minus(program, _lift(dim_a, T), ptranspose(R, (dim_a, dim_b), _B))
        program.add(real_trace(T) <= 1)

    return restrict


def upsilon_geometric(
    channel: QuantumChannel,
    level: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> BoundResult:
    settings = resolve(settings)
    level = resolve_level(level, settings)
    dA, dB = channel.dims
    return channel_set_bound(
        BoundKind.UPSILON_GEOMETRIC, channel.choi, channel.dims, level, upsilon_set(dA, dB), settings
    )
