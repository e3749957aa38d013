"""Bounds for bidirectional channels A1 B1 -> A2 B2.

The Choi matrix is ordered A1 B1 A2 B2 and every partial transpose acts
jointly on Bob's systems B1 and B2 (subsystems 1 and 3).
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .. import linalg
from ..channels import BidirectionalChannel
from ..config import Settings
from ..conic import new_program
from ..types import BoundKind, BoundResult
from .common import channel_set_bound, finish, log2_bits, ptrace_out, ptranspose, resolve, resolve_level
from .quantum import theta_set

BOB = (1, 3)


def bi_holevo_werner(channel: BidirectionalChannel, settings: Optional[Settings] = None) -> BoundResult:
    """log min{y | Y +- J^{T_B1B2} >= 0, tr_A2B2 Y <= y I}."""
    settings = resolve(settings)
    d_in, d_out = channel.input_dim, channel.output_dim
    program = new_program("bi_holevo_werner", settings)
    Y = program.hermitian("Y", d_in * d_out)
    y = program.real("y")
    JT = linalg.partial_transpose(channel.choi, channel.dims, BOB)
    program.psd(Y - JT)
    program.psd(Y + JT)
    program.psd(y * np.eye(d_in) - ptrace_out(Y, d_in, d_out))
    program.minimize(y)
    return finish(BoundKind.BI_HOLEVO_WERNER, program, settings, log2_bits)


def bi_max_rains(channel: BidirectionalChannel, settings: Optional[Settings] = None) -> BoundResult:
    """log min{mu | V, Y >= 0, (V - Y)^{T_B1B2} >= J, tr_A2B2 (V + Y) <= mu I}."""
    settings = resolve(settings)
    d_in, d_out = channel.input_dim, channel.output_dim
    program = new_program("bi_max_rains", settings)
    V = program.hermitian("V", d_in * d_out, psd=True)
    Y = program.hermitian("Y", d_in * d_out, psd=True)
    mu = program.real("mu")
    program.psd(ptranspose(V - Y, channel.dims, BOB) - channel.choi)
    program.psd(mu * np.eye(d_in) - ptrace_out(V + Y, d_in, d_out))
    program.minimize(mu)
    return finish(BoundKind.BI_MAX_RAINS, program, settings, log2_bits)


def bi_theta_geometric(
    channel: BidirectionalChannel,
    level: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> BoundResult:
    settings = resolve(settings)
    level = resolve_level(level, settings)
    d_in, d_out = channel.input_dim, channel.output_dim
    restrict = theta_set(channel.dims, BOB, d_in, d_out)
    return channel_set_bound(BoundKind.BI_THETA_GEOMETRIC, channel.choi, (d_in, d_out), level, restrict, settings)
