"""Semidefinite epigraph of the weighted geometric mean on the dyadic grid.

With alpha = 1 + 2**-l, G_{1-alpha}(X, Y) <= M holds iff there are Hermitian
N_1..N_l with

    [[M, X], [X, N_l]] >= 0,
    [[X, N_i], [N_i, N_{i-1}]] >= 0   for i = 1..l,
    N_0 = Y.

X and Y may be fixed arrays or affine expressions of program variables.
"""

from __future__ import annotations

from typing import Any, List

import cvxpy as cp

from ..errors import ContractViolation
from .program import ConicProgram


def alpha_of_level(level: int) -> float:
    if level < 0:
        raise ContractViolation(f"level must be >= 0, got {level}")
    return 1.0 + 2.0 ** (-level)


def geomean_epigraph(
    program: ConicProgram,
    X: Any,
    Y: Any,
    M: Any,
    level: int,
    dim: int,
    prefix: str = "N",
) -> List[cp.Constraint]:
    """Add the chain for G_{1-alpha(level)}(X, Y) <= M to `program` and return its constraints.

    Emits level + 1 PSD blocks of size 2*dim and the equality N_0 = Y.
    """
    alpha_of_level(level)
    chain = [program.hermitian(f"{prefix}_0", dim)]
    anchor = chain[0] == Y
    program.add(anchor)
    constraints: List[cp.Constraint] = [anchor]
    for i in range(1, level + 1):
        chain.append(program.hermitian(f"{prefix}_{i}", dim))
        constraints.append(program.psd(program.block([[X, chain[i]], [chain[i], chain[i - 1]]])))
    constraints.append(program.psd(program.block([[M, X], [X, chain[level]]])))
    return constraints
