"""Helpers shared by the capacity bounds.

Most geometric bounds have the same shape: minimize y over a channel-set
member S, a Hermitian M and the geometric-mean chain with

    G_{1-alpha}(J_N, S) <= M,   tr_B M <= y I,   S in set,

and report 2**l * log2(y). `channel_set_bound` builds that program and lets
the caller add the set constraints on S.
"""

from __future__ import annotations

import logging
import math
from typing import Any, Callable, Optional, Sequence, Tuple

import cvxpy as cp
import numpy as np

from ..config import Settings, get_settings
from ..conic import ConicProgram, geomean_epigraph, new_program, solve
from ..conic.embedding import embed_expression
from ..errors import ContractViolation, UnsupportedDimension
from ..types import BoundKind, BoundResult, SolveReport

logger = logging.getLogger(__name__)

SetConstraints = Callable[[ConicProgram, Any], None]


def resolve(settings: Optional[Settings]) -> Settings:
    return settings if settings is not None else get_settings()


def resolve_level(level: Optional[int], settings: Settings) -> int:
    level = settings.sweep_level if level is None else int(level)
    if level < 0:
        raise ContractViolation(f"level must be >= 0, got {level}")
    return level


def guarded(choi: np.ndarray, settings: Settings) -> np.ndarray:
    """Mix the feasibility guard into a fixed Choi matrix."""
    choi = np.asarray(choi, dtype=complex)
    return choi + settings.feasibility_guard * np.eye(choi.shape[0])


def log2_bits(value: float) -> float:
    if not math.isfinite(value) or value <= 0:
        return math.nan
    return math.log2(value)


def geometric_prefactor(level: int) -> float:
    return float(2 ** level)


def ptranspose(expr: Any, dims: Sequence[int], systems: Sequence[int]) -> Any:
    for axis in systems:
        expr = cp.partial_transpose(expr, list(dims), axis)
    return expr


def ptrace_out(expr: Any, dim_in: int, dim_out: int) -> Any:
    """tr over the output factor of an operator on in (x) out."""
    return cp.partial_trace(expr, [dim_in, dim_out], axis=1)


def largest_eigenvalue(expr: Any) -> cp.Expression:
    """lambda_max of a Hermitian affine expression, through its real embedding."""
    return cp.lambda_max(embed_expression(expr))


def check_sep_dims(dim_a: int, dim_b: int, settings: Settings) -> None:
    if dim_a * dim_b > settings.max_sep_dim:
        raise UnsupportedDimension(
            f"|A||B| = {dim_a * dim_b} exceeds {settings.max_sep_dim}; the separable cone has no "
            "exact semidefinite description there"
        )


def finish(
    kind: BoundKind,
    program: ConicProgram,
    settings: Settings,
    transform: Callable[[float], float],
    level: Optional[int] = None,
) -> BoundResult:
    """Solve `program` and map its objective to bits."""
    report: SolveReport = solve(program, settings)
    bits = transform(report.objective) if math.isfinite(report.objective) else math.nan
    if not report.ok:
        logger.warning("%s: solver status %s (%s)", kind.value, report.status.value, report.message)
    return BoundResult(bits=bits, bound_kind=kind, report=report, level=level)


def channel_set_bound(
    kind: BoundKind,
    choi: np.ndarray,
    dims: Tuple[int, int],
    level: int,
    restrict: SetConstraints,
    settings: Settings,
) -> BoundResult:
    """min over S in a set of the geometric channel divergence D_alpha(N || S), alpha = 1 + 2**-level."""
    dim_in, dim_out = dims
    n = dim_in * dim_out
    program = new_program(f"{kind.value}_l{level}", settings)
    J = guarded(choi, settings)
    S = program.hermitian("S", n)
    M = program.hermitian("M", n)
    y = program.real("y")
    restrict(program, S)
    geomean_epigraph(program, J, S, M, level, n)
    program.psd(y * np.eye(dim_in) - ptrace_out(M, dim_in, dim_out))
    program.minimize(y)
    scale = geometric_prefactor(level)
    return finish(kind, program, settings, lambda v: scale * log2_bits(v), level=level)


def max_form_prefactor(level: int, S: float) -> float:
    """l 2^l - (2^l + 1) log(2^l + 1) + (2^l + 1) log S."""
    k = 2 ** level
    return level * k - (k + 1) * math.log2(k + 1) + (k + 1) * log2_bits(S)


def max_form_program(
    name: str,
    choi: np.ndarray,
    dims: Tuple[int, int],
    level: int,
    settings: Settings,
) -> Tuple[ConicProgram, Any, Any]:
    """Shared body of the max-form geometric programs.

    Returns the program with the objective set, the lifted input rho (x) I
    and the Hermitian part Z_0 + Z_0^dagger on which the caller places the
    dual-set constraint against rho (x) I.
    """
    dim_a, dim_b = dims
    n = dim_a * dim_b
    program = new_program(name, settings)
    rho = program.hermitian("rho", dim_a)
    program.add(cp.real(cp.trace(rho)) == 1)
    lifted = cp.kron(rho, np.eye(dim_b))
    K = program.general("K", n)
    Z = [program.general(f"Z_{i}", n) for i in range(level + 1)]
    W = [program.hermitian(f"W_{i}", n) for i in range(1, level + 1)]
    for i in range(1, level + 1):
        program.psd(program.block([[W[i - 1], Z[i]], [Z[i].H, Z[i - 1] + Z[i - 1].H]]))
    program.psd(program.block([[lifted, K], [K.H, Z[level] + Z[level].H]]))
    J = np.asarray(choi, dtype=complex)
    body = K + K.H
    if W:
        body = body - sum(W)
    program.maximize(cp.real(cp.trace(body @ J)))
    return program, lifted, Z[0] + Z[0].H
