"""Discrete Wigner functions and magic measures for odd prime dimensions.

For prime d >= 3 with omega = exp(2 pi i / d) and tau = exp((d + 1) pi i / d):

    T_(a1, a2) = tau^(-a1 a2) Z^a1 X^a2,   A_0 = (1/d) sum_u T_u,   A_u = T_u A_0 T_u^dagger

W_rho(u) = (1/d) tr[A_u rho]. A system of dimension p^k is treated as k
copies of the p-dimensional phase space with product phase points.

The channel table is W_N(v|u) = (1/d_B) tr[J_N (A_u^T (x) A_v)], so the
identity channel has W(v|u) = delta_uv. Constraints that range over all u
are unaffected by the transpose since it permutes the phase points.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Any, Dict, List, Optional, Sequence, Tuple

import cvxpy as cp
import numpy as np

from . import linalg
from .bounds.common import channel_set_bound, finish, geometric_prefactor, guarded, log2_bits, resolve, resolve_level
from .channels import QuantumChannel
from .config import Settings
from .conic import ConicProgram, geomean_epigraph, new_program, real_trace
from .errors import ContractViolation, UndefinedTarget
from .types import BoundKind, BoundResult, SolveReport

RATIO_TOL = 1e-7
PURE_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class PhaseSpace:
    d: int
    labels: Tuple[Tuple[int, int], ...]
    heisenberg_weyl: np.ndarray
    phase_points: np.ndarray

    @property
    def size(self) -> int:
        return self.d * self.d

    def wigner(self, rho: np.ndarray) -> np.ndarray:
        return wigner(rho, (self,))


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % k for k in range(2, int(math.isqrt(n)) + 1))


@lru_cache(maxsize=None)
def build_phase_space(d: int) -> PhaseSpace:
    """Heisenberg-Weyl operators and phase-point operators for odd prime d."""
    if d % 2 == 0 or not _is_prime(d):
        raise ContractViolation(f"Phase space needs an odd prime dimension, got {d}")
    omega = cmath.exp(2j * math.pi / d)
    tau = cmath.exp((d + 1) * 1j * math.pi / d)
    X = np.roll(np.eye(d, dtype=complex), 1, axis=0)
    Z = np.diag([omega ** j for j in range(d)])
    labels = tuple((a1, a2) for a1 in range(d) for a2 in range(d))
    T = np.array([
        tau ** (-(a1 * a2)) * np.linalg.matrix_power(Z, a1) @ np.linalg.matrix_power(X, a2)
        for a1, a2 in labels
    ])
    A0 = T.sum(axis=0) / d
    A = np.array([Tu @ A0 @ Tu.conj().T for Tu in T])
    for P in A:
        linalg.check_hermitian(P, tol=1e-10)
    T.setflags(write=False)
    A.setflags(write=False)
    return PhaseSpace(d, labels, T, A)


def phase_spaces_for(dim: int) -> Tuple[PhaseSpace, ...]:
    """Factor dim = p^k (p odd prime) into k copies of the p-dimensional phase space."""
    p = next((k for k in range(2, dim + 1) if dim % k == 0), None) if dim > 1 else None
    if p is None or p == 2:
        raise ContractViolation(f"Dimension {dim} is not a power of an odd prime")
    k, rest = 0, dim
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise ContractViolation(f"Dimension {dim} is not a power of an odd prime")
    return (build_phase_space(p),) * k


def product_points(spaces: Sequence[PhaseSpace]) -> np.ndarray:
    """Phase points of the product space, indexed u-major over the factors."""
    return reduce(
        lambda acc, s: np.array([np.kron(P, Q) for P in acc for Q in s.phase_points]),
        spaces[1:],
        np.asarray(spaces[0].phase_points),
    )


def _spaces(dim: int, spaces: Optional[Sequence[PhaseSpace]]) -> Tuple[PhaseSpace, ...]:
    if spaces is None:
        return phase_spaces_for(dim)
    spaces = tuple(spaces)
    if int(np.prod([s.d for s in spaces])) != dim:
        raise ContractViolation(f"Phase spaces {[s.d for s in spaces]} do not match dimension {dim}")
    return spaces


def wigner(rho: np.ndarray, spaces: Optional[Sequence[PhaseSpace]] = None) -> np.ndarray:
    """W_rho(u) = (1/d) tr[A_u rho] over the product phase space."""
    rho = linalg.check_hermitian(rho)
    dim = rho.shape[0]
    points = product_points(_spaces(dim, spaces))
    return np.einsum("uij,ji->u", points, rho).real / dim


def wigner_trace_norm(rho: np.ndarray, spaces: Optional[Sequence[PhaseSpace]] = None) -> float:
    """sum_u |W_rho(u)|."""
    return float(np.abs(wigner(rho, spaces)).sum())


def wigner_spectral_norm(rho: np.ndarray, spaces: Optional[Sequence[PhaseSpace]] = None) -> float:
    """max_u |W_rho(u)|, the dual of the Wigner trace norm."""
    return float(np.abs(wigner(rho, spaces)).max())


def mana_state(rho: np.ndarray, spaces: Optional[Sequence[PhaseSpace]] = None) -> float:
    return math.log2(wigner_trace_norm(rho, spaces))


def channel_wigner(channel: QuantumChannel) -> np.ndarray:
    """Table W_N(v|u), rows indexed by input points u, columns by output points v."""
    dA, dB = channel.dims
    PA = product_points(phase_spaces_for(dA))
    PB = product_points(phase_spaces_for(dB))
    J = channel.choi.reshape(dA, dB, dA, dB)
    partial = np.einsum("abxy,uax->uby", J, PA, optimize=True)
    return np.einsum("uby,vyb->uv", partial, PB, optimize=True).real / dB


def mana_channel(channel: QuantumChannel) -> float:
    """log max_u sum_v |W_N(v|u)|."""
    return math.log2(float(np.abs(channel_wigner(channel)).sum(axis=1).max()))


def mana_bound(channel: QuantumChannel, settings: Optional[Settings] = None) -> BoundResult:
    value = mana_channel(channel)
    return BoundResult(bits=value, bound_kind=BoundKind.MANA, report=SolveReport.closed_form(value))


def _wigner_traces(expr: Any, dims: Sequence[int], points: Sequence[np.ndarray]) -> List[Any]:
    """tr[expr (A_u1 (x) ... (x) A_un)] for every point tuple, contracting one factor at a time."""
    if len(dims) == 1:
        return [cp.real(cp.trace(P @ expr)) for P in points[0]]
    rest = int(np.prod(dims[1:]))
    out: List[Any] = []
    for P in points[0]:
        reduced = cp.partial_trace(cp.kron(P, np.eye(rest)) @ expr, [dims[0], rest], axis=0)
        out.extend(_wigner_traces(reduced, dims[1:], points[1:]))
    return out


def wigner_expression(expr: Any, spaces: Sequence[PhaseSpace]) -> cp.Expression:
    """Vector of tr[expr A_u] over the product phase space, as a cvxpy expression.

    Each entry is real because expr is a Hermitian variable and every phase
    point is Hermitian (checked when the space is built).
    """
    dims = [s.d for s in spaces]
    return cp.hstack(_wigner_traces(expr, dims, [s.phase_points for s in spaces]))


def _row_abs_sums(program: ConicProgram, traces: cp.Expression, rows: int, cols: int, name: str) -> cp.Expression:
    """sum_v |traces[u, v]| for each row u, lowered to a slack F >= +-traces."""
    table = cp.reshape(traces, (rows, cols), order="C")
    F = program.real(name, (rows, cols))
    program.add(F >= table, F >= -table)
    return cp.sum(F, axis=1)


def _mana_constraint(program: ConicProgram, S: Any, dims: Tuple[int, int], bound: Any) -> None:
    """(1/d_B) sum_v |tr S (A_u (x) A_v)| <= bound for every u."""
    dA, dB = dims
    spaces = phase_spaces_for(dA) + phase_spaces_for(dB)
    rows = int(np.prod([s.size for s in phase_spaces_for(dA)]))
    cols = int(np.prod([s.size for s in phase_spaces_for(dB)]))
    sums = _row_abs_sums(program, wigner_expression(S, spaces), rows, cols, "F")
    program.add(sums <= dB * bound)


def thauma_max(channel: QuantumChannel, settings: Optional[Settings] = None) -> BoundResult:
    """log min{y | J <= V, (1/d_B) sum_v |tr V (A_u (x) A_v)| <= y for all u}."""
    settings = resolve(settings)
    dA, dB = channel.dims
    program = new_program("thauma_max", settings)
    V = program.hermitian("V", dA * dB)
    y = program.real("y")
    program.psd(V - channel.choi)
    _mana_constraint(program, V, channel.dims, y)
    program.minimize(y)
    return finish(BoundKind.THAUMA_MAX, program, settings, log2_bits)


def thauma_geometric(
    channel: QuantumChannel,
    level: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> BoundResult:
    """Geometric Renyi Thauma: divergence to the subchannels with non-positive mana."""
    settings = resolve(settings)
    level = resolve_level(level, settings)

    def restrict(program: ConicProgram, S: Any) -> None:
        _mana_constraint(program, S, channel.dims, 1.0)

    return channel_set_bound(BoundKind.THAUMA_GEOMETRIC, channel.choi, channel.dims, level, restrict, settings)


def _wigner_ball(program: ConicProgram, sigma: Any, spaces: Sequence[PhaseSpace], dim: int) -> None:
    """sum_u |W_sigma(u)| <= 1."""
    sums = _row_abs_sums(program, wigner_expression(sigma, spaces), 1, int(np.prod([s.size for s in spaces])), "F")
    program.add(sums <= dim)


def thauma_geometric_state(
    rho: np.ndarray,
    level: Optional[int] = None,
    spaces: Optional[Sequence[PhaseSpace]] = None,
    settings: Optional[Settings] = None,
) -> BoundResult:
    """min over sigma >= 0 with sum_u |W_sigma(u)| <= 1 of D_alpha(rho || sigma)."""
    settings = resolve(settings)
    level = resolve_level(level, settings)
    rho = linalg.check_density(rho, subnormalized=True)
    dim = rho.shape[0]
    spaces = _spaces(dim, spaces)
    program = new_program(f"thauma_state_l{level}", settings)
    sigma = program.hermitian("sigma", dim, psd=True)
    _wigner_ball(program, sigma, spaces, dim)
    M = program.hermitian("M", dim)
    geomean_epigraph(program, guarded(rho, settings), sigma, M, level, dim)
    program.minimize(real_trace(M))
    scale = geometric_prefactor(level)
    return finish(BoundKind.THAUMA_STATE_GEOMETRIC, program, settings, lambda v: scale * log2_bits(v), level=level)


def _pure_projector(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim == 1:
        psi = np.outer(psi, psi.conj()) / np.vdot(psi, psi).real
    psi = linalg.check_density(psi)
    lam = np.linalg.eigvalsh(psi)
    if abs(lam[-1] - 1.0) > PURE_TOL:
        raise ContractViolation(f"Target state is not pure (largest eigenvalue {lam[-1]:.10f})")
    return linalg.support_projector(psi)


def theta_min_state(
    psi: np.ndarray,
    spaces: Optional[Sequence[PhaseSpace]] = None,
    settings: Optional[Settings] = None,
) -> float:
    """Min-Thauma -log max{tr[psi sigma] | sigma >= 0, sum_u |W_sigma(u)| <= 1}; NaN if the solve fails."""
    settings = resolve(settings)
    projector = _pure_projector(psi)
    dim = projector.shape[0]
    spaces = _spaces(dim, spaces)
    program = new_program("theta_min", settings)
    sigma = program.hermitian("sigma", dim, psd=True)
    _wigner_ball(program, sigma, spaces, dim)
    program.maximize(real_trace(projector @ sigma))
    result = finish(BoundKind.THETA_MIN, program, settings, lambda v: -log2_bits(v))
    return result.bits if result.ok else math.nan


def magic_state(name: str) -> np.ndarray:
    """Qutrit magic states by name: T, H+, strange, norrell."""
    key = name.lower().replace("_", "").replace("-", "")
    if key == "t":
        xi = cmath.exp(2j * math.pi / 9)
        vec = np.array([xi, 1.0, 1 / xi]) / math.sqrt(3)
    elif key in ("h+", "hplus"):
        vec = np.array([1 + math.sqrt(3), 1.0, 1.0])
    elif key == "strange":
        vec = np.array([0.0, 1.0, -1.0])
    elif key == "norrell":
        vec = np.array([-1.0, 2.0, -1.0])
    else:
        raise ContractViolation(f"Unknown magic state: {name!r}. Supported: T, H+, strange, norrell")
    vec = vec.astype(complex) / np.linalg.norm(vec)
    return np.outer(vec, vec.conj())


def magic_capacity_bound(
    channel: QuantumChannel,
    psi: np.ndarray,
    level: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> float:
    """Rate ceiling theta_alpha(N) / theta_min(psi) for generating copies of psi."""
    target = theta_min_state(psi, settings=settings)
    if not target > RATIO_TOL:
        raise UndefinedTarget(f"theta_min of the target is {target:.3e}; stabilizer targets have no magic rate")
    return thauma_geometric(channel, level, settings).bits / target


def magic_fidelity_ceiling(
    n: int,
    rate: float,
    psi: np.ndarray,
    thauma_bits: float,
    alpha: float,
    settings: Optional[Settings] = None,
) -> float:
    """Fidelity ceiling 2^{-n theta_min ((alpha-1)/alpha)(rate - theta_alpha/theta_min)} for n channel uses."""
    if n < 1 or not 1 < alpha <= 2:
        raise ContractViolation(f"Need n >= 1 and alpha in (1, 2], got n={n}, alpha={alpha}")
    target = theta_min_state(psi, settings=settings)
    if not target > RATIO_TOL:
        raise UndefinedTarget("Stabilizer targets have no magic rate")
    excess = rate - thauma_bits / target
    if excess <= 0:
        return 1.0
    return 2.0 ** (-n * target * ((alpha - 1) / alpha) * excess)


def _ratio(numerator: float, denominator: float) -> float:
    if math.isnan(numerator) or math.isnan(denominator):
        return math.nan
    if abs(numerator) <= RATIO_TOL:
        return 0.0
    if abs(denominator) <= RATIO_TOL:
        return math.inf
    return numerator / denominator


def synthesis_ratios(
    source: QuantumChannel,
    target: QuantumChannel,
    level: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> Dict[str, float]:
    """Lower bounds on the number of source uses per target: mana, Thauma-max and geometric Thauma ratios."""
    return {
        "mana": _ratio(mana_channel(target), mana_channel(source)),
        "thauma-max": _ratio(thauma_max(target, settings).bits, thauma_max(source, settings).bits),
        "thauma-geometric": _ratio(
            thauma_geometric(target, level, settings).bits, thauma_geometric(source, level, settings).bits
        ),
    }


def synthesis_lower_bound(
    source: QuantumChannel,
    target: QuantumChannel,
    level: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> float:
    """Largest of the synthesis ratios; inf when the source is free but the target is not."""
    values = [v for v in synthesis_ratios(source, target, level, settings).values() if not math.isnan(v)]
    return max(values) if values else math.nan
