"""Quantum channels as Choi matrices.

Choi convention: J = (id (x) N)(|Phi><Phi|) with the unnormalized
|Phi> = sum_i |ii>, input system first. So tr_B J = I_A for a trace-preserving
map, and the matrix entry <a b|J|a' b'> equals <b|N(|a><a'|)|b'>.

Families:
  identity(d), depolarizing(d, p), erasure(p, d=2), dephasing(p),
  dephrasure(p, q), gad(gamma, N), amplitude_damping(gamma), replacer(sigma),
  unitary(U), from_kraus(kraus), qutrit_t_depolarizing(p)

The erasure flag |e> is the last basis vector of the output (index d).
Bidirectional channels keep their Choi matrix in A1 B1 A2 B2 order.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from . import linalg
from .divergences import INFINITE, LN2, max_relative, supported_in
from .errors import ContractViolation, SupportViolation

CHOI_TOL = 1e-9
KRAUS_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class QuantumChannel:
    """A completely positive map A -> B given by its Choi matrix."""
    dim_a: int
    dim_b: int
    choi: np.ndarray
    trace_preserving: bool = True
    name: str = ""

    def __post_init__(self) -> None:
        choi = linalg.check_hermitian(self.choi, tol=CHOI_TOL)
        size = self.dim_a * self.dim_b
        if choi.shape != (size, size):
            raise ContractViolation(
                f"Choi matrix of shape {choi.shape} does not match dims {self.dim_a}x{self.dim_b}"
            )
        lam = np.linalg.eigvalsh(choi)
        if lam[0] < -CHOI_TOL * max(1.0, float(lam[-1])):
            raise ContractViolation(f"Choi matrix is not PSD (min eigenvalue {lam[0]:.3e})")
        marginal = linalg.partial_trace(choi, self.dims, keep=0)
        slack = np.eye(self.dim_a) - marginal
        if self.trace_preserving:
            if linalg.operator_norm(slack) > CHOI_TOL:
                raise ContractViolation("Channel is not trace preserving: tr_B J != I_A")
        elif np.linalg.eigvalsh(linalg.hermitian_part(slack))[0] < -CHOI_TOL:
            raise ContractViolation("Subchannel increases trace: tr_B J exceeds I_A")
        choi.setflags(write=False)
        object.__setattr__(self, "choi", choi)

    @property
    def dims(self) -> Tuple[int, int]:
        return (self.dim_a, self.dim_b)

    @property
    def kind(self) -> str:
        return "trace-preserving" if self.trace_preserving else "subchannel"

    def __call__(self, rho: np.ndarray) -> np.ndarray:
        return apply(self, rho)

    def __repr__(self) -> str:
        label = self.name or "channel"
        return f"QuantumChannel({label}, {self.dim_a}->{self.dim_b}, {self.kind})"


@dataclass(frozen=True, eq=False)
class BidirectionalChannel:
    """A bipartite channel A1 B1 -> A2 B2; Alice holds A1, A2 and Bob holds B1, B2."""
    dims: Tuple[int, int, int, int]
    choi: np.ndarray
    name: str = ""

    def __post_init__(self) -> None:
        if len(self.dims) != 4:
            raise ContractViolation(f"Bidirectional channel needs dims (dA1, dB1, dA2, dB2), got {self.dims}")
        # validates PSD and tr_{A2B2} J = I_{A1B1}
        QuantumChannel(self.input_dim, self.output_dim, self.choi)
        choi = linalg.hermitian_part(np.asarray(self.choi, dtype=complex))
        choi.setflags(write=False)
        object.__setattr__(self, "choi", choi)

    @property
    def input_dim(self) -> int:
        return self.dims[0] * self.dims[1]

    @property
    def output_dim(self) -> int:
        return self.dims[2] * self.dims[3]

    def as_channel(self) -> QuantumChannel:
        return QuantumChannel(self.input_dim, self.output_dim, self.choi, name=self.name)

    def __repr__(self) -> str:
        return f"BidirectionalChannel({self.name or 'channel'}, dims={self.dims})"


def _probability(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ContractViolation(f"{name} must lie in [0, 1], got {value}")
    return value


def _dimension(d: int) -> int:
    if int(d) != d or d < 2:
        raise ContractViolation(f"Dimension must be an integer >= 2, got {d}")
    return int(d)


def kraus_to_choi(kraus: Sequence[np.ndarray], dim_in: Optional[int] = None) -> np.ndarray:
    ops = [np.asarray(k, dtype=complex) for k in kraus]
    if not ops:
        raise ContractViolation("At least one Kraus operator is required")
    d_in = ops[0].shape[1] if dim_in is None else dim_in
    choi = np.zeros((d_in * ops[0].shape[0],) * 2, dtype=complex)
    for K in ops:
        if K.shape != ops[0].shape or K.shape[1] != d_in:
            raise ContractViolation(f"Kraus operator shape {K.shape} inconsistent with input dimension {d_in}")
        v = K.T.reshape(-1)
        choi += np.outer(v, v.conj())
    return choi


def choi_to_kraus(choi: np.ndarray, dim_a: int, dim_b: int) -> Tuple[np.ndarray, ...]:
    """Canonical Kraus operators from the spectral decomposition of the Choi matrix."""
    lam, vec = np.linalg.eigh(linalg.hermitian_part(np.asarray(choi, dtype=complex)))
    ops = []
    for value, v in zip(lam[::-1], vec.T[::-1]):
        if value <= CHOI_TOL:
            break
        ops.append(math.sqrt(value) * v.reshape(dim_a, dim_b).T)
    return tuple(ops)


def from_kraus(kraus: Sequence[np.ndarray], name: str = "kraus") -> QuantumChannel:
    ops = [np.asarray(k, dtype=complex) for k in kraus]
    if not ops:
        raise ContractViolation("At least one Kraus operator is required")
    d_out, d_in = ops[0].shape
    completeness = sum(K.conj().T @ K for K in ops)
    if not np.allclose(completeness, np.eye(d_in), atol=KRAUS_TOL, rtol=0.0):
        raise ContractViolation("Kraus operators violate sum K^dagger K = I")
    return QuantumChannel(d_in, d_out, kraus_to_choi(ops, d_in), name=name)


def unitary(U: np.ndarray, name: str = "unitary") -> QuantumChannel:
    return from_kraus([U], name=name)


def identity(d: int = 2) -> QuantumChannel:
    d = _dimension(d)
    return QuantumChannel(d, d, linalg.max_entangled(d), name=f"identity(d={d})")


def depolarizing(d: int = 2, p: float = 0.0) -> QuantumChannel:
    """rho -> (1 - p) rho + p tr(rho) I / d."""
    d = _dimension(d)
    p = _probability("p", p)
    choi = (1 - p) * linalg.max_entangled(d) + p * np.eye(d * d) / d
    return QuantumChannel(d, d, choi, name=f"depolarizing(d={d}, p={p:g})")


def _embedding(d: int) -> np.ndarray:
    V = np.zeros((d + 1, d), dtype=complex)
    V[:d, :d] = np.eye(d)
    return V


def erasure(p: float = 0.0, d: int = 2) -> QuantumChannel:
    """rho -> (1 - p) rho + p tr(rho) |e><e| with the flag at output index d."""
    d = _dimension(d)
    p = _probability("p", p)
    V = _embedding(d)
    flag = np.zeros((d + 1, d + 1), dtype=complex)
    flag[d, d] = 1.0
    choi = (1 - p) * kraus_to_choi([V], d) + p * np.kron(np.eye(d), flag)
    return QuantumChannel(d, d + 1, choi, name=f"erasure(d={d}, p={p:g})")


def dephasing(p: float = 0.0) -> QuantumChannel:
    """rho -> (1 - p) rho + p Z rho Z."""
    p = _probability("p", p)
    Z = np.diag([1.0, -1.0]).astype(complex)
    return from_kraus([math.sqrt(1 - p) * np.eye(2), math.sqrt(p) * Z], name=f"dephasing(p={p:g})")


def dephrasure(p: float = 0.0, q: float = 0.0) -> QuantumChannel:
    """Qubit dephasing with probability p, then erasure with probability q."""
    p = _probability("p", p)
    q = _probability("q", q)
    V = _embedding(2)
    Z = np.diag([1.0, -1.0]).astype(complex)
    kraus = [
        math.sqrt((1 - q) * (1 - p)) * V,
        math.sqrt((1 - q) * p) * V @ Z,
    ]
    for i in range(2):
        flag = np.zeros((3, 2), dtype=complex)
        flag[2, i] = math.sqrt(q)
        kraus.append(flag)
    return from_kraus(kraus, name=f"dephrasure(p={p:g}, q={q:g})")


def gad_kraus(gamma: float, N: float) -> Tuple[np.ndarray, ...]:
    g = _probability("gamma", gamma)
    n = _probability("N", N)
    A1 = math.sqrt(1 - n) * np.array([[1, 0], [0, math.sqrt(1 - g)]], dtype=complex)
    A2 = math.sqrt(g * (1 - n)) * np.array([[0, 1], [0, 0]], dtype=complex)
    A3 = math.sqrt(n) * np.array([[math.sqrt(1 - g), 0], [0, 1]], dtype=complex)
    A4 = math.sqrt(g * n) * np.array([[0, 0], [1, 0]], dtype=complex)
    return (A1, A2, A3, A4)


def gad(gamma: float = 0.0, N: float = 0.0) -> QuantumChannel:
    """Generalized amplitude damping with damping gamma and environment excitation N."""
    return from_kraus(gad_kraus(gamma, N), name=f"gad(gamma={gamma:g}, N={N:g})")


def amplitude_damping(gamma: float = 0.0) -> QuantumChannel:
    return from_kraus(gad_kraus(gamma, 0.0), name=f"amplitude_damping(gamma={gamma:g})")


def replacer(sigma: np.ndarray, dim_in: int = 2) -> QuantumChannel:
    """rho -> tr(rho) sigma."""
    sigma = linalg.check_density(sigma)
    dim_in = _dimension(dim_in)
    return QuantumChannel(dim_in, sigma.shape[0], np.kron(np.eye(dim_in), sigma), name="replacer")


def qutrit_t_gate() -> np.ndarray:
    """diag(xi, 1, xi^-1) with xi = exp(2 pi i / 9)."""
    xi = cmath.exp(2j * math.pi / 9)
    return np.diag([xi, 1.0, 1 / xi]).astype(complex)


def qutrit_t_depolarizing(p: float = 0.0) -> QuantumChannel:
    """The qutrit T gate followed by qutrit depolarizing noise of strength p."""
    channel = compose(depolarizing(3, p), unitary(qutrit_t_gate(), name="qutrit_t"))
    return QuantumChannel(3, 3, channel.choi, name=f"qutrit_t_depolarizing(p={p:g})")


_FAMILIES: Dict[str, Callable[..., QuantumChannel]] = {
    "identity": identity,
    "depolarizing": depolarizing,
    "erasure": erasure,
    "dephasing": dephasing,
    "dephrasure": dephrasure,
    "gad": gad,
    "amplitude_damping": amplitude_damping,
    "replacer": replacer,
    "from_kraus": from_kraus,
    "qutrit_t_depolarizing": qutrit_t_depolarizing,
}


def make_channel(kind: str, **params) -> QuantumChannel:
    """Build a channel of the named family. Parameters follow the family function."""
    key = kind.lower().strip().replace("-", "_")
    factory = _FAMILIES.get(key)
    if factory is None:
        raise ContractViolation(f"Unknown channel kind: {kind!r}. Supported: {', '.join(sorted(_FAMILIES))}")
    try:
        return factory(**params)
    except TypeError as exc:
        raise ContractViolation(f"Bad parameters for {key}: {exc}") from exc


def swap_dephase_kraus(p: float, phi: float) -> Tuple[np.ndarray, np.ndarray]:
    p = _probability("p", p)
    swap = np.eye(4, dtype=complex)[[0, 2, 1, 3]]
    phase = cmath.exp(1j * phi)
    U = np.diag([1.0, phase, phase, phase * phase]).astype(complex)
    return (math.sqrt(p) * swap, math.sqrt(1 - p) * U @ swap)


def make_bidirectional_swap_dephase(p: float, phi: float) -> BidirectionalChannel:
    """Two-qubit swap followed, with probability 1 - p, by collective dephasing U_phi."""
    choi = kraus_to_choi(swap_dephase_kraus(p, phi), 4)
    return BidirectionalChannel((2, 2, 2, 2), choi, name=f"swap_dephase(p={p:g}, phi={phi:g})")


def apply_map(choi: np.ndarray, rho: np.ndarray, dim_a: int, dim_b: int, dim_r: int = 1) -> np.ndarray:
    """Apply the map with Choi matrix `choi` to the A part of an R (x) A operator."""
    J = np.asarray(choi).reshape(dim_a, dim_b, dim_a, dim_b)
    X = np.asarray(rho).reshape(dim_r, dim_a, dim_r, dim_a)
    out = np.einsum("rasx,abxt->rbst", X, J)
    return out.reshape(dim_r * dim_b, dim_r * dim_b)


def apply(channel: QuantumChannel, rho: np.ndarray, dims: Optional[Tuple[int, int]] = None) -> np.ndarray:
    """N applied to the A part of rho on R (x) A; dims=(dR, dA) defaults to dR = 1."""
    rho = linalg.check_hermitian(rho)
    if dims is None:
        if rho.shape[0] % channel.dim_a:
            raise ContractViolation(f"State of dimension {rho.shape[0]} has no factor {channel.dim_a}")
        dims = (rho.shape[0] // channel.dim_a, channel.dim_a)
    dim_r, dim_a = dims
    if dim_a != channel.dim_a or rho.shape[0] != dim_r * dim_a:
        raise ContractViolation(f"State dims {dims} do not match channel input {channel.dim_a}")
    return linalg.hermitian_part(apply_map(channel.choi, rho, channel.dim_a, channel.dim_b, dim_r))


def compose(second: QuantumChannel, first: QuantumChannel) -> QuantumChannel:
    """Choi matrix of second o first (first applied first)."""
    if first.dim_b != second.dim_a:
        raise ContractViolation(f"Cannot compose: output {first.dim_b} != input {second.dim_a}")
    dA, dB, dC = first.dim_a, first.dim_b, second.dim_b
    J1 = first.choi.reshape(dA, dB, dA, dB)
    J2 = second.choi.reshape(dB, dC, dB, dC)
    choi = np.einsum("abxy,bcyz->acxz", J1, J2).reshape(dA * dC, dA * dC)
    return QuantumChannel(
        dA,
        dC,
        linalg.hermitian_part(choi),
        trace_preserving=first.trace_preserving and second.trace_preserving,
        name=f"{second.name or 'N2'} o {first.name or 'N1'}",
    )


def tensor(left: QuantumChannel, right: QuantumChannel) -> QuantumChannel:
    """Parallel use; the Choi matrix is ordered A1 A2 B1 B2."""
    dims = [left.dim_a, left.dim_b, right.dim_a, right.dim_b]
    choi = linalg.permute_systems(np.kron(left.choi, right.choi), dims, [0, 2, 1, 3])
    return QuantumChannel(
        left.dim_a * right.dim_a,
        left.dim_b * right.dim_b,
        choi,
        trace_preserving=left.trace_preserving and right.trace_preserving,
        name=f"{left.name or 'N1'} (x) {right.name or 'N2'}",
    )


def random_channel(dim_a: int, dim_b: int, rng: Optional[np.random.Generator] = None, kraus_count: int = 2) -> QuantumChannel:
    """Random channel from a Haar isometry A -> B (x) E."""
    rng = np.random.default_rng(rng)
    size = dim_b * kraus_count
    if size < dim_a:
        raise ContractViolation("Environment too small for an isometry")
    V = linalg.random_unitary(size, rng)[:, :dim_a]
    kraus = [V[k * dim_b:(k + 1) * dim_b, :] for k in range(kraus_count)]
    return from_kraus(kraus, name="random")


def _check_pair(N: QuantumChannel, M: QuantumChannel) -> None:
    if N.dims != M.dims:
        raise ContractViolation(f"Channel dims differ: {N.dims} vs {M.dims}")


def channel_geometric_divergence(N: QuantumChannel, M: QuantumChannel, alpha: float) -> float:
    """(1/(alpha-1)) log ||tr_B G_{1-alpha}(J_N, J_M)||_inf in bits, alpha in (1, 2]."""
    if not 1 < alpha <= 2:
        raise ContractViolation(f"alpha must lie in (1, 2], got {alpha}")
    _check_pair(N, M)
    if not supported_in(N.choi, M.choi):
        return INFINITE
    try:
        G = linalg.weighted_geometric_mean(N.choi, M.choi, 1 - alpha)
    except SupportViolation:
        return INFINITE
    norm = linalg.operator_norm(linalg.partial_trace(G, N.dims, keep=0))
    return math.log2(norm) / (alpha - 1)


def channel_dmax(N: QuantumChannel, M: QuantumChannel) -> float:
    """Max-relative channel divergence, equal to D_max(J_N || J_M)."""
    _check_pair(N, M)
    return max_relative(N.choi, M.choi)


def channel_bs_divergence(N: QuantumChannel, M: QuantumChannel) -> float:
    """Belavkin-Staszewski channel divergence ||tr_B J^1/2 log(J^1/2 J_M^-1 J^1/2) J^1/2||_inf."""
    _check_pair(N, M)
    if not supported_in(N.choi, M.choi):
        return INFINITE
    root = linalg.psd_sqrt(N.choi)
    inner = linalg.hermitian_part(root @ linalg.psd_power(M.choi, -1) @ root)
    body = root @ linalg.psd_log(inner) @ root
    return linalg.operator_norm(linalg.partial_trace(body, N.dims, keep=0)) / LN2
