"""Dense Hermitian matrix kernels.

All matrix functions go through a Hermitian eigendecomposition. Eigenvalues
in (-1e-10, 0] are clipped to zero and pseudo-inverses ignore eigenvalues at
or below 1e-10 times the largest one, so rank-deficient states are handled on
their support. Logarithms here are natural; the divergence layer converts to
bits.

Multipartite operators use the row-major Kronecker layout: for dims
(d0, d1, ...) subsystem 0 is the most significant index.
"""

from __future__ import annotations

from functools import reduce
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.stats import unitary_group

from .errors import ContractViolation, SupportViolation

HERMITIAN_TOL = 1e-10
CLIP_TOL = 1e-10
PINV_RTOL = 1e-10

Subsystems = Union[int, str, Sequence[int]]
_LABELS = {"A": 0, "B": 1}


def hermitian_part(M: np.ndarray) -> np.ndarray:
    return (M + M.conj().T) / 2


def check_hermitian(M: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Return M as a complex array after asserting it is square and Hermitian."""
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ContractViolation(f"Expected a square matrix, got shape {M.shape}")
    if not np.allclose(M, M.conj().T, rtol=0.0, atol=tol):
        deviation = float(np.max(np.abs(M - M.conj().T)))
        raise ContractViolation(f"Matrix is not Hermitian (max deviation {deviation:.3e})")
    return hermitian_part(M)


def check_density(rho: np.ndarray, subnormalized: bool = False, tol: float = 1e-10) -> np.ndarray:
    """Assert rho is PSD with unit trace (or trace <= 1 when subnormalized)."""
    rho = check_hermitian(rho)
    lam = np.linalg.eigvalsh(rho)
    if lam[0] < -tol:
        raise ContractViolation(f"Operator is not PSD (min eigenvalue {lam[0]:.3e})")
    tr = float(np.trace(rho).real)
    if subnormalized:
        if tr > 1 + tol:
            raise ContractViolation(f"Sub-normalized state has trace {tr:.12f} > 1")
    elif abs(tr - 1) > tol:
        raise ContractViolation(f"State has trace {tr:.12f}, expected 1")
    return rho


def eigh(H: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Eigenvalues in descending order with the matching unitary eigenvectors."""
    H = check_hermitian(H)
    lam, vec = np.linalg.eigh(H)
    return lam[::-1], vec[:, ::-1]


def _eigh(H: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    # internal, skips the contract check for matrices built here
    return np.linalg.eigh(hermitian_part(np.asarray(H, dtype=complex)))


def _clip(lam: np.ndarray) -> np.ndarray:
    lam = lam.copy()
    lam[(lam > -CLIP_TOL) & (lam <= 0)] = 0.0
    return lam


def _support_mask(lam: np.ndarray) -> np.ndarray:
    top = float(np.max(lam)) if lam.size else 0.0
    if top <= 0:
        return np.zeros_like(lam, dtype=bool)
    return lam > PINV_RTOL * top


def apply_function(H: np.ndarray, f: Callable[[np.ndarray], np.ndarray], support_only: bool = True) -> np.ndarray:
    """f(H) through the spectrum; with support_only, f acts on the support and is 0 elsewhere."""
    lam, vec = _eigh(H)
    lam = _clip(lam)
    if support_only:
        mask = _support_mask(lam)
        vals = np.zeros_like(lam)
        vals[mask] = f(lam[mask])
    else:
        vals = f(lam)
    return (vec * vals) @ vec.conj().T


def psd_power(H: np.ndarray, p: float) -> np.ndarray:
    """H**p for PSD H; negative powers are pseudo-inverse powers on the support."""
    if p == 0:
        return support_projector(H)
    return apply_function(H, lambda lam: np.power(lam, p))


def psd_sqrt(H: np.ndarray) -> np.ndarray:
    return psd_power(H, 0.5)


def psd_log(H: np.ndarray) -> np.ndarray:
    """Natural logarithm on the support of H."""
    return apply_function(H, np.log)


def support_projector(H: np.ndarray) -> np.ndarray:
    lam, vec = _eigh(H)
    mask = _support_mask(_clip(lam))
    U = vec[:, mask]
    return U @ U.conj().T


def kron(*matrices: np.ndarray) -> np.ndarray:
    """Kronecker product of one or more matrices, left to right."""
    if not matrices:
        raise ContractViolation("kron needs at least one matrix")
    return reduce(np.kron, (np.asarray(m) for m in matrices))


def _subsystems(which: Subsystems, n: int) -> List[int]:
    if isinstance(which, str):
        if which not in _LABELS or n != 2:
            raise ContractViolation(f"Subsystem label {which!r} needs a bipartite layout (labels: A, B)")
        idx = [_LABELS[which]]
    elif isinstance(which, (int, np.integer)):
        idx = [int(which)]
    else:
        idx = sorted(int(i) for i in which)
    for i in idx:
        if i < 0 or i >= n:
            raise ContractViolation(f"Subsystem index {i} out of range for {n} subsystems")
    return idx


def _check_layout(M: np.ndarray, dims: Sequence[int]) -> Tuple[np.ndarray, List[int]]:
    dims = [int(d) for d in dims]
    total = int(np.prod(dims))
    M = np.asarray(M)
    if M.shape != (total, total):
        raise ContractViolation(f"Operator of shape {M.shape} does not match subsystem dims {tuple(dims)}")
    return M, dims


def partial_trace(M: np.ndarray, dims: Sequence[int], keep: Subsystems) -> np.ndarray:
    """Trace out every subsystem not listed in `keep` (index, index list, or 'A'/'B')."""
    M, dims = _check_layout(M, dims)
    n = len(dims)
    kept = _subsystems(keep, n)
    tensor = M.reshape(dims + dims)
    for i in sorted(set(range(n)) - set(kept), reverse=True):
        half = tensor.ndim // 2
        tensor = np.trace(tensor, axis1=i, axis2=i + half)
    d = int(np.prod([dims[i] for i in kept])) if kept else 1
    return tensor.reshape(d, d)


def partial_transpose(M: np.ndarray, dims: Sequence[int], which: Subsystems) -> np.ndarray:
    M, dims = _check_layout(M, dims)
    n = len(dims)
    tensor = M.reshape(dims + dims)
    for i in _subsystems(which, n):
        tensor = np.swapaxes(tensor, i, i + n)
    return tensor.reshape(M.shape)


def permute_systems(M: np.ndarray, dims: Sequence[int], perm: Sequence[int]) -> np.ndarray:
    """Reorder subsystems so that new position k holds old subsystem perm[k]."""
    M, dims = _check_layout(M, dims)
    n = len(dims)
    if sorted(perm) != list(range(n)):
        raise ContractViolation(f"{tuple(perm)} is not a permutation of {n} subsystems")
    axes = list(perm) + [n + p for p in perm]
    return M.reshape(dims + dims).transpose(axes).reshape(M.shape)


def weighted_geometric_mean(X: np.ndarray, Y: np.ndarray, t: float) -> np.ndarray:
    """G_t(X, Y) = X^1/2 (X^-1/2 Y X^-1/2)^t X^1/2, computed on the support of X.

    For t < 0 the compressed operator must be invertible, otherwise
    SupportViolation is raised for the caller to turn into an infinite value.
    """
    X = hermitian_part(np.asarray(X, dtype=complex))
    Y = hermitian_part(np.asarray(Y, dtype=complex))
    if X.shape != Y.shape:
        raise ContractViolation(f"Shape mismatch {X.shape} vs {Y.shape}")
    if t == 0:
        return X
    lam, vec = _eigh(X)
    lam = _clip(lam)
    mask = _support_mask(lam)
    if not mask.any():
        return np.zeros_like(X)
    U = vec[:, mask]
    root = np.sqrt(lam[mask])
    Z = hermitian_part((U.conj().T @ Y @ U) / np.outer(root, root))
    if t < 0:
        mu = np.linalg.eigvalsh(Z)
        if mu[-1] <= 0 or mu[0] <= PINV_RTOL * float(mu[-1]):
            raise SupportViolation("support of Y does not cover support of X")
        mu_pow, w = np.linalg.eigh(Z)
        Zt = (w * np.power(mu_pow, t)) @ w.conj().T
    else:
        Zt = psd_power(Z, t)
    L = U * root
    return hermitian_part(L @ Zt @ L.conj().T)


def operator_norm(M: np.ndarray) -> float:
    M = np.asarray(M)
    if M.size == 0:
        return 0.0
    return float(np.linalg.norm(M, 2))


def trace_norm(M: np.ndarray) -> float:
    M = np.asarray(M)
    if M.size == 0:
        return 0.0
    return float(np.linalg.norm(M, "nuc"))


def max_entangled(d: int) -> np.ndarray:
    """Unnormalized |Phi><Phi| with |Phi> = sum_i |ii>."""
    phi = np.eye(d, dtype=complex).reshape(-1)
    return np.outer(phi, phi.conj())


def random_unitary(d: int, rng: Optional[np.random.Generator] = None) -> np.ndarray:
    if d == 1:
        return np.ones((1, 1), dtype=complex)
    return unitary_group.rvs(d, random_state=rng)


def random_density(d: int, rng: Optional[np.random.Generator] = None, rank: Optional[int] = None) -> np.ndarray:
    """Random state from a Ginibre matrix; full rank unless `rank` is given."""
    rng = np.random.default_rng(rng)
    k = d if rank is None else rank
    G = rng.normal(size=(d, k)) + 1j * rng.normal(size=(d, k))
    rho = G @ G.conj().T
    return hermitian_part(rho / np.trace(rho).real)


def random_hermitian(d: int, rng: Optional[np.random.Generator] = None) -> np.ndarray:
    rng = np.random.default_rng(rng)
    G = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return hermitian_part(G)
