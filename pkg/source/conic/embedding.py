"""Real symmetric embedding of Hermitian matrices.

H = R + iI is represented by the real 2n x 2n matrix [[R, -I], [I, R]].
H is PSD iff its embedding is, and traces double under the map.
"""

from __future__ import annotations

import cvxpy as cp
import numpy as np

from ..errors import ContractViolation


def embed(H: np.ndarray) -> np.ndarray:
    H = np.asarray(H, dtype=complex)
    R, I = H.real, H.imag
    return np.block([[R, -I], [I, R]])


def _halves(E: np.ndarray) -> int:
    E = np.asarray(E)
    if E.ndim != 2 or E.shape[0] != E.shape[1] or E.shape[0] % 2:
        raise ContractViolation(f"Embedded matrix must be square of even size, got {E.shape}")
    return E.shape[0] // 2


def unembed(E: np.ndarray) -> np.ndarray:
    """Inverse of `embed`, reading the left column of blocks."""
    n = _halves(E)
    E = np.asarray(E, dtype=float)
    return E[:n, :n] + 1j * E[n:, :n]


def embedded_trace(E: np.ndarray) -> float:
    """Trace of the Hermitian matrix behind an embedding."""
    _halves(E)
    return 0.5 * float(np.trace(np.asarray(E, dtype=float)))


def antisymmetry_residual(E: np.ndarray) -> float:
    """Distance of E from the [[R, -I], [I, R]] pattern with R symmetric and I antisymmetric."""
    n = _halves(E)
    E = np.asarray(E, dtype=float)
    R1, R2 = E[:n, :n], E[n:, n:]
    I_low, I_up = E[n:, :n], E[:n, n:]
    parts = (R1 - R2, I_low + I_up, I_low + I_low.T, R1 - R1.T)
    return float(max(np.max(np.abs(p)) for p in parts)) if n else 0.0


def embed_expression(block: cp.Expression) -> cp.Expression:
    """Symbolic `embed` for a complex affine cvxpy expression."""
    re, im = cp.real(block), cp.imag(block)
    return cp.bmat([[re, -im], [im, re]])
