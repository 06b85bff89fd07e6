"""Dense complex-matrix kernel: Hermitian eigendecomposition, fractional
matrix powers, Schatten p-norms, and tensor products.

All routines treat matrices as plain complex numpy arrays. The intended
regime is small dense matrices (dimension 2 to 8 or so); nothing here is
tuned for large problems.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy.special import roots_jacobi

from .errors import (
    InvalidPError,
    NoConvergenceError,
    NotHermitianError,
    NotPSDError,
    SingularMatrixError,
)

# Tolerances shared across modules.
HERMITIAN_TOL = 1e-10   # max-entry asymmetry allowed before rejecting input
PSD_TOL = 1e-10         # eigenvalues in (-PSD_TOL, 0) clamp to zero
SUPPORT_TOL = 1e-12     # eigenvalues at or below this count as zero

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


class Eigensystem(NamedTuple):
    """Eigenvalues (ascending) and the unitary of column eigenvectors."""

    values: np.ndarray
    vectors: np.ndarray


def hermitian_part(m: np.ndarray) -> np.ndarray:
    """Return (m + m†) / 2."""
    return (m + m.conj().T) / 2


def asymmetry(m: np.ndarray) -> float:
    """Max-entry deviation of m from its Hermitian part."""
    return float(np.max(np.abs(m - m.conj().T)))


def eigh(m: np.ndarray, tol: float = HERMITIAN_TOL) -> Eigensystem:
    """Eigendecomposition of a Hermitian matrix.

    Raises NotHermitianError if the max-entry asymmetry exceeds `tol`, and
    NoConvergenceError if the underlying solver gives up. Eigenvalues come
    back ascending; vectors are the columns of a unitary.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotHermitianError(f"expected a square matrix, got shape {m.shape}")
    if asymmetry(m) > tol:
        raise NotHermitianError(
            f"matrix asymmetry {asymmetry(m):.3e} exceeds tolerance {tol:.3e}"
        )
    try:
        values, vectors = np.linalg.eigh(hermitian_part(m))
    except np.linalg.LinAlgError as exc:
        raise NoConvergenceError(str(exc)) from exc
    return Eigensystem(values, vectors)


def mat_pow(
    m: np.ndarray,
    s: float,
    psd_tol: float = PSD_TOL,
    support_tol: float = SUPPORT_TOL,
) -> np.ndarray:
    """Fractional power m^s of a PSD Hermitian matrix via its spectrum.

    Eigenvalues in (-psd_tol, 0) are clamped to zero; anything more negative
    raises NotPSDError. The support cut is relative to the largest
    eigenvalue (solver noise scales with the matrix norm, and products like
    sigma^(large) rho sigma^(large) carry genuinely tiny spectra that an
    absolute cut would destroy); eigenvalues below it map to zero for every
    exponent, so negative powers act as generalized inverses on the support.
    """
    values, vectors = eigh(m)
    if values[0] < -psd_tol * max(values[-1], 1.0):
        raise NotPSDError(f"smallest eigenvalue {values[0]:.3e} below tolerance")
    values = np.maximum(values, 0.0)
    on_support = values > support_tol * values[-1]
    powered = np.zeros_like(values)
    powered[on_support] = values[on_support] ** s
    return hermitian_part((vectors * powered) @ vectors.conj().T)


@lru_cache(maxsize=32)
def _jacobi_rule(n: int, s: float) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Jacobi nodes/weights for the weight (1-x)^(-s) (1+x)^(s-1)."""
    with np.errstate(invalid="ignore", divide="ignore"):
        return roots_jacobi(n, -s, s - 1.0)


def mat_pow_integral(m: np.ndarray, s: float, quad_points: int = 2000) -> np.ndarray:
    """m^s for 0 < s < 1 from the resolvent integral

        m^s = sin(pi s)/pi * ∫_0^∞ x^(s-1) m (m + x I)^(-1) dx,

    mapped to the unit interval by x = u/(1-u). The transformed integrand
    carries the weight u^(s-1) (1-u)^(-s) times the smooth matrix factor
    m [(1-u) m + u I]^(-1), so the weight is absorbed exactly by Gauss-Jacobi
    nodes and the solver never touches an eigendecomposition of m. Intended
    purely as a cross-check oracle for mat_pow.
    """
    if not 0.0 < s < 1.0:
        raise InvalidPError(f"integral representation requires 0 < s < 1, got {s}")
    m = np.asarray(m, dtype=complex)
    dim = m.shape[0]
    smallest = float(np.linalg.eigvalsh(hermitian_part(m))[0])
    if smallest <= SUPPORT_TOL:
        raise SingularMatrixError(
            f"integral oracle needs a strictly positive matrix (min eig {smallest:.3e})"
        )
    nodes, weights = _jacobi_rule(quad_points, s)
    u = (1.0 + nodes) / 2.0
    eye = np.eye(dim, dtype=complex)
    shifted = (1.0 - u)[:, None, None] * m[None] + u[:, None, None] * eye[None]
    solved = np.linalg.solve(shifted, np.broadcast_to(m, shifted.shape))
    total = np.tensordot(weights, solved, axes=(0, 0))
    return hermitian_part(math.sin(math.pi * s) / math.pi * total)


def singular_values(m: np.ndarray) -> np.ndarray:
    """Singular values of m, descending."""
    return np.linalg.svd(np.asarray(m, dtype=complex), compute_uv=False)


def schatten_norm(m: np.ndarray, p: float) -> float:
    """Schatten p-norm: (sum_i sigma_i^p)^(1/p); p may be math.inf."""
    if p != math.inf and p < 1.0:
        raise InvalidPError(f"Schatten order must be >= 1 or inf, got {p}")
    sv = singular_values(m)
    if p == math.inf:
        return float(sv[0]) if sv.size else 0.0
    if p == 1.0:
        return float(sv.sum())
    return float((sv**p).sum() ** (1.0 / p))


def trace_norm(m: np.ndarray) -> float:
    """Schatten 1-norm, the sum of singular values."""
    return schatten_norm(m, 1.0)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with complex dtype."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))
