"""Shared random-instance generators for the test suite."""

import numpy as np

from azqsl.entropy import EntropyParams
from azqsl.states import BlochVector, DensityMatrix, GHZMixedParams, bloch_state, ghz_mixed


def random_density(rng, dim: int) -> DensityMatrix:
    """Full-rank state from a rectangular Ginibre draw (well conditioned)."""
    x = rng.normal(size=(dim, 2 * dim)) + 1j * rng.normal(size=(dim, 2 * dim))
    m = x @ x.conj().T
    return DensityMatrix(m / np.real(np.trace(m)))


def random_hermitian(rng, dim: int) -> np.ndarray:
    x = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (x + x.conj().T) / 2


def random_unitary(rng, dim: int) -> np.ndarray:
    x = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(x)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_params(rng, dpi_valid: bool = True) -> EntropyParams:
    alpha = rng.uniform(0.05, 0.95)
    if dpi_valid:
        z = rng.uniform(max(alpha, 1.0 - alpha), 1.0)
    else:
        z = rng.uniform(0.05, 1.0)
    return EntropyParams(float(alpha), float(z))


def random_bloch_state(rng, r_max: float = 0.95):
    bv = BlochVector(
        float(rng.uniform(0.02, r_max)),
        float(rng.uniform(0.0, np.pi)),
        float(rng.uniform(0.0, 2 * np.pi)),
    )
    return bloch_state(bv), bv


def random_ghz_state(rng, p_max: float = 0.95):
    params = GHZMixedParams(float(rng.uniform(0.02, p_max)))
    return ghz_mixed(params), params
