"""Two-parameter Renyi relative entropies between density matrices.

The central object is the relative purity

    g(rho, sigma) = Tr[ (sigma^((1-a)/2z) rho^(a/z) sigma^((1-a)/2z))^z ],

from which the entropy is ln(g)/(a - 1) on matching supports and +inf
otherwise. For a in (0, 1), g <= 1 with equality iff rho = sigma, so the
entropy is nonnegative and vanishes only for identical states. Matrix powers
are taken spectrally on the support; no eigenvalue regularization is applied
anywhere, and +inf is an explicit return value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import DimMismatchError, InvalidParamsError, SupportViolationError
from .states import DensityMatrix, support_contained


@dataclass(frozen=True)
class EntropyParams:
    """Order pair (alpha, z) with its data-processing classification.

    dpi_valid marks 1 >= z >= max(alpha, 1 - alpha), the region where the
    entropy is monotone under channels. Pairs outside it (with z > 0) still
    evaluate; they are flagged, not refused.
    """

    alpha: float
    z: float
    dpi_valid: bool = field(init=False)

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise InvalidParamsError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.z <= 0.0:
            raise InvalidParamsError(f"z must be positive, got {self.z}")
        valid = max(self.alpha, 1.0 - self.alpha) <= self.z <= 1.0
        object.__setattr__(self, "dpi_valid", valid)

    @property
    def swapped(self) -> "EntropyParams":
        """Same z with alpha -> 1 - alpha."""
        return EntropyParams(1.0 - self.alpha, self.z)


def _check_dims(rho: DensityMatrix, sigma: DensityMatrix) -> None:
    if rho.dim != sigma.dim:
        raise DimMismatchError(f"dims {rho.dim} and {sigma.dim} differ")


# Eigenvalues of the sandwiched product below this (relative to the largest)
# sit at the eigensolver's noise floor and carry no reliable digits. The
# z-power trace is brutally sensitive there for small z (an eigenvalue of
# relative size 1e-13 still contributes ~ (1e-13)^z of the leading term), so
# an unresolved smallest eigenvalue is reconstructed from the determinant,
# which factorizes exactly over the input spectra.
_ZPOW_NOISE_REL = 1e-13


def _purity_value(rho: DensityMatrix, sigma: DensityMatrix, alpha: float, z: float) -> float:
    half_exp = (1.0 - alpha) / (2.0 * z)
    outer = linalg.mat_pow(sigma.mat, half_exp)
    core = outer @ linalg.mat_pow(rho.mat, alpha / z) @ outer
    core = linalg.hermitian_part(core)
    vals = np.maximum(np.linalg.eigvalsh(core), 0.0)
    top = float(vals[-1])
    if top <= 0.0:
        return 0.0
    resolved = vals[vals >= _ZPOW_NOISE_REL * top]
    unresolved = len(vals) - len(resolved)
    if unresolved == 1 and rho.full_rank and sigma.full_rank:
        # det(core) = det(sigma)^(2 c) det(rho)^(alpha/z) in log space
        logdet = 2.0 * half_exp * np.log(sigma.eigenvalues).sum() + (alpha / z) * np.log(
            rho.eigenvalues
        ).sum()
        smallest = math.exp(logdet - np.log(resolved).sum())
        return float((resolved**z).sum() + smallest**z)
    return float((resolved**z).sum())


def relative_purity(rho: DensityMatrix, sigma: DensityMatrix, p: EntropyParams) -> float:
    """g(rho, sigma); requires supp(rho) ⊆ supp(sigma)."""
    _check_dims(rho, sigma)
    if not support_contained(rho, sigma):
        raise SupportViolationError("supp(rho) not contained in supp(sigma)")
    return _purity_value(rho, sigma, p.alpha, p.z)


def renyi_az(rho: DensityMatrix, sigma: DensityMatrix, p: EntropyParams) -> float:
    """ln(g)/(alpha - 1) on matching supports, +inf otherwise."""
    _check_dims(rho, sigma)
    if not support_contained(rho, sigma):
        return math.inf
    g = _purity_value(rho, sigma, p.alpha, p.z)
    return math.log(g) / (p.alpha - 1.0)


def renyi_az_symmetrized(rho: DensityMatrix, sigma: DensityMatrix, p: EntropyParams) -> float:
    """Sum of both orderings; +inf if either direction diverges."""
    return renyi_az(rho, sigma, p) + renyi_az(sigma, rho, p)


def fidelity(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Uhlmann fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho))."""
    _check_dims(rho, sigma)
    root = linalg.mat_pow(rho.mat, 0.5)
    inner = linalg.hermitian_part(root @ sigma.mat @ root)
    vals = np.maximum(np.linalg.eigvalsh(inner), 0.0)
    return float(np.sqrt(vals).sum())


def petz(rho: DensityMatrix, sigma: DensityMatrix, alpha: float) -> float:
    """ln Tr(rho^a sigma^(1-a)) / (a - 1) for a in (0,1) or (1, inf).

    For a > 1 the sigma power is negative, taken as a generalized inverse;
    the value is +inf when the support condition fails.
    """
    _check_dims(rho, sigma)
    if alpha <= 0.0 or alpha == 1.0:
        raise InvalidParamsError(f"Petz order must be positive and != 1, got {alpha}")
    if not support_contained(rho, sigma):
        return math.inf
    val = float(
        np.real(
            np.trace(linalg.mat_pow(rho.mat, alpha) @ linalg.mat_pow(sigma.mat, 1.0 - alpha))
        )
    )
    return math.log(val) / (alpha - 1.0)


def sandwiched(rho: DensityMatrix, sigma: DensityMatrix, alpha: float) -> float:
    """Renyi divergence at z = alpha; +inf on a support violation."""
    _check_dims(rho, sigma)
    if alpha <= 0.0 or alpha == 1.0:
        raise InvalidParamsError(f"order must be positive and != 1, got {alpha}")
    if not support_contained(rho, sigma):
        return math.inf
    return math.log(_purity_value(rho, sigma, alpha, alpha)) / (alpha - 1.0)


def umegaki(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Tr rho (ln rho - ln sigma) with 0 ln 0 = 0; +inf off-support."""
    _check_dims(rho, sigma)
    if not support_contained(rho, sigma):
        return math.inf

    def log_on_support(dm: DensityMatrix) -> np.ndarray:
        vals = dm.eigenvalues
        logs = np.where(vals > linalg.SUPPORT_TOL, np.log(np.where(vals > 0, vals, 1.0)), 0.0)
        return (dm.eigenvectors * logs) @ dm.eigenvectors.conj().T

    diff = log_on_support(rho) - log_on_support(sigma)
    return float(np.real(np.trace(rho.mat @ diff)))


def min_relative(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """-2 ln F(rho, sigma); +inf for orthogonal states."""
    f = fidelity(rho, sigma)
    if f <= 0.0:
        return math.inf
    return -2.0 * math.log(f)


def max_relative(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """ln of the largest eigenvalue of sigma^(-1/2) rho sigma^(-1/2)."""
    _check_dims(rho, sigma)
    if not support_contained(rho, sigma):
        return math.inf
    inv_root = linalg.mat_pow(sigma.mat, -0.5)
    conjugated = linalg.hermitian_part(inv_root @ rho.mat @ inv_root)
    top = float(np.linalg.eigvalsh(conjugated)[-1])
    return math.log(top)


def affinity_entropy(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """The (alpha, z) = (1/2, 1) member; -2 ln of the quantum affinity."""
    return renyi_az(rho, sigma, EntropyParams(0.5, 1.0))


_SPECIAL_CASES = {
    "petz": lambda r, s, a: petz(r, s, a),
    "sandwiched": lambda r, s, a: sandwiched(r, s, a),
    "umegaki": lambda r, s, a: umegaki(r, s),
    "min_rel": lambda r, s, a: min_relative(r, s),
    "max_rel": lambda r, s, a: max_relative(r, s),
    "fidelity": lambda r, s, a: fidelity(r, s),
    "affinity": lambda r, s, a: affinity_entropy(r, s),
}


def special_case(
    rho: DensityMatrix, sigma: DensityMatrix, which: str, alpha: float | None = None
) -> float:
    """Dispatch to a named special case; `alpha` is required for the
    parametrized families (petz, sandwiched)."""
    try:
        fn = _SPECIAL_CASES[which]
    except KeyError:
        raise InvalidParamsError(
            f"unknown special case {which!r}; choose from {sorted(_SPECIAL_CASES)}"
        ) from None
    if which in ("petz", "sandwiched") and alpha is None:
        raise InvalidParamsError(f"{which} requires an alpha order")
    return fn(rho, sigma, alpha)
