"""Dynamics models producing time-sampled trajectories with analytic
derivatives: unitary evolution under a fixed Hamiltonian, generic
time-dependent Kraus families, a single-qubit depolarizing channel, and the
two-qubit amplitude-damping channel with independent reservoirs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import linalg
from .errors import (
    CompletenessViolationError,
    DimMismatchError,
    InvalidParamsError,
    InvalidStateError,
    NotHermitianError,
)
from .states import DensityMatrix

COMPLETENESS_TOL = 1e-8
TRACE_DRIFT_TOL = 1e-9

# Floor keeping the per-operator depolarizing derivative finite at t = 0;
# the products K rho dK† it enters are continuous there, so clamping the
# evaluation point changes them only at O(t_floor).
DEPOLARIZING_T_FLOOR = 1e-9

# Below this, 1 - gamma^2 is evaluated by its t -> 0 series instead of
# directly (catastrophic cancellation near gamma = 1).
_AD_SERIES_TOL = 1e-12


class HamiltonianModel:
    """Time-independent Hamiltonian, optionally in qubit form n·sigma."""

    def __init__(self, mat: np.ndarray, n: np.ndarray | None = None):
        mat = np.asarray(mat, dtype=complex)
        if linalg.asymmetry(mat) > linalg.HERMITIAN_TOL:
            raise NotHermitianError(
                f"Hamiltonian asymmetry {linalg.asymmetry(mat):.3e}"
            )
        self.mat = linalg.hermitian_part(mat)
        self.n = None if n is None else np.asarray(n, dtype=float)

    @classmethod
    def qubit(cls, n: Sequence[float]) -> "HamiltonianModel":
        n = np.asarray(n, dtype=float)
        mat = n[0] * linalg.SIGMA_X + n[1] * linalg.SIGMA_Y + n[2] * linalg.SIGMA_Z
        return cls(mat, n=n)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


@dataclass(frozen=True)
class DepolarizingParams:
    gamma: float

    def __post_init__(self):
        if self.gamma <= 0:
            raise InvalidParamsError(f"damping rate must be positive, got {self.gamma}")


@dataclass(frozen=True)
class AmplitudeDampingParams:
    lam: float
    s: float
    markovian: bool = field(init=False)

    def __post_init__(self):
        if self.lam <= 0:
            raise InvalidParamsError(f"spectral width must be positive, got {self.lam}")
        if self.s < 0:
            raise InvalidParamsError(f"regime parameter must be >= 0, got {self.s}")
        object.__setattr__(self, "markovian", self.s <= 0.5)


def decoherence_gamma(t, lam: float, s: float):
    """Resonant-regime decoherence amplitude.

    Decays monotonically for s <= 1/2 and oscillates for s > 1/2; the
    s = 1/2 degeneracy is handled by its closed limit on |s - 1/2| < 1e-9.
    Accepts scalars or arrays of times.
    """
    x = lam * np.asarray(t, dtype=float) / 2.0
    damp = np.exp(-x)
    if abs(s - 0.5) < 1e-9:
        return damp * (1.0 + x)
    if s < 0.5:
        q = np.sqrt(1.0 - 2.0 * s)
        return damp * (np.cosh(x * q) + np.sinh(x * q) / q)
    q = np.sqrt(2.0 * s - 1.0)
    return damp * (np.cos(x * q) + np.sin(x * q) / q)


def decoherence_gamma_dt(t, lam: float, s: float):
    """Time derivative of decoherence_gamma."""
    x = lam * np.asarray(t, dtype=float) / 2.0
    damp = np.exp(-x)
    if abs(s - 0.5) < 1e-9:
        return -(lam / 2.0) * x * damp
    if s < 0.5:
        q = np.sqrt(1.0 - 2.0 * s)
        return -(lam * s / q) * damp * np.sinh(x * q)
    q = np.sqrt(2.0 * s - 1.0)
    return -(lam * s / q) * damp * np.sin(x * q)


class KrausFamily:
    """Time-dependent Kraus family {K_l(t)} with derivatives {dK_l/dt}.

    Built-in channels supply analytic derivatives. A user family may omit
    them, in which case trajectory generation falls back to central finite
    differences with step 1e-5 * tau.
    """

    def __init__(
        self,
        dim: int,
        n_ops: int,
        ops_fn: Callable[[float], Sequence[np.ndarray]],
        dops_fn: Callable[[float], Sequence[np.ndarray]] | None = None,
    ):
        self.dim = dim
        self.n_ops = n_ops
        self._ops_fn = ops_fn
        self._dops_fn = dops_fn

    def operators(self, t: float) -> list[np.ndarray]:
        return [np.asarray(k, dtype=complex) for k in self._ops_fn(t)]

    def derivatives(self, t: float, fd_step: float | None = None) -> list[np.ndarray]:
        if self._dops_fn is not None:
            return [np.asarray(k, dtype=complex) for k in self._dops_fn(t)]
        if fd_step is None:
            raise InvalidParamsError(
                "family has no analytic derivatives; supply fd_step"
            )
        if t < fd_step:
            lo, hi = self.operators(t), self.operators(t + fd_step)
            return [(b - a) / fd_step for a, b in zip(lo, hi)]
        lo, hi = self.operators(t - fd_step), self.operators(t + fd_step)
        return [(b - a) / (2.0 * fd_step) for a, b in zip(lo, hi)]

    def op_stacks(self, times: np.ndarray) -> np.ndarray:
        """Operators at the exact sampled times, shape (n_times, n_ops, dim, dim).

        Used to build states; never regularized."""
        nt = len(times)
        K = np.empty((nt, self.n_ops, self.dim, self.dim), dtype=complex)
        for i, t in enumerate(times):
            K[i] = self.operators(float(t))
        return K

    def stacks(self, times: np.ndarray, fd_step: float | None = None):
        """Consistent (K, dK) pair for derivative products.

        Products like K rho dK† may have finite limits where each factor is
        separately singular or vanishing; channels with such points override
        this to sample both factors at the same regularized time."""
        nt = len(times)
        K = self.op_stacks(times)
        dK = np.empty_like(K)
        for i, t in enumerate(times):
            dK[i] = self.derivatives(float(t), fd_step=fd_step)
        return K, dK


class DepolarizingFamily(KrausFamily):
    """K_0 = (1/2) sqrt(1 + 3 e^(-G t)) I and K_j = (1/2) sqrt(1 - e^(-G t)) sigma_j.

    The per-operator derivative of K_{1,2,3} diverges like (1 - e^(-G t))^(-1/2)
    at t = 0, so derivative factors are evaluated at t clamped to t_floor.
    """

    def __init__(self, params: DepolarizingParams):
        self.params = params
        super().__init__(dim=2, n_ops=4, ops_fn=self._ops, dops_fn=self._dops)

    def _ops(self, t: float) -> list[np.ndarray]:
        e = np.exp(-self.params.gamma * t)
        eye = np.eye(2, dtype=complex)
        k0 = 0.5 * np.sqrt(1.0 + 3.0 * e) * eye
        return [k0] + [0.5 * np.sqrt(max(1.0 - e, 0.0)) * p for p in linalg.PAULIS]

    def _dops(self, t: float) -> list[np.ndarray]:
        g = self.params.gamma
        t = max(t, DEPOLARIZING_T_FLOOR / g)
        e = np.exp(-g * t)
        eye = np.eye(2, dtype=complex)
        d0 = -(3.0 * g * e / 4.0) / np.sqrt(1.0 + 3.0 * e) * eye
        coeff = (g * e / 4.0) / np.sqrt(1.0 - e)
        return [d0] + [coeff * p for p in linalg.PAULIS]

    def _build_K(self, t: np.ndarray) -> np.ndarray:
        e = np.exp(-self.params.gamma * t)
        eye = np.eye(2, dtype=complex)
        K = np.zeros((len(t), 4, 2, 2), dtype=complex)
        K[:, 0] = 0.5 * np.sqrt(1.0 + 3.0 * e)[:, None, None] * eye
        amp = 0.5 * np.sqrt(np.maximum(1.0 - e, 0.0))
        for j, pauli in enumerate(linalg.PAULIS, start=1):
            K[:, j] = amp[:, None, None] * pauli
        return K

    def op_stacks(self, times: np.ndarray) -> np.ndarray:
        return self._build_K(np.asarray(times, dtype=float))

    def stacks(self, times: np.ndarray, fd_step: float | None = None):
        # K and dK must be sampled at the same clamped time: the products
        # K_j rho dK_j† have a finite t -> 0 limit only because the sqrt(t)
        # zero of K_j cancels the 1/sqrt(t) pole of dK_j.
        g = self.params.gamma
        tc = np.maximum(np.asarray(times, dtype=float), DEPOLARIZING_T_FLOOR / g)
        e = np.exp(-g * tc)
        K = self._build_K(tc)
        dK = np.zeros_like(K)
        eye = np.eye(2, dtype=complex)
        dK[:, 0] = (-(3.0 * g * e / 4.0) / np.sqrt(1.0 + 3.0 * e))[:, None, None] * eye
        damp = (g * e / 4.0) / np.sqrt(1.0 - e)
        for j, pauli in enumerate(linalg.PAULIS, start=1):
            dK[:, j] = damp[:, None, None] * pauli
        return K, dK


class AmplitudeDampingFamily(KrausFamily):
    """Two-qubit product family K_j ⊗ K_l from the single-qubit pair

        K_1 = |0><0| + gamma_t |1><1|,   K_2 = sqrt(1 - gamma_t^2) |0><1|,

    with product-rule derivatives. Near t = 0 the derivative of
    sqrt(1 - gamma^2) is an indeterminate 0/0 whose limit is lam sqrt(s/2);
    that branch is taken whenever 1 - gamma^2 falls below the series
    threshold."""

    def __init__(self, params: AmplitudeDampingParams):
        self.params = params
        super().__init__(dim=4, n_ops=4, ops_fn=self._ops, dops_fn=self._dops)

    def _single(self, t):
        lam, s = self.params.lam, self.params.s
        g = np.asarray(decoherence_gamma(t, lam, s), dtype=float)
        dg = np.asarray(decoherence_gamma_dt(t, lam, s), dtype=float)
        one_m_g2 = np.maximum(1.0 - g * g, 0.0)
        e2 = np.sqrt(one_m_g2)
        safe = np.where(one_m_g2 > _AD_SERIES_TOL, e2, 1.0)
        de2 = np.where(one_m_g2 > _AD_SERIES_TOL, -g * dg / safe, lam * np.sqrt(s / 2.0))
        return g, dg, e2, de2

    def _pair_stacks(self, times: np.ndarray):
        g, dg, e2, de2 = self._single(times)
        nt = len(times)
        K1 = np.zeros((nt, 2, 2), dtype=complex)
        K1[:, 0, 0] = 1.0
        K1[:, 1, 1] = g
        dK1 = np.zeros_like(K1)
        dK1[:, 1, 1] = dg
        K2 = np.zeros_like(K1)
        K2[:, 0, 1] = e2
        dK2 = np.zeros_like(K1)
        dK2[:, 0, 1] = de2
        return (K1, K2), (dK1, dK2)

    def _ops(self, t: float) -> list[np.ndarray]:
        (K1, K2), _ = self._pair_stacks(np.atleast_1d(np.asarray(t, dtype=float)))
        return [np.kron(a[0], b[0]) for a in (K1, K2) for b in (K1, K2)]

    def _dops(self, t: float) -> list[np.ndarray]:
        (K1, K2), (dK1, dK2) = self._pair_stacks(np.atleast_1d(np.asarray(t, dtype=float)))
        pairs = [((K1, dK1), (K1, dK1)), ((K1, dK1), (K2, dK2)),
                 ((K2, dK2), (K1, dK1)), ((K2, dK2), (K2, dK2))]
        return [
            np.kron(da[0], b[0]) + np.kron(a[0], db[0])
            for (a, da), (b, db) in pairs
        ]

    def stacks(self, times: np.ndarray, fd_step: float | None = None):
        times = np.asarray(times, dtype=float)
        (K1, K2), (dK1, dK2) = self._pair_stacks(times)
        nt = len(times)

        def batch_kron(a, b):
            return np.einsum("tab,tcd->tacbd", a, b).reshape(nt, 4, 4)

        singles = [(K1, dK1), (K2, dK2)]
        K = np.empty((nt, 4, 4, 4), dtype=complex)
        dK = np.empty_like(K)
        idx = 0
        for a, da in singles:
            for b, db in singles:
                K[:, idx] = batch_kron(a, b)
                dK[:, idx] = batch_kron(da, b) + batch_kron(a, db)
                idx += 1
        return K, dK

    def op_stacks(self, times: np.ndarray) -> np.ndarray:
        return self.stacks(times)[0]


def depolarizing_family(params: DepolarizingParams) -> DepolarizingFamily:
    return DepolarizingFamily(params)


def amplitude_damping_family(params: AmplitudeDampingParams) -> AmplitudeDampingFamily:
    return AmplitudeDampingFamily(params)


@dataclass
class Trajectory:
    """Time-sampled evolution: states rho_t, Schatten speeds ||drho/dt||_1,
    and the smallest eigenvalue of each sample."""

    times: np.ndarray
    states: np.ndarray  # (n_times, dim, dim)
    speeds: np.ndarray
    kmins: np.ndarray

    def __post_init__(self):
        if self.times[0] != 0.0 or np.any(np.diff(self.times) <= 0):
            raise InvalidParamsError("times must start at 0 and increase strictly")
        traces = np.einsum("tii->t", self.states)
        drift = float(np.max(np.abs(traces - 1.0)))
        if drift > TRACE_DRIFT_TOL:
            raise InvalidStateError(f"trace drift {drift:.3e} along trajectory")
        asym = float(np.max(np.abs(self.states - np.conj(np.swapaxes(self.states, 1, 2)))))
        if asym > linalg.HERMITIAN_TOL:
            raise InvalidStateError(f"non-Hermitian sample, asymmetry {asym:.3e}")
        if np.any(self.speeds < 0):
            raise InvalidStateError("negative Schatten speed")

    @property
    def tau(self) -> float:
        return float(self.times[-1])

    @property
    def n_samples(self) -> int:
        return len(self.times)

    def state(self, i: int) -> DensityMatrix:
        return DensityMatrix(self.states[i])

    @property
    def initial_state(self) -> DensityMatrix:
        return self.state(0)

    @property
    def final_state(self) -> DensityMatrix:
        return self.state(-1)


def _batch_hermitian_trace_norm(stack: np.ndarray) -> np.ndarray:
    """||X||_1 for a stack of Hermitian matrices via eigenvalues."""
    return np.abs(np.linalg.eigvalsh(stack)).sum(axis=-1)


def _batch_kmin(stack: np.ndarray) -> np.ndarray:
    vals = np.linalg.eigvalsh(stack)
    if float(vals.min()) < -1e-10:
        raise InvalidStateError(f"sample eigenvalue {vals.min():.3e} below -1e-10")
    return np.maximum(vals[..., 0], 0.0)


def _time_grid(tau: float, n_steps: int) -> np.ndarray:
    if n_steps < 2:
        raise InvalidParamsError(f"need at least 2 samples, got {n_steps}")
    if tau <= 0:
        raise InvalidParamsError(f"horizon must be positive, got {tau}")
    return np.linspace(0.0, tau, n_steps)


def evolve_unitary(
    h: HamiltonianModel, rho0: DensityMatrix, tau: float, n_steps: int = 1001
) -> Trajectory:
    """rho_t = U_t rho_0 U_t† with U_t = e^(-i t H).

    The spectrum is invariant along the orbit, and the Schatten speed
    ||-i[H, rho_t]||_1 is time-constant; both are still computed per sample
    as a consistency check."""
    if h.dim != rho0.dim:
        raise DimMismatchError(f"H dim {h.dim} vs state dim {rho0.dim}")
    times = _time_grid(tau, n_steps)
    w, v = linalg.eigh(h.mat)
    phases = np.exp(-1j * np.outer(times, w))
    u = np.einsum("ab,tb,cb->tac", v, phases, v.conj())
    states = np.einsum("tab,bc,tdc->tad", u, rho0.mat, u.conj())
    states = (states + np.conj(np.swapaxes(states, 1, 2))) / 2
    comm = h.mat[None] @ states - states @ h.mat[None]
    dstates = -1j * comm
    dstates = (dstates + np.conj(np.swapaxes(dstates, 1, 2))) / 2
    speeds = _batch_hermitian_trace_norm(dstates)
    kmins = _batch_kmin(states)
    return Trajectory(times=times, states=states, speeds=speeds, kmins=kmins)


def energy_fluctuation(h: HamiltonianModel, rho0: DensityMatrix) -> float:
    """Delta H = sqrt(Tr(rho H^2) - Tr(rho H)^2), clipped at zero."""
    if h.dim != rho0.dim:
        raise DimMismatchError(f"H dim {h.dim} vs state dim {rho0.dim}")
    mean = float(np.real(np.trace(rho0.mat @ h.mat)))
    second = float(np.real(np.trace(rho0.mat @ h.mat @ h.mat)))
    return float(np.sqrt(max(second - mean * mean, 0.0)))


def coherence_measure(h: HamiltonianModel, rho0: DensityMatrix) -> float:
    """-(1/4) Tr([rho_0, H]^2); zero iff rho_0 commutes with H."""
    if h.dim != rho0.dim:
        raise DimMismatchError(f"H dim {h.dim} vs state dim {rho0.dim}")
    comm = rho0.mat @ h.mat - h.mat @ rho0.mat
    return max(float(np.real(-0.25 * np.trace(comm @ comm))), 0.0)


def _check_completeness(K: np.ndarray) -> None:
    dim = K.shape[-1]
    gram = np.einsum("tlji,tljk->tik", K.conj(), K)
    dev = float(np.max(np.abs(gram - np.eye(dim))))
    if dev > COMPLETENESS_TOL:
        raise CompletenessViolationError(
            f"sum K†K deviates from identity by {dev:.3e}"
        )


def kraus_stacks(
    fam: KrausFamily, times: np.ndarray, fd_step: float | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Validated (K, dK) stacks for the sampled times."""
    K, dK = fam.stacks(np.asarray(times, dtype=float), fd_step=fd_step)
    _check_completeness(K)
    return K, dK


def apply_channel(fam: KrausFamily, rho0: DensityMatrix, t: float) -> DensityMatrix:
    """Single-time channel output sum_l K_l(t) rho_0 K_l(t)†."""
    if fam.dim != rho0.dim:
        raise DimMismatchError(f"channel dim {fam.dim} vs state dim {rho0.dim}")
    K = np.stack(fam.operators(t))
    out = np.einsum("lij,jk,lmk->im", K, rho0.mat, K.conj())
    return DensityMatrix(out)


def evolve_kraus(
    fam: KrausFamily, rho0: DensityMatrix, tau: float, n_steps: int = 1001
) -> Trajectory:
    """Trajectory of rho_t = sum_l K_l(t) rho_0 K_l(t)† with the analytic
    derivative sum_l (dK_l rho_0 K_l† + K_l rho_0 dK_l†).

    States come from the exact-time operators; derivative products use the
    channel's consistent (possibly regularized) pair."""
    if fam.dim != rho0.dim:
        raise DimMismatchError(f"channel dim {fam.dim} vs state dim {rho0.dim}")
    times = _time_grid(tau, n_steps)
    K_exact = fam.op_stacks(times)
    _check_completeness(K_exact)
    states = np.einsum("tlij,jk,tlmk->tim", K_exact, rho0.mat, K_exact.conj())
    states = (states + np.conj(np.swapaxes(states, 1, 2))) / 2
    Kp, dKp = fam.stacks(times, fd_step=1e-5 * tau)
    half = np.einsum("tlij,jk,tlmk->tim", dKp, rho0.mat, Kp.conj())
    dstates = half + np.conj(np.swapaxes(half, 1, 2))
    speeds = _batch_hermitian_trace_norm(dstates)
    kmins = _batch_kmin(states)
    return Trajectory(times=times, states=states, speeds=speeds, kmins=kmins)


def kraus_speed_term_stacks(
    fam: KrausFamily, rho0: DensityMatrix, times: np.ndarray, fd_step: float | None = None
) -> np.ndarray:
    """Per-operator norms ||K_l rho_0 dK_l†/dt||_1, shape (n_times, n_ops)."""
    if fam.dim != rho0.dim:
        raise DimMismatchError(f"channel dim {fam.dim} vs state dim {rho0.dim}")
    K, dK = kraus_stacks(fam, times, fd_step=fd_step)
    prods = np.einsum("tlij,jk,tlmk->tlim", K, rho0.mat, dK.conj())
    return np.linalg.svd(prods, compute_uv=False).sum(axis=-1)


def kraus_speed_terms(fam: KrausFamily, rho0: DensityMatrix, t: float) -> np.ndarray:
    """Per-operator norms at a single time."""
    return kraus_speed_term_stacks(fam, rho0, np.array([float(t)]))[0]
