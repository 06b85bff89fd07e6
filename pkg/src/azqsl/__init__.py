"""Alpha-z Renyi relative entropies, their dynamical upper bounds, and the
entropic quantum speed limits they induce for unitary and Kraus-channel
dynamics, with closed-form single- and two-qubit cross-checks."""

from . import cli, dynamics, entropy, linalg, oracles, qsl, states
from .dynamics import (
    AmplitudeDampingParams,
    DepolarizingParams,
    HamiltonianModel,
    KrausFamily,
    Trajectory,
    amplitude_damping_family,
    apply_channel,
    coherence_measure,
    depolarizing_family,
    energy_fluctuation,
    evolve_kraus,
    evolve_unitary,
    kraus_speed_terms,
)
from .entropy import (
    EntropyParams,
    fidelity,
    relative_purity,
    renyi_az,
    renyi_az_symmetrized,
    special_case,
)
from .qsl import (
    BoundReport,
    QSLReport,
    h_func,
    integrate_bounds,
    normalize_series,
    phi_func,
    qsl_general,
    qsl_nonunitary,
    qsl_unitary,
)
from .states import (
    BlochVector,
    DensityMatrix,
    GHZMixedParams,
    bloch_state,
    ghz_mixed,
    load_state,
    save_state,
    support_contained,
)

__version__ = "0.1.0"

__all__ = [
    "AmplitudeDampingParams",
    "BlochVector",
    "BoundReport",
    "DensityMatrix",
    "DepolarizingParams",
    "EntropyParams",
    "GHZMixedParams",
    "HamiltonianModel",
    "KrausFamily",
    "QSLReport",
    "Trajectory",
    "amplitude_damping_family",
    "apply_channel",
    "bloch_state",
    "cli",
    "coherence_measure",
    "depolarizing_family",
    "dynamics",
    "energy_fluctuation",
    "entropy",
    "evolve_kraus",
    "evolve_unitary",
    "fidelity",
    "ghz_mixed",
    "h_func",
    "integrate_bounds",
    "kraus_speed_terms",
    "linalg",
    "load_state",
    "normalize_series",
    "oracles",
    "phi_func",
    "qsl",
    "qsl_general",
    "qsl_nonunitary",
    "qsl_unitary",
    "relative_purity",
    "renyi_az",
    "renyi_az_symmetrized",
    "save_state",
    "special_case",
    "states",
    "support_contained",
]
