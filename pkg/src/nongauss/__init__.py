"""Distance-type non-Gaussianity measures for one-mode bosonic field states.

Provides a small special-function kernel (Pochhammer, Gauss 2F1, Legendre),
photon-number distributions for thermal / Fock / photon-added thermal
states, three non-Gaussianity degrees (Hilbert-Schmidt, relative entropy,
Bures fidelity), and a CLI that sweeps state parameters into plotter-ready
tables and optional rendered figures.
"""

from .errors import (
    ConvergenceError,
    DegenerateError,
    DomainError,
    NormalizationError,
    UnsupportedError,
)
from .measures import (
    MeasureTriple,
    delta_f_diag,
    delta_f_fock,
    delta_hs_diag,
    delta_hs_fock,
    delta_hs_pats_closed,
    delta_re_diag,
    delta_re_fock,
    delta_re_pure,
    measure_all,
)
from .specfun import (
    SeriesControl,
    gauss_2f1,
    gauss_2f1_via_transform,
    legendre_p,
    pochhammer,
)
from .states import (
    CovarianceSummary,
    CustomDiagonal,
    Fock,
    PhotonAddedThermal,
    PhotonNumberDistribution,
    PureFock,
    StateSpec,
    Thermal,
    ThermalReference,
    generating_function,
    hs_overlap,
    mean_occupancy,
    moments_from_pure,
    nbar_from_x,
    pats_probabilities,
    photon_number_distribution,
    purity_closed,
    purity_series,
    reference_thermal,
    x_from_nbar,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "DegenerateError",
    "DomainError",
    "NormalizationError",
    "UnsupportedError",
    "SeriesControl",
    "pochhammer",
    "gauss_2f1",
    "gauss_2f1_via_transform",
    "legendre_p",
    "Thermal",
    "Fock",
    "PhotonAddedThermal",
    "CustomDiagonal",
    "PureFock",
    "StateSpec",
    "PhotonNumberDistribution",
    "ThermalReference",
    "CovarianceSummary",
    "x_from_nbar",
    "nbar_from_x",
    "pats_probabilities",
    "photon_number_distribution",
    "mean_occupancy",
    "reference_thermal",
    "generating_function",
    "purity_closed",
    "purity_series",
    "hs_overlap",
    "moments_from_pure",
    "MeasureTriple",
    "delta_f_diag",
    "delta_re_diag",
    "delta_hs_diag",
    "delta_hs_pats_closed",
    "delta_f_fock",
    "delta_hs_fock",
    "delta_re_fock",
    "delta_re_pure",
    "measure_all",
    "__version__",
]
