"""Distance-type degrees of non-Gaussianity for one-mode states.

Three measures are computed against the thermal reference state sharing the
input's mean occupancy: a Hilbert-Schmidt distance ratio, a relative-entropy
difference, and a Bures (fidelity) distance. Fock-diagonal mixtures get the
general series paths plus closed forms for number states and photon-added
thermal states; pure states get the entropic measure through their
covariance determinant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateError, DomainError, UnsupportedError
from .specfun import DEFAULT_CONTROL, SeriesControl, legendre_p
from .states import (
    CustomDiagonal,
    Fock,
    PhotonAddedThermal,
    PhotonNumberDistribution,
    PureFock,
    StateSpec,
    ThermalReference,
    as_pats_params,
    generating_function,
    generating_function_series,
    is_gaussian_spec,
    moments_from_pure,
    photon_number_distribution,
    purity_series,
    reference_thermal,
    x_from_nbar,
)

__all__ = [
    "MeasureTriple",
    "MEASURE_KEYS",
    "delta_f_diag",
    "delta_re_diag",
    "delta_hs_diag",
    "delta_hs_pats_closed",
    "delta_f_fock",
    "delta_hs_fock",
    "delta_re_fock",
    "delta_re_pure",
    "cross_tail_bound",
    "entropy_tail_bound",
    "measure_all",
]

MEASURE_KEYS = ("hs", "re", "fid")


@dataclass(frozen=True)
class MeasureTriple:
    """The three non-Gaussianity degrees with per-component error bounds.

    A ``None`` value marks a component that is not computable for the given
    state family (general pure states support only the entropic measure).
    """

    delta_hs: float | None
    delta_re: float | None
    delta_f: float | None
    err_hs: float | None = 0.0
    err_re: float | None = 0.0
    err_f: float | None = 0.0

    def value(self, key: str) -> float | None:
        return {"hs": self.delta_hs, "re": self.delta_re, "fid": self.delta_f}[key]

    def err(self, key: str) -> float | None:
        return {"hs": self.err_hs, "re": self.err_re, "fid": self.err_f}[key]


def cross_tail_bound(d: PhotonNumberDistribution, ref: ThermalReference) -> float:
    """Cauchy-Schwarz bound on the truncated tail of sums mixing p_l and s_l.

    sum_{l>L} f(p_l, s_l) with f in {sqrt(p s), p s} is bounded by
    sqrt(tail_p * tail_s), where the reference tail sigma^(L+1) is exactly
    geometric.
    """
    return math.sqrt(d.tail_mass * ref.tail_mass(len(d.probs)))


def entropy_tail_bound(d: PhotonNumberDistribution) -> float:
    """Certified bound on the truncated tail of sum_l p_l ln p_l.

    For PATS-form sources with x > 0 the step ratio is sandwiched between x
    and r = x (L+2) / (L+2-m) < 1, giving the geometric majorant
    p_l <= p_(L+1) r^k and the minorant p_l >= p_(L+1) x^k for l = L+1+k;
    the tail is then at most p_(L+1) [A / (1-r) + B r / (1-r)^2] with
    A = -ln p_(L+1) and B = -ln x. Finite-support sources have no tail.
    """
    params = as_pats_params(d.source) if d.source is not None else None
    if params is None or d.tail_mass == 0.0:
        return 0.0
    m, nbar = params
    x = x_from_nbar(nbar)
    if x == 0.0:
        return 0.0
    last = len(d.probs) - 1
    p_next = d.probs[-1] * x * (last + 1.0) / (last + 1.0 - m)
    if p_next <= 0.0:
        return 0.0
    r = x * (last + 2.0) / (last + 2.0 - m)
    if r >= 1.0:
        return math.inf
    a = -math.log(p_next)
    b = -math.log(x)
    return p_next * (a / (1.0 - r) + b * r / (1.0 - r) ** 2)


def _plogp(probs: np.ndarray) -> float:
    """sum_l p_l ln p_l with the 0 ln 0 = 0 convention."""
    positive = probs[probs > 0.0]
    return math.fsum(positive * np.log(positive))


def delta_f_diag(d: PhotonNumberDistribution, ref: ThermalReference) -> float:
    """Bures degree 1 - sum_l sqrt(p_l s_l) for a Fock-diagonal state.

    Valid because the state commutes with its thermal reference, so the
    fidelity reduces to (sum sqrt(p_l s_l))^2. Thermal-family sources return
    exactly 0 by algebraic cancellation rather than relying on the series.
    Round-off can leave a tiny negative residue, which is clamped to 0.
    """
    if d.source is not None and is_gaussian_spec(d.source):
        return 0.0
    value = 1.0 - math.fsum(np.sqrt(d.probs * ref.probabilities(len(d.probs))))
    return max(value, 0.0)


def delta_re_diag(d: PhotonNumberDistribution, ref: ThermalReference) -> float:
    """Entropic degree sum_l p_l ln p_l + (N+1) ln(N+1) - N ln N.

    The reference entropy is evaluated in closed form (N = mean occupancy);
    the vacuum reference (N = 0) contributes 0 exactly.
    """
    if d.source is not None and is_gaussian_spec(d.source):
        return 0.0
    value = _plogp(d.probs) + ref.entropy()
    return max(value, 0.0)


def delta_hs_diag(d: PhotonNumberDistribution, ref: ThermalReference) -> float:
    """Hilbert-Schmidt degree of a Fock-diagonal state.

    Evaluates (1/2) [1 + (1/(2N+1) - 2 G(sigma)/(N+1)) / sum_l p_l^2],
    taking the generating function G in closed form for thermal, Fock, and
    PATS sources and as the truncated series otherwise.
    """
    if d.source is not None and is_gaussian_spec(d.source):
        return 0.0
    p2 = purity_series(d)
    if p2 == 0.0:
        raise DegenerateError("state purity underflowed to zero")
    sigma = ref.sigma
    if d.source is not None and as_pats_params(d.source) is not None:
        gen = generating_function(d.source, sigma)
    else:
        gen = generating_function_series(d, sigma)
    numerator = ref.purity() - 2.0 * gen / (ref.mean_n + 1.0)
    return max(0.5 * (1.0 + numerator / p2), 0.0)


def delta_hs_pats_closed(m: int, nbar: float) -> float:
    """Compact closed form of the Hilbert-Schmidt degree for a PATS.

    1/2 + ((1+x)/(1-x))^(m+1) / P_m((1+x^2)/(1-x^2))
        * [1/(4N+2) - N^m / (N + nbar + 1)^(m+1)]
    with N = nbar (m+1) + m, so m = 0 gives 0 for every nbar.
    """
    if m < 0:
        raise DomainError(f"number of added photons must be >= 0, got {m}")
    x = x_from_nbar(nbar)
    mean = nbar * (m + 1.0) + m
    argument = (1.0 + x * x) / (1.0 - x * x)
    prefactor = ((1.0 + x) / (1.0 - x)) ** (m + 1) / legendre_p(m, argument)
    bracket = 1.0 / (4.0 * mean + 2.0) - mean ** m / (mean + nbar + 1.0) ** (m + 1)
    return max(0.5 + prefactor * bracket, 0.0)


def delta_f_fock(m: int) -> float:
    """Bures degree of |m>: 1 - sqrt(m^m / (m+1)^(m+1)); 0 for the vacuum."""
    if m < 0:
        raise DomainError(f"Fock photon number must be >= 0, got {m}")
    if m == 0:
        return 0.0
    return 1.0 - math.sqrt(m ** m / (m + 1) ** (m + 1))


def delta_hs_fock(m: int) -> float:
    """Hilbert-Schmidt degree of |m>: (m+1)/(2m+1) - m^m / (m+1)^(m+1)."""
    if m < 0:
        raise DomainError(f"Fock photon number must be >= 0, got {m}")
    if m == 0:
        return 0.0
    return (m + 1) / (2 * m + 1) - m ** m / (m + 1) ** (m + 1)


def delta_re_fock(m: int) -> float:
    """Entropic degree of |m>: (m+1) ln(m+1) - m ln m; 0 for the vacuum."""
    if m < 0:
        raise DomainError(f"Fock photon number must be >= 0, got {m}")
    if m == 0:
        return 0.0
    return (m + 1.0) * math.log(m + 1.0) - m * math.log(m)


def delta_re_pure(delta: float) -> float:
    """Entropic degree of a pure state from its covariance determinant.

    (sqrt(D) + 1/2) ln(sqrt(D) + 1/2) - (sqrt(D) - 1/2) ln(sqrt(D) - 1/2),
    returning 0 exactly at the minimum-uncertainty value D = 1/4. Values a
    hair below 1/4 (moment round-off) are clamped; anything lower is
    rejected as unphysical.
    """
    if delta < 0.25 - 1e-12:
        raise DomainError(
            f"covariance determinant must be >= 1/4 for a physical state, got {delta}"
        )
    g = math.sqrt(max(delta, 0.25))
    low = g - 0.5
    term_low = low * math.log(low) if low > 0.0 else 0.0
    return (g + 0.5) * math.log(g + 0.5) - term_low


def _requested(measures) -> frozenset[str]:
    keys = frozenset(measures) if measures is not None else frozenset(MEASURE_KEYS)
    unknown = keys - frozenset(MEASURE_KEYS)
    if unknown:
        raise DomainError(f"unknown measure keys: {sorted(unknown)}")
    return keys


def measure_all(
    spec: StateSpec,
    ctl: SeriesControl = DEFAULT_CONTROL,
    measures=None,
) -> MeasureTriple:
    """All supported non-Gaussianity degrees of a state, with error bounds.

    Dispatches to closed forms where they exist (Fock states; the
    Hilbert-Schmidt degree of a PATS) and to the diagonal series paths
    otherwise. ``measures`` restricts the computation to a subset of
    {"hs", "re", "fid"}; explicitly requesting a component the family does
    not support raises UnsupportedError.
    """
    keys = _requested(measures)

    if isinstance(spec, PureFock):
        if measures is not None and keys != {"re"}:
            raise UnsupportedError(
                "general pure states support only the entropic measure; "
                "delta_hs and delta_f need Fock matrix elements of the "
                "reference Gaussian, which are out of scope"
            )
        moments = moments_from_pure(np.asarray(spec.coeffs, dtype=complex))
        re = delta_re_pure(moments.delta) if "re" in keys else None
        return MeasureTriple(
            delta_hs=None, delta_re=re, delta_f=None,
            err_hs=None, err_re=0.0 if re is not None else None, err_f=None,
        )

    if is_gaussian_spec(spec):
        return MeasureTriple(
            delta_hs=0.0 if "hs" in keys else None,
            delta_re=0.0 if "re" in keys else None,
            delta_f=0.0 if "fid" in keys else None,
        )

    if isinstance(spec, Fock):
        return MeasureTriple(
            delta_hs=delta_hs_fock(spec.m) if "hs" in keys else None,
            delta_re=delta_re_fock(spec.m) if "re" in keys else None,
            delta_f=delta_f_fock(spec.m) if "fid" in keys else None,
        )

    if isinstance(spec, PhotonAddedThermal) and spec.nbar == 0.0:
        return measure_all(Fock(spec.m), ctl, measures)

    if isinstance(spec, (PhotonAddedThermal, CustomDiagonal)):
        d = photon_number_distribution(spec, ctl)
        ref = reference_thermal(d)
        hs = re = f = err_hs = err_re = err_f = None
        if "hs" in keys:
            if isinstance(spec, PhotonAddedThermal):
                hs = delta_hs_pats_closed(spec.m, spec.nbar)
                err_hs = 0.0
            else:
                hs = delta_hs_diag(d, ref)
                err_hs = cross_tail_bound(d, ref)
        if "re" in keys:
            re = delta_re_diag(d, ref)
            err_re = entropy_tail_bound(d)
        if "fid" in keys:
            f = delta_f_diag(d, ref)
            err_f = cross_tail_bound(d, ref)
        return MeasureTriple(
            delta_hs=hs, delta_re=re, delta_f=f,
            err_hs=err_hs, err_re=err_re, err_f=err_f,
        )

    raise UnsupportedError(f"unsupported state family: {type(spec).__name__}")
