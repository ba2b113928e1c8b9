"""State families, photon-number distributions, and their thermal references.

Supported families: thermal states, Fock states |m>, M-photon-added thermal
states (PATS), user-supplied Fock-diagonal mixtures, and pure states given
by Fock coefficients. Distributions are truncated with certified tail
bounds so every downstream series sum carries a defensible error estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ConvergenceError, DomainError, NormalizationError, UnsupportedError
from .specfun import DEFAULT_CONTROL, SeriesControl, legendre_p

__all__ = [
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
    "generating_function_series",
    "purity_closed",
    "purity_series",
    "hs_overlap",
    "hs_overlap_pats_closed",
    "moments_from_pure",
]


def x_from_nbar(nbar: float) -> float:
    """Thermal ratio x = nbar / (nbar + 1), in [0, 1) for finite nbar >= 0."""
    if nbar < 0.0:
        raise DomainError(f"mean thermal occupancy must be >= 0, got {nbar}")
    return nbar / (nbar + 1.0)


def nbar_from_x(x: float) -> float:
    """Inverse of x_from_nbar; rejects x outside [0, 1)."""
    if not 0.0 <= x < 1.0:
        raise DomainError(f"thermal ratio x must lie in [0, 1), got {x}")
    return x / (1.0 - x)


@dataclass(frozen=True)
class Thermal:
    """Thermal state with mean photon number nbar."""

    nbar: float

    def __post_init__(self) -> None:
        if self.nbar < 0.0:
            raise DomainError(f"thermal nbar must be >= 0, got {self.nbar}")


@dataclass(frozen=True)
class Fock:
    """Number state |m>."""

    m: int

    def __post_init__(self) -> None:
        if self.m < 0:
            raise DomainError(f"Fock photon number must be >= 0, got {self.m}")


@dataclass(frozen=True)
class PhotonAddedThermal:
    """Thermal state with m photons added (PATS); m = 0 is the thermal state."""

    m: int
    nbar: float

    def __post_init__(self) -> None:
        if self.m < 0:
            raise DomainError(f"number of added photons must be >= 0, got {self.m}")
        if self.nbar < 0.0:
            raise DomainError(f"PATS nbar must be >= 0, got {self.nbar}")


@dataclass(frozen=True)
class CustomDiagonal:
    """Fock-diagonal mixture given by an explicit probability vector."""

    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.probs) == 0:
            raise NormalizationError("custom diagonal state needs at least one probability")
        if any(p < 0.0 for p in self.probs):
            raise NormalizationError("custom diagonal probabilities must be nonnegative")
        total = math.fsum(self.probs)
        if abs(total - 1.0) > 1e-12:
            raise NormalizationError(
                f"custom diagonal probabilities must sum to 1 within 1e-12, got {total!r}"
            )


@dataclass(frozen=True)
class PureFock:
    """Pure state sum_l c_l |l> given by its Fock coefficients."""

    coeffs: tuple[complex, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) == 0:
            raise NormalizationError("pure state needs at least one coefficient")
        norm = math.fsum(abs(c) ** 2 for c in self.coeffs)
        if abs(norm - 1.0) > 1e-12:
            raise NormalizationError(
                f"pure-state coefficients must be unit norm within 1e-12, got |c|^2={norm!r}"
            )


StateSpec = Union[Thermal, Fock, PhotonAddedThermal, CustomDiagonal, PureFock]


def as_pats_params(spec: StateSpec) -> tuple[int, float] | None:
    """(m, nbar) when the family has PATS form (thermal/Fock/PATS), else None."""
    if isinstance(spec, Thermal):
        return 0, spec.nbar
    if isinstance(spec, Fock):
        return spec.m, 0.0
    if isinstance(spec, PhotonAddedThermal):
        return spec.m, spec.nbar
    return None


def is_gaussian_spec(spec: StateSpec) -> bool:
    """True when the family is analytically a thermal (hence Gaussian) state.

    PATS with m = 0 reduces to the thermal state; Fock m = 0 is the vacuum.
    """
    params = as_pats_params(spec)
    return params is not None and params[0] == 0


@dataclass(frozen=True, eq=False)
class PhotonNumberDistribution:
    """Truncated photon-number probability vector with a certified tail bound.

    ``probs[l]`` is the weight of |l><l| for l = 0..L; ``tail_mass`` bounds
    the probability discarded by the truncation and never exceeds the
    tolerance the distribution was built with.
    """

    probs: np.ndarray
    tail_mass: float
    source: StateSpec | None = None

    def __len__(self) -> int:
        return len(self.probs)


@dataclass(frozen=True)
class ThermalReference:
    """Gaussian (thermal) reference state, fixed by its mean occupancy."""

    mean_n: float

    def __post_init__(self) -> None:
        if self.mean_n < 0.0:
            raise DomainError(f"reference mean occupancy must be >= 0, got {self.mean_n}")

    @property
    def sigma(self) -> float:
        """Geometric ratio of the photon-number law, mean_n / (mean_n + 1)."""
        return self.mean_n / (self.mean_n + 1.0)

    def probabilities(self, count: int) -> np.ndarray:
        """First ``count`` photon-number probabilities sigma^l / (mean_n + 1).

        Uses the 0^0 = 1 convention so the vacuum reference has s_0 = 1.
        """
        ls = np.arange(count)
        return self.sigma ** ls / (self.mean_n + 1.0)

    def purity(self) -> float:
        """Tr rho_G^2 = 1 / (2 mean_n + 1)."""
        return 1.0 / (2.0 * self.mean_n + 1.0)

    def entropy(self) -> float:
        """Von Neumann entropy (mean+1) ln(mean+1) - mean ln(mean); 0 for vacuum."""
        n = self.mean_n
        if n == 0.0:
            return 0.0
        return (n + 1.0) * math.log(n + 1.0) - n * math.log(n)

    def tail_mass(self, count: int) -> float:
        """Exact probability mass beyond the first ``count`` terms: sigma^count."""
        return self.sigma ** count if count > 0 else 1.0


@dataclass(frozen=True)
class CovarianceSummary:
    """First and second moments of a one-mode state plus det of its covariance.

    Quadratures are x = (a + a*)/sqrt(2), p = (a - a*)/(i sqrt(2)), so the
    vacuum covariance matrix is (1/2) * identity and delta >= 1/4 for any
    physical state.
    """

    mean_alpha: complex
    mean_n: float
    mean_a2: complex
    delta: float


def _pats_block(m: int, x: float, last: int) -> np.ndarray:
    """p_l for l = m..last via the stable ratio recurrence (no factorials)."""
    p_m = (1.0 - x) ** (m + 1)
    if last == m:
        return np.array([p_m])
    ls = np.arange(m, last, dtype=float)
    factors = x * (ls + 1.0) / (ls + 1.0 - m)
    out = np.empty(last - m + 1)
    out[0] = p_m
    out[1:] = p_m * np.cumprod(factors)
    return out


def _pats_tail_bounds(m: int, x: float, p_last: float, last: int) -> tuple[float, float]:
    """Certified bounds on sum_{l > last} p_l and sum_{l > last} l p_l.

    The step ratio p_{l+1}/p_l = x (l+1) / (l+1-m) decreases toward x, so
    once it falls below 1 the tail is dominated by a geometric series:
    p_(last+1+k) <= p_(last+1) r^k. Returns (inf, inf) before that point.
    """
    r_next = x * (last + 2.0) / (last + 2.0 - m)
    if r_next >= 1.0:
        return math.inf, math.inf
    p_next = p_last * x * (last + 1.0) / (last + 1.0 - m)
    mass = p_next / (1.0 - r_next)
    weighted = p_next * ((last + 1.0) / (1.0 - r_next) + r_next / (1.0 - r_next) ** 2)
    return mass, weighted


def pats_probabilities(
    m: int,
    nbar: float,
    ctl: SeriesControl = DEFAULT_CONTROL,
    *,
    min_len: int | None = None,
    source: StateSpec | None = None,
) -> PhotonNumberDistribution:
    """Photon-number distribution of the m-photon-added thermal state.

    p_l = binom(l, m) (1-x)^(m+1) x^(l-m) for l >= m with x = nbar/(nbar+1),
    built by the multiplicative recurrence p_{l+1} = p_l x (l+1)/(l+1-m).
    The truncation length L is certified three ways: the discarded
    probability and the discarded mean-occupancy weight sum_{l>L} l p_l are
    both below ``ctl.tol``, and sigma^(L+1) < ctl.tol for the reference
    ratio sigma, so cross sums against the reference state inherit a
    Cauchy-Schwarz tail bound of at most ctl.tol. ``min_len`` forces a
    longer truncation (used by the tightened verification path).
    """
    if m < 0:
        raise DomainError(f"number of added photons must be >= 0, got {m}")
    if nbar < 0.0:
        raise DomainError(f"nbar must be >= 0, got {nbar}")
    if source is None:
        source = PhotonAddedThermal(m, nbar)

    x = x_from_nbar(nbar)
    if x == 0.0:
        # Fock limit: the distribution collapses onto |m>.
        length = max(m + 1, min_len or 0)
        probs = np.zeros(length)
        probs[m] = 1.0
        return PhotonNumberDistribution(probs=probs, tail_mass=0.0, source=source)

    mean = nbar * (m + 1.0) + m
    sigma = mean / (mean + 1.0)
    last_sigma = max(m, math.ceil(math.log(ctl.tol) / math.log(sigma)) - 1)
    while sigma ** (last_sigma + 1) >= ctl.tol:
        last_sigma += 1

    last = max(last_sigma, m + 16, (min_len or 1) - 1)
    if last + 1 > ctl.max_terms:
        raise ConvergenceError(
            f"PATS(m={m}, nbar={nbar}) needs more than max_terms={ctl.max_terms} "
            f"terms at tol={ctl.tol}"
        )
    block = _pats_block(m, x, last)
    # The weighted bound dominates the mass bound, so requiring it below tol
    # certifies both the discarded probability and the mean-occupancy tail.
    while _pats_tail_bounds(m, x, block[-1], last)[1] >= ctl.tol:
        last = min(max(last + 16, int(1.5 * last)), ctl.max_terms - 1)
        block = _pats_block(m, x, last)
        if last >= ctl.max_terms - 1 and _pats_tail_bounds(m, x, block[-1], last)[1] >= ctl.tol:
            raise ConvergenceError(
                f"PATS(m={m}, nbar={nbar}) tail bound did not reach tol={ctl.tol} "
                f"within max_terms={ctl.max_terms}"
            )

    probs = np.concatenate([np.zeros(m), block])
    total = math.fsum(probs)
    if total > 1.0:
        # Accumulated round-off nudged the finite sum above 1; rescale.
        probs = probs / total
        tail = 0.0
    else:
        tail = 1.0 - total
    return PhotonNumberDistribution(probs=probs, tail_mass=tail, source=source)


def photon_number_distribution(
    spec: StateSpec,
    ctl: SeriesControl = DEFAULT_CONTROL,
    *,
    min_len: int | None = None,
) -> PhotonNumberDistribution:
    """Build the truncated photon-number distribution for a state family."""
    params = as_pats_params(spec)
    if params is not None:
        return pats_probabilities(params[0], params[1], ctl, min_len=min_len, source=spec)
    if isinstance(spec, CustomDiagonal):
        probs = np.asarray(spec.probs, dtype=float)
        if min_len is not None and len(probs) < min_len:
            probs = np.concatenate([probs, np.zeros(min_len - len(probs))])
        tail = max(0.0, 1.0 - math.fsum(probs))
        return PhotonNumberDistribution(probs=probs, tail_mass=tail, source=spec)
    raise UnsupportedError(
        f"{type(spec).__name__} is not Fock-diagonal; no photon-number "
        "distribution is defined for it here"
    )


def mean_occupancy(d: PhotonNumberDistribution) -> float:
    """Mean photon number sum_l l p_l of a truncated distribution.

    The truncation rule keeps the weighted tail far below the construction
    tolerance, so the plain series sum is used.
    """
    return math.fsum(np.arange(len(d.probs)) * d.probs)


def reference_thermal(d: PhotonNumberDistribution) -> ThermalReference:
    """Thermal reference state sharing the distribution's mean occupancy."""
    return ThermalReference(mean_n=mean_occupancy(d))


def generating_function(spec: StateSpec, y: float) -> float:
    """Closed-form generating function sum_l p_l y^l for PATS-form families.

    Equals y^m ((1-x) / (1-x y))^(m+1); the m = 0 case is the thermal law
    and y = 1 returns 1 by normalization.
    """
    params = as_pats_params(spec)
    if params is None:
        raise UnsupportedError(
            f"closed generating function is only defined for thermal, Fock and "
            f"PATS families, not {type(spec).__name__}"
        )
    m, nbar = params
    x = x_from_nbar(nbar)
    if not 0.0 <= y <= 1.0:
        raise DomainError(f"generating function argument must lie in [0, 1], got {y}")
    if x * y >= 1.0:
        raise DomainError(f"generating function requires x*y < 1, got {x * y}")
    return y ** m * ((1.0 - x) / (1.0 - x * y)) ** (m + 1)


def generating_function_series(d: PhotonNumberDistribution, y: float) -> float:
    """Truncated series sum_l p_l y^l; the brute-force counterpart."""
    if not 0.0 <= y <= 1.0:
        raise DomainError(f"generating function argument must lie in [0, 1], got {y}")
    return math.fsum(d.probs * y ** np.arange(len(d.probs)))


def purity_closed(m: int, nbar: float) -> float:
    """PATS purity ((1-x)/(1+x))^(m+1) P_m((1+x^2)/(1-x^2)); lies in (0, 1]."""
    if m < 0:
        raise DomainError(f"number of added photons must be >= 0, got {m}")
    x = x_from_nbar(nbar)
    argument = (1.0 + x * x) / (1.0 - x * x)
    return ((1.0 - x) / (1.0 + x)) ** (m + 1) * legendre_p(m, argument)


def purity_series(d: PhotonNumberDistribution) -> float:
    """Brute-force purity sum_l p_l^2.

    The truncated remainder is at most tail_mass^2 (Cauchy-Schwarz), so this
    serves as an independent check of the closed form.
    """
    return math.fsum(d.probs * d.probs)


def hs_overlap(d: PhotonNumberDistribution, ref: ThermalReference) -> float:
    """Hilbert-Schmidt scalar product sum_l p_l s_l with its reference."""
    return math.fsum(d.probs * ref.probabilities(len(d.probs)))


def hs_overlap_pats_closed(m: int, nbar: float) -> float:
    """Closed-form PATS overlap mean^m / (mean + nbar + 1)^(m+1).

    Uses the analytic mean occupancy nbar (m+1) + m; the m = 0 (thermal)
    case needs the 0^0 = 1 convention at nbar = 0.
    """
    if m < 0:
        raise DomainError(f"number of added photons must be >= 0, got {m}")
    if nbar < 0.0:
        raise DomainError(f"nbar must be >= 0, got {nbar}")
    mean = nbar * (m + 1.0) + m
    return mean ** m / (mean + nbar + 1.0) ** (m + 1)


def moments_from_pure(coeffs) -> CovarianceSummary:
    """Ladder-operator moments and covariance determinant of a pure state.

    <a>   = sum_l sqrt(l+1) conj(c_l) c_{l+1}
    <a^2> = sum_l sqrt((l+1)(l+2)) conj(c_l) c_{l+2}
    <n>   = sum_l l |c_l|^2
    followed by the centered covariance matrix in the convention where the
    vacuum has V = (1/2) identity, and delta = det V.
    """
    c = np.asarray(coeffs, dtype=complex)
    if c.ndim != 1 or len(c) == 0:
        raise NormalizationError("coefficients must be a nonempty vector")
    norm = math.fsum(np.abs(c) ** 2)
    if abs(norm - 1.0) > 1e-9:
        raise NormalizationError(
            f"pure-state coefficients must be unit norm, got |c|^2 = {norm!r}"
        )
    ls = np.arange(len(c), dtype=float)
    mean_n = float(np.sum(ls * np.abs(c) ** 2))
    mean_alpha = complex(np.sum(np.sqrt(ls[:-1] + 1.0) * np.conj(c[:-1]) * c[1:])) if len(c) > 1 else 0j
    if len(c) > 2:
        mean_a2 = complex(
            np.sum(np.sqrt((ls[:-2] + 1.0) * (ls[:-2] + 2.0)) * np.conj(c[:-2]) * c[2:])
        )
    else:
        mean_a2 = 0j

    mean_x = math.sqrt(2.0) * mean_alpha.real
    mean_p = math.sqrt(2.0) * mean_alpha.imag
    v_xx = mean_a2.real + mean_n + 0.5 - mean_x * mean_x
    v_pp = -mean_a2.real + mean_n + 0.5 - mean_p * mean_p
    v_xp = mean_a2.imag - mean_x * mean_p
    delta = v_xx * v_pp - v_xp * v_xp
    return CovarianceSummary(mean_alpha=mean_alpha, mean_n=mean_n, mean_a2=mean_a2, delta=delta)
