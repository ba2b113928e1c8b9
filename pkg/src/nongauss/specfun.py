"""Self-contained special-function kernel.

Pochhammer symbols, the Gauss hypergeometric series 2F1, its Euler-type
linear transformation, and Legendre polynomials evaluated at arguments
>= 1. Everything is plain 64-bit floating point; series carry a certified
stopping rule so every truncation has a geometric tail bound.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConvergenceError, DomainError

__all__ = [
    "SeriesControl",
    "DEFAULT_CONTROL",
    "pochhammer",
    "gauss_2f1",
    "gauss_2f1_via_transform",
    "legendre_p",
]


@dataclass(frozen=True)
class SeriesControl:
    """Summation controls: absolute tail tolerance and a hard term cap."""

    tol: float = 1e-12
    max_terms: int = 100_000

    def __post_init__(self) -> None:
        if not self.tol > 0.0:
            raise DomainError(f"tol must be positive, got {self.tol}")
        if self.max_terms < 1:
            raise DomainError(f"max_terms must be >= 1, got {self.max_terms}")


DEFAULT_CONTROL = SeriesControl()


def pochhammer(a: float, n: int) -> float:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1.

    Computed by iterated multiplication (never log-Gamma) so exact integer
    inputs give exact integer results; overflow is reported through the
    returned value (+inf), not an exception.
    """
    if n < 0:
        raise DomainError(f"pochhammer requires n >= 0, got n={n}")
    out = 1.0
    for k in range(n):
        out *= a + k
    return out


def _termination_index(v: float) -> int | None:
    """-v as an int when v is a non-positive integer (series terminator)."""
    if v <= 0.0 and float(v).is_integer():
        return int(-v)
    return None


def gauss_2f1(
    a: float, b: float, c: float, z: float, ctl: SeriesControl = DEFAULT_CONTROL
) -> float:
    """Gauss hypergeometric sum: sum_n (a)_n (b)_n / (c)_n * z^n / n!.

    When a or b is a non-positive integer the series terminates; the finite
    polynomial is summed exactly and no restriction on z applies. Otherwise
    |z| < 1 is required, and summation stops once the current term drops
    below ``ctl.tol`` in magnitude while the term ratio is below 1, so the
    discarded tail is geometrically bounded by ctl.tol * r / (1 - r).

    Raises DomainError for |z| >= 1 on a non-terminating series, or when c
    is a non-positive integer whose pole is reached before termination;
    ConvergenceError if ``ctl.max_terms`` is exhausted first.
    """
    n_stop_a = _termination_index(a)
    n_stop_b = _termination_index(b)
    stops = [n for n in (n_stop_a, n_stop_b) if n is not None]
    n_stop = min(stops) if stops else None

    c_pole = _termination_index(c)
    if c_pole is not None and (n_stop is None or n_stop > c_pole):
        raise DomainError(
            f"c={c} is a non-positive integer and the series does not "
            "terminate before the (c)_n zero is reached"
        )

    if n_stop is not None:
        term = 1.0
        acc = term
        for n in range(n_stop):
            term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z
            acc += term
        return acc

    if abs(z) >= 1.0:
        raise DomainError(f"gauss_2f1 series requires |z| < 1, got z={z}")

    term = 1.0
    acc = 0.0
    for n in range(ctl.max_terms):
        acc += term
        nxt = term * (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z
        if abs(term) < ctl.tol and abs(nxt) < abs(term):
            return acc
        term = nxt
    raise ConvergenceError(
        f"gauss_2f1({a}, {b}; {c}; {z}) did not meet tol={ctl.tol} "
        f"within {ctl.max_terms} terms"
    )


def gauss_2f1_via_transform(
    a: float, b: float, c: float, z: float, ctl: SeriesControl = DEFAULT_CONTROL
) -> float:
    """Evaluate 2F1(a, b; c; z) as (1-z)^(-b) * 2F1(c-a, b; c; z/(z-1)).

    An independent evaluation route used for cross-checking the direct
    series. Requires z < 1 so the transformed argument stays left of 1 and
    the prefactor base is positive. When c - a is a non-positive integer
    the transformed series is a finite polynomial, valid for any z < 1.
    """
    if z >= 1.0:
        raise DomainError(f"gauss_2f1_via_transform requires z < 1, got z={z}")
    w = 0.0 if z == 0.0 else z / (z - 1.0)
    return (1.0 - z) ** (-b) * gauss_2f1(c - a, b, c, w, ctl)


def legendre_p(m: int, z: float) -> float:
    """Legendre polynomial P_m(z) for z >= 1.

    Uses the upward three-term recurrence
    (n+1) P_{n+1} = (2n+1) z P_n - n P_{n-1}, seeded with P_0 = 1, P_1 = z.
    For z > 1, P_n is the dominant solution of the recurrence, so the
    upward direction is stable there; accuracy below z = 1 is not certified
    by this kernel, hence the domain guard.
    """
    if m < 0:
        raise DomainError(f"legendre_p requires degree m >= 0, got m={m}")
    if z < 1.0:
        raise DomainError(f"legendre_p is validated only for z >= 1, got z={z}")
    if m == 0:
        return 1.0
    p_prev = 1.0
    p = z
    for n in range(1, m):
        p_prev, p = p, ((2.0 * n + 1.0) * z * p - n * p_prev) / (n + 1.0)
    return p
