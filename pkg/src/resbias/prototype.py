"""Closed-form trapezoid bias of f(x) = sin^2(2 pi k x).

With ``m = 2k`` the integrand is ``1/2 - cos(2 pi m x)/2``, so the exact
integral, the P-point average and their difference all reduce to the
correction term ``C(m) = sin(2 pi m)/(4 pi m)`` and the resonance value
``chi_P(m/P)``.  ``m`` may be any positive real.
"""

import math
from dataclasses import dataclass

from resbias._pykernels import sinpi
from resbias.errors import DomainError
from resbias.resonance import chi_real

# (pi m)^2/6 at this m is ~1.6e-17, below the resolution of 0.5
SMALL_M = 1e-8


@dataclass(frozen=True)
class PrototypeParams:
    k: float

    def __post_init__(self):
        if not (self.k > 0) or not math.isfinite(self.k):
            raise DomainError(f"frequency k must be positive and finite, got {self.k!r}")

    @property
    def m(self):
        return 2.0 * self.k

    @classmethod
    def from_m(cls, m):
        return cls(k=m / 2.0)


@dataclass(frozen=True)
class CorrectionTerm:
    m: float
    value: float

    def __float__(self):
        return self.value


def correction_term(m):
    """C(m) = sin(2 pi m) / (4 pi m), with the m -> 0 limit 1/2."""
    m = float(m)
    if m < 0 or not math.isfinite(m):
        raise DomainError(f"m must be a non-negative finite number, got {m!r}")
    if m < SMALL_M:
        return CorrectionTerm(m, 0.5)
    # sinpi reduces exactly, so integer m gives exactly zero
    return CorrectionTerm(m, sinpi(2.0 * m) / (4.0 * math.pi * m))


def _m_of(params):
    if isinstance(params, PrototypeParams):
        return params.m
    return float(params)


def exact_integral_sin2(params):
    return 0.5 - correction_term(_m_of(params)).value


def finite_cosine_sum(P, m):
    """S_P(m) = sum_{j<P} cos(2 pi m j / P), evaluated as P * chi_P(m/P)."""
    return P * chi_real(P, float(m) / P)


def bias_sin2(P, params):
    """Trapezoid bias -chi_P(m/P)/2 + C(m) for sin^2(2 pi k x), m = 2k."""
    if P < 2:
        raise DomainError("the trapezoid context needs P >= 2")
    m = _m_of(params)
    return -0.5 * chi_real(P, m / P) + correction_term(m).value


def classical_bound_sin2(P, params):
    """||f''||/(12 P^2) = pi^2 m^2 / (3 P^2)."""
    m = _m_of(params)
    return math.pi**2 * m * m / (3.0 * P * P)
