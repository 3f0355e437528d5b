"""Grid resonance function of the P-point uniform grid.

The complex resonance function is the centroid of the unit phasors
``exp(2 pi i y j)`` for ``j = 0 .. P-1``::

    chi~_P(y) = (1/P) * sum_j exp(2 pi i y j)
              = (1/P) * exp(i pi (P-1) y) * sin(pi P y) / sin(pi y)

and ``chi_P(y)`` is its real part.  The closed form is 0/0 at integer ``y``;
:func:`chi_tilde_closed` switches branch by the distance of ``y`` to the
nearest integer:

* ``<= INTEGER_TOL``: exactly 1 (``Branch.INTEGER_LIMIT``)
* ``<= GUARD_BAND``: direct summation (``Branch.NAIVE_SUM``)
* otherwise the closed form on ``y - round(y)`` (``Branch.CLOSED_FORM``)

The signed reduction ``y - round(y)`` is exact in floating point, so values
just below an integer keep their full relative precision.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from resbias._backend import kernels
from resbias._pykernels import cospi, sinpi
from resbias.errors import DomainError

INTEGER_TOL = 1e-12
GUARD_BAND = 1e-6


class Branch(enum.Enum):
    NAIVE_SUM = "naive_sum"
    CLOSED_FORM = "closed_form"
    INTEGER_LIMIT = "integer_limit"


@dataclass(frozen=True)
class ResonanceValue:
    value: complex
    branch: Branch

    def __complex__(self):
        return complex(self.value)

    @property
    def real(self):
        return self.value.real

    @property
    def imag(self):
        return self.value.imag


@dataclass(frozen=True)
class ArrowsDecomposition:
    """Unit phasors ``exp(2 pi i y j)`` and their centroid."""

    arrows: np.ndarray
    centroid: complex


def _check_grid(P):
    if isinstance(P, bool) or int(P) != P or P < 1:
        raise DomainError(f"grid size must be a positive integer, got {P!r}")
    return int(P)


def _check_freq(y):
    y = float(y)
    if not math.isfinite(y):
        raise DomainError(f"relative frequency must be finite, got {y!r}")
    return y


def _reduce(y):
    r = y - round(y)
    return r, abs(r)


def chi_tilde_naive(P, y):
    """Evaluate chi~_P(y) by summing the P phasors directly."""
    P = _check_grid(P)
    r, _ = _reduce(_check_freq(y))
    return ResonanceValue(complex(kernels.chi_naive(P, r)), Branch.NAIVE_SUM)


def chi_tilde_closed(P, y):
    """Evaluate chi~_P(y) through the sine-ratio closed form.

    Falls back to direct summation in the guard band around integers and
    returns exactly 1 at (numerically) integer ``y``.
    """
    P = _check_grid(P)
    r, d = _reduce(_check_freq(y))
    if P == 1 or d <= INTEGER_TOL:
        return ResonanceValue(1 + 0j, Branch.INTEGER_LIMIT)
    if d <= GUARD_BAND:
        return ResonanceValue(complex(kernels.chi_naive(P, r)), Branch.NAIVE_SUM)
    amp = sinpi(P * r) / (P * sinpi(r))
    ph = (P - 1) * r
    return ResonanceValue(complex(amp * cospi(ph), amp * sinpi(ph)), Branch.CLOSED_FORM)


def chi_tilde(P, y):
    """Complex resonance value as a plain ``complex``."""
    return chi_tilde_closed(P, y).value


def chi_real(P, y):
    """Real resonance function chi_P(y) = Re chi~_P(y)."""
    return chi_tilde_closed(P, y).value.real


def chi_tilde_array(P, ys):
    """Vectorised :func:`chi_tilde` over an array of relative frequencies."""
    P = _check_grid(P)
    ys = np.asarray(ys, dtype=np.float64)
    if not np.all(np.isfinite(ys)):
        raise DomainError("relative frequencies must be finite")
    flat = np.ascontiguousarray(ys.ravel())
    out = kernels.chi_closed_batch(P, flat, INTEGER_TOL, GUARD_BAND)
    return np.asarray(out).reshape(ys.shape)


def chi_taylor_lobe(P, k, eps):
    """Quadratic model of the main lobe: chi_P(k + eps) ~ 1 - pi^2 (P-1)(2P-1) eps^2 / 3.

    A local model only; nothing else in the package evaluates chi through it.
    """
    return 1.0 - math.pi**2 * (P - 1) * (2 * P - 1) * eps * eps / 3.0


def lobe_curvature(P):
    """Second derivative of chi_P at an integer."""
    return -2.0 * math.pi**2 * (P - 1) * (2 * P - 1) / 3.0


def arrows(P, y):
    P = _check_grid(P)
    r, _ = _reduce(_check_freq(y))
    t = r * np.arange(P, dtype=np.float64)
    t -= np.floor(t)
    vecs = np.exp(2j * np.pi * t)
    return ArrowsDecomposition(arrows=vecs, centroid=chi_tilde_naive(P, y).value)


def character_orthogonality_check(P, k):
    """Exact value of chi~_P(k/P) for integer k: 1 if P divides k, else 0."""
    P = _check_grid(P)
    return 1 if int(k) % P == 0 else 0
