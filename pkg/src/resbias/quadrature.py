"""Direct P-point trapezoid sums on [0,1) and [0,1)^2, plus named test integrands.

The registry entries are the CLI's function vocabulary:

=============  ==========================  ===================
name           f                           exact integral
=============  ==========================  ===================
sin2(k)        sin^2(2 pi k x)             1/2 - C(2k)
cos2pin(n)     cos(2 pi n x)               0 (1 when n = 0)
expcos         exp(cos(2 pi x))            I_0(1)
prod_cos8pi    cos(8 pi x1) cos(8 pi x2)   0
=============  ==========================  ===================
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from resbias._backend import kernels
from resbias.errors import ContractError, DomainError
from resbias.prototype import PrototypeParams, exact_integral_sin2

# Modified Bessel I_0(1).  Frozen from the Richardson-extrapolated trapezoid
# sum at N = 2**16 and 2**17 (agreement < 1e-13); tests recompute it and
# check against scipy.special.i0.
EXPCOS_INTEGRAL = 1.2660658777520084


@dataclass(frozen=True)
class PeriodicFunction:
    """A 1-periodic integrand.

    ``evaluate`` takes NumPy arrays (one for 1D, two for 2D) and must be
    reentrant.  ``spectrum`` holds the exact Fourier coefficients when the
    series is finite: a ``{k: c_k}`` dict in 1D, ``{(k1, k2): c_k}`` in 2D.
    """

    evaluate: Callable
    label: str
    exact_integral: Optional[float] = None
    dim: int = 1
    spectrum: Optional[dict] = None

    def __call__(self, *xs):
        return self.evaluate(*xs)


def _sin2(k):
    params = PrototypeParams(float(k))
    m = params.m
    spectrum = None
    if m == round(m):
        mi = int(round(m))
        spectrum = {0: 0.5 + 0j, mi: -0.25 + 0j, -mi: -0.25 + 0j}
    return PeriodicFunction(
        evaluate=lambda x: np.sin(2.0 * np.pi * params.k * x) ** 2,
        label=f"sin2(k={params.k!r})",
        exact_integral=exact_integral_sin2(params),
        spectrum=spectrum,
    )


def _cos2pin(n):
    if int(n) != n or n < 0:
        raise DomainError(f"cos2pin needs a non-negative integer n, got {n!r}")
    n = int(n)
    if n == 0:
        spectrum = {0: 1 + 0j}
    else:
        spectrum = {n: 0.5 + 0j, -n: 0.5 + 0j}
    return PeriodicFunction(
        evaluate=lambda x: np.cos(2.0 * np.pi * n * x),
        label=f"cos2pin(n={n})",
        exact_integral=1.0 if n == 0 else 0.0,
        spectrum=spectrum,
    )


def _expcos():
    return PeriodicFunction(
        evaluate=lambda x: np.exp(np.cos(2.0 * np.pi * x)),
        label="expcos",
        exact_integral=EXPCOS_INTEGRAL,
    )


def _prod_cos8pi():
    spectrum = {(a, b): 0.25 + 0j for a in (-4, 4) for b in (-4, 4)}
    return PeriodicFunction(
        evaluate=lambda x1, x2: np.cos(8.0 * np.pi * x1) * np.cos(8.0 * np.pi * x2),
        label="prod_cos8pi",
        exact_integral=0.0,
        dim=2,
        spectrum=spectrum,
    )


REGISTRY = {
    "sin2": _sin2,
    "cos2pin": _cos2pin,
    "expcos": _expcos,
    "prod_cos8pi": _prod_cos8pi,
}


def builtin(name, **params):
    """Build a registry function, e.g. ``builtin("sin2", k=2.3)``."""
    try:
        factory = REGISTRY[name]
    except KeyError:
        raise ContractError(f"unknown function {name!r}; known: {sorted(REGISTRY)}") from None
    return factory(**params)


def _grid(P):
    if int(P) != P or P < 1:
        raise DomainError(f"grid size must be a positive integer, got {P!r}")
    return np.arange(int(P), dtype=np.float64) / P


def trapezoid_1d(f, P):
    """(1/P) sum_{j<P} f(j/P), compensated summation."""
    x = _grid(P)
    vals = np.ascontiguousarray(np.broadcast_to(f(x), x.shape), dtype=np.float64)
    return kernels.neumaier_sum(vals) / P


def trapezoid_2d(f, P):
    """(1/P^2) sum_{j1,j2<P} f(j1/P, j2/P), rows in j1-major order."""
    x = _grid(P)
    x1, x2 = np.meshgrid(x, x, indexing="ij")
    vals = np.ascontiguousarray(np.broadcast_to(f(x1, x2), x1.shape), dtype=np.float64)
    return kernels.neumaier_sum(vals.ravel()) / (P * P)


def trapezoid(f, P):
    return trapezoid_2d(f, P) if f.dim == 2 else trapezoid_1d(f, P)


def direct_bias(f, P):
    """Trapezoid value minus the stored exact integral."""
    if f.exact_integral is None:
        raise ContractError(f"{f.label} carries no exact integral")
    return trapezoid(f, P) - f.exact_integral


def richardson_integral(f, n_coarse=2**16):
    """Trapezoid at n and 2n, Richardson-combined; returns (estimate, |T_2n - T_n|).

    For smooth periodic f both sums already agree to rounding, so the
    combination mostly serves as an agreement check.
    """
    t1 = trapezoid_1d(f, n_coarse)
    t2 = trapezoid_1d(f, 2 * n_coarse)
    return (4.0 * t2 - t1) / 3.0, abs(t2 - t1)

