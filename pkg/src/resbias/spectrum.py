"""Sparse Fourier spectra and the trapezoid bias computed from them.

Two routes to the same number:

* filter route: ``sum_{k != 0} c_k * chi~_P(k/P)``
  (:func:`bias_rbf_general`), and
* aliasing route: ``sum_{l != 0} c_{lP}`` (:func:`bias_classical_alias`).

For integer ``k`` the filter is the divisibility indicator, so the fast path
uses :func:`~resbias.resonance.character_orthogonality_check`;
``diagnostic=True`` evaluates the resonance function at every mode instead.
"""

import json
import math
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from resbias._backend import kernels
from resbias.errors import ContractError, CoverageWarning, DomainError, UnderflowWarning
from resbias.quadrature import direct_bias
from resbias.resonance import character_orthogonality_check, chi_tilde

HERMITIAN_TOL = 1e-12


def _csum(values):
    values = list(values)
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


@dataclass(frozen=True)
class FourierSpectrum:
    """Finite map ``k -> c_k``.

    ``symmetric_real`` declares ``c_{-k} = conj(c_k)`` (a real integrand);
    it is checked at construction.  ``source_N`` is the sample count of the
    DFT that produced the spectrum, when there was one.
    """

    coefficients: dict = field(default_factory=dict)
    symmetric_real: bool = False
    source_N: Optional[int] = None

    def __post_init__(self):
        coeffs = {int(k): complex(v) for k, v in self.coefficients.items()}
        object.__setattr__(self, "coefficients", coeffs)
        if self.symmetric_real:
            for k, c in coeffs.items():
                partner = coeffs.get(-k, 0j)
                if abs(partner - c.conjugate()) > HERMITIAN_TOL:
                    raise ContractError(
                        f"spectrum declared real but c[{-k}] != conj(c[{k}]): {partner} vs {c}"
                    )

    def __getitem__(self, k):
        return self.coefficients.get(k, 0j)

    def __len__(self):
        return len(self.coefficients)

    @property
    def modes(self):
        return sorted(self.coefficients)

    @property
    def max_mode(self):
        return max((abs(k) for k in self.coefficients), default=0)

    def to_dict(self):
        return {
            "modes": [
                {"k": k, "re": self.coefficients[k].real, "im": self.coefficients[k].imag}
                for k in self.modes
            ],
            "symmetric_real": bool(self.symmetric_real),
            "source_N": self.source_N,
        }

    @classmethod
    def from_dict(cls, data):
        try:
            coeffs = {int(m["k"]): complex(float(m["re"]), float(m["im"])) for m in data["modes"]}
        except (KeyError, TypeError) as exc:
            raise ContractError(f"malformed spectrum document: {exc}") from exc
        source_N = data.get("source_N")
        return cls(
            coeffs,
            symmetric_real=bool(data.get("symmetric_real", False)),
            source_N=None if source_N is None else int(source_N),
        )

    def dumps(self):
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def loads(cls, text):
        return cls.from_dict(json.loads(text))

    def save(self, path):
        with open(path, "w") as fh:
            fh.write(self.dumps() + "\n")

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.loads(fh.read())


def _check_P(P):
    if int(P) != P or P < 2:
        raise DomainError(f"bias formulas need an integer P >= 2, got {P!r}")
    return int(P)


def bias_rbf_general(spec, P, diagnostic=False):
    """Bias as the filtered spectrum ``sum_{k != 0} c_k chi~_P(k/P)``."""
    P = _check_P(P)
    if diagnostic:
        terms = (spec[k] * chi_tilde(P, k / P) for k in spec.modes if k != 0)
    else:
        terms = (
            spec[k] for k in spec.modes if k != 0 and character_orthogonality_check(P, k)
        )
    return _csum(terms)


def _coverage(spec, P, l_max):
    if l_max < 1:
        raise DomainError(f"l_max must be >= 1, got {l_max}")
    if spec.source_N is not None and l_max * P >= spec.source_N / 2:
        raise ContractError(
            f"l_max*P = {l_max * P} reaches the self-aliasing limit N/2 = {spec.source_N / 2}"
        )
    if l_max * P < spec.max_mode:
        warnings.warn(
            f"alias sum truncated at |k| <= {l_max * P} but spectrum reaches {spec.max_mode}",
            CoverageWarning,
            stacklevel=3,
        )


def bias_classical_alias(spec, P, l_max):
    """Aliasing sum ``sum_{0 < |l| <= l_max} c_{lP}``.

    Emits :class:`CoverageWarning` when ``l_max * P`` does not reach the
    largest stored mode.
    """
    P = _check_P(P)
    _coverage(spec, P, l_max)
    return _csum(spec[l * P] for l in range(-l_max, l_max + 1) if l != 0)


def bias_real_reduction(spec, P, l_max):
    """``sum_{l=1}^{l_max} 2 Re c_{lP}`` for a spectrum declared real."""
    if not spec.symmetric_real:
        raise ContractError("real reduction needs a spectrum declared symmetric_real")
    P = _check_P(P)
    _coverage(spec, P, l_max)
    return math.fsum(2.0 * spec[l * P].real for l in range(1, l_max + 1))


def estimate_spectrum_dft(f, N, drop_tol=0.0, k_max=None):
    """Estimate ``c_k`` for ``|k| <= k_max`` (default ``N/2 - 1``) from N samples.

    Direct O(N * K) summation.  Real-valued samples give a spectrum with
    exact Hermitian symmetry (negative modes are conjugated copies).
    Coefficients with modulus ``<= drop_tol`` are discarded.
    """
    N = int(N)
    if N < 2:
        raise DomainError(f"need at least 2 samples, got N={N}")
    if k_max is None:
        k_max = N // 2 - 1
    if k_max >= N / 2 or k_max < 0:
        raise DomainError(f"modes must satisfy |k| < N/2 = {N / 2}, got k_max={k_max}")
    if drop_tol < 0:
        raise DomainError("drop_tol must be non-negative")
    x = np.arange(N, dtype=np.float64) / N
    samples = np.asarray(np.broadcast_to(f(x), x.shape))
    is_real = not np.iscomplexobj(samples)
    samples = np.ascontiguousarray(samples, dtype=np.complex128)
    c = np.asarray(kernels.dft_direct(samples, k_max))
    coeffs = {}
    if is_real:
        for k in range(0, k_max + 1):
            ck = complex(c[k_max + k])
            if k == 0:
                ck = complex(ck.real, 0.0)
            if abs(ck) > drop_tol:
                coeffs[k] = ck
                if k:
                    coeffs[-k] = ck.conjugate()
    else:
        for i, k in enumerate(range(-k_max, k_max + 1)):
            ck = complex(c[i])
            if abs(ck) > drop_tol:
                coeffs[k] = ck
    return FourierSpectrum(coeffs, symmetric_real=is_real, source_N=N)


@dataclass(frozen=True)
class Algebraic:
    """``|c_k| <= C |k|^(-s-1)``."""

    s: int
    C: float

    def __post_init__(self):
        if int(self.s) != self.s or self.s < 1:
            raise DomainError(f"s must be an integer >= 1 (zeta(s+1) diverges at s=0), got {self.s}")
        if not self.C > 0:
            raise DomainError("C must be positive")


@dataclass(frozen=True)
class Exponential:
    """``|c_k| <= C exp(-gamma |k|)``."""

    gamma: float
    C: float

    def __post_init__(self):
        if not (self.gamma > 0 and self.C > 0):
            raise DomainError("gamma and C must be positive")


def zeta(p, n_cap=20000):
    """Riemann zeta at real p > 1 by direct summation plus a midpoint tail.

    Sums until the term drops below 1e-16 or ``n_cap`` terms, then adds
    ``int_{N+1/2}^inf x^-p dx`` and its leading midpoint correction
    ``-p (N+1/2)^(-p-1) / 24``.  Absolute error < 1e-15 for p >= 2.
    """
    if not p > 1:
        raise DomainError(f"zeta series diverges for p <= 1, got {p}")
    terms = []
    n = 1
    while n <= n_cap:
        t = n ** (-p)
        terms.append(t)
        if t < 1e-16:
            break
        n += 1
    N = len(terms)
    a = N + 0.5
    terms.append(a ** (1.0 - p) / (p - 1.0))
    terms.append(-p * a ** (-p - 1.0) / 24.0)
    return math.fsum(reversed(terms))


def bound_algebraic(model, P):
    """``2 C zeta(s+1) P^(-s-1)``."""
    if not isinstance(model, Algebraic):
        raise ContractError("bound_algebraic needs an Algebraic decay model")
    return 2.0 * model.C * zeta(model.s + 1) * float(P) ** (-model.s - 1)


def bound_exponential(model, P):
    """``2 C e^(-gamma P) / (1 - e^(-gamma P))``; 0 with :class:`UnderflowWarning` past gamma P = 700."""
    if not isinstance(model, Exponential):
        raise ContractError("bound_exponential needs an Exponential decay model")
    x = model.gamma * P
    if x > 700:
        warnings.warn(f"gamma*P = {x} underflows; bound returned as 0", UnderflowWarning, stacklevel=2)
        return 0.0
    return 2.0 * model.C / math.expm1(x)


def fit_exponential_envelope(spec, floor=0.0, default_gamma=1.0):
    """Fit ``C exp(-gamma |k|)`` over the modes ``k != 0`` with ``|c_k| > floor``.

    gamma is the negated least-squares slope of ``log|c_k|`` against ``|k|``
    (``default_gamma`` when fewer than two distinct ``|k|`` are present);
    C is then raised until every stored coefficient lies under the envelope.
    """
    pts = {}
    for k, c in spec.coefficients.items():
        if k != 0 and abs(c) > floor:
            pts[abs(k)] = max(pts.get(abs(k), 0.0), abs(c))
    if not pts:
        raise ContractError("spectrum has no non-zero modes to fit")
    ks = np.array(sorted(pts), dtype=np.float64)
    mags = np.array([pts[int(k)] for k in ks])
    gamma = default_gamma
    if len(ks) >= 2:
        slope = np.polyfit(ks, np.log(mags), 1)[0]
        if slope < 0:
            gamma = -float(slope)
    C = float(np.max(mags * np.exp(gamma * ks)))
    return Exponential(gamma=gamma, C=C)


@dataclass(frozen=True)
class BiasReport:
    rbf_bias: complex
    classical_bias: complex
    direct_bias: Optional[float] = None
    max_pairwise_discrepancy: float = 0.0

    def is_valid(self, tol):
        return self.max_pairwise_discrepancy < tol


def bias_report(spec, P, l_max, f=None):
    """Evaluate every available route and record the largest disagreement."""
    rbf = bias_rbf_general(spec, P)
    classical = bias_classical_alias(spec, P, l_max)
    direct = direct_bias(f, P) if f is not None else None
    vals = [rbf, classical] + ([complex(direct)] if direct is not None else [])
    disc = max(abs(a - b) for i, a in enumerate(vals) for b in vals[i + 1:])
    return BiasReport(rbf, classical, direct, disc)
