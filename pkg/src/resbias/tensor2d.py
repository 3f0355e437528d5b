"""Resonance filter and trapezoid bias on the square P x P tensor grid.

The 2D filter is the product of the 1D ones, so only multiples of P in both
indices survive.  Rectangular grids are not supported.
"""

import json
import warnings
from dataclasses import dataclass, field

from resbias.errors import ContractError, CoverageWarning, DomainError
from resbias.resonance import character_orthogonality_check, chi_tilde
from resbias.spectrum import HERMITIAN_TOL, _csum


@dataclass(frozen=True)
class Spectrum2D:
    coefficients: dict = field(default_factory=dict)
    symmetric_real: bool = False

    def __post_init__(self):
        coeffs = {(int(a), int(b)): complex(v) for (a, b), v in self.coefficients.items()}
        object.__setattr__(self, "coefficients", coeffs)
        if self.symmetric_real:
            for (a, b), c in coeffs.items():
                partner = coeffs.get((-a, -b), 0j)
                if abs(partner - c.conjugate()) > HERMITIAN_TOL:
                    raise ContractError(f"spectrum declared real but c[{-a},{-b}] != conj(c[{a},{b}])")

    def __getitem__(self, k):
        return self.coefficients.get(k, 0j)

    @property
    def modes(self):
        return sorted(self.coefficients)

    @property
    def max_mode(self):
        return max((max(abs(a), abs(b)) for a, b in self.coefficients), default=0)

    def to_dict(self):
        return {
            "modes": [
                {"k1": a, "k2": b, "re": self.coefficients[(a, b)].real, "im": self.coefficients[(a, b)].imag}
                for a, b in self.modes
            ]
        }

    @classmethod
    def from_dict(cls, data):
        try:
            coeffs = {
                (int(m["k1"]), int(m["k2"])): complex(float(m["re"]), float(m["im"]))
                for m in data["modes"]
            }
        except (KeyError, TypeError) as exc:
            raise ContractError(f"malformed 2D spectrum document: {exc}") from exc
        return cls(coeffs)

    def dumps(self):
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def loads(cls, text):
        return cls.from_dict(json.loads(text))


def chi2d(P, y1, y2):
    """chi~_P(y1) * chi~_P(y2)."""
    return chi_tilde(P, y1) * chi_tilde(P, y2)


def _check_P(P):
    if int(P) != P or P < 2:
        raise DomainError(f"bias formulas need an integer P >= 2, got {P!r}")
    return int(P)


def bias_rbf_2d(spec, P, diagnostic=False):
    P = _check_P(P)
    if diagnostic:
        terms = (
            spec[k] * chi2d(P, k[0] / P, k[1] / P) for k in spec.modes if k != (0, 0)
        )
    else:
        terms = (
            spec[k]
            for k in spec.modes
            if k != (0, 0)
            and character_orthogonality_check(P, k[0])
            and character_orthogonality_check(P, k[1])
        )
    return _csum(terms)


def bias_classical_2d(spec, P, l_max):
    """``sum c_{(l1 P, l2 P)}`` over ``l != 0``, ``|l1|, |l2| <= l_max``."""
    P = _check_P(P)
    if l_max < 1:
        raise DomainError(f"l_max must be >= 1, got {l_max}")
    if l_max * P < spec.max_mode:
        warnings.warn(
            f"alias sum truncated at |k_i| <= {l_max * P} but spectrum reaches {spec.max_mode}",
            CoverageWarning,
            stacklevel=2,
        )
    ls = range(-l_max, l_max + 1)
    return _csum(spec[(a * P, b * P)] for a in ls for b in ls if (a, b) != (0, 0))


def real_landscape_2d(P, y1, y2):
    """Both 2D real landscapes: ``Re[chi~(y1) chi~(y2)]`` and ``chi(y1) chi(y2)``."""
    a = chi_tilde(P, y1)
    b = chi_tilde(P, y2)
    return (a * b).real, a.real * b.real

