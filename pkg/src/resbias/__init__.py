"""Exact trapezoid-rule bias for periodic integrands through the grid
resonance function chi~_P(y) = (1/P) sum_{j<P} exp(2 pi i y j)."""

from resbias._backend import BACKEND
from resbias.errors import ContractError, CoverageWarning, DomainError, UnderflowWarning
from resbias.prototype import (
    CorrectionTerm,
    PrototypeParams,
    bias_sin2,
    correction_term,
    exact_integral_sin2,
    finite_cosine_sum,
)
from resbias.quadrature import (
    PeriodicFunction,
    builtin,
    direct_bias,
    trapezoid_1d,
    trapezoid_2d,
)
from resbias.resonance import (
    ArrowsDecomposition,
    Branch,
    ResonanceValue,
    arrows,
    character_orthogonality_check,
    chi_real,
    chi_taylor_lobe,
    chi_tilde,
    chi_tilde_array,
    chi_tilde_closed,
    chi_tilde_naive,
)
from resbias.spectrum import (
    Algebraic,
    BiasReport,
    Exponential,
    FourierSpectrum,
    bias_classical_alias,
    bias_rbf_general,
    bias_real_reduction,
    bias_report,
    bound_algebraic,
    bound_exponential,
    estimate_spectrum_dft,
    fit_exponential_envelope,
)
from resbias.tensor2d import Spectrum2D, bias_classical_2d, bias_rbf_2d, chi2d

__version__ = "0.1.0"
