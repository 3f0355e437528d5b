"""Tabular data behind the resonance plots: 1D and 2D landscapes, bias
sweeps over P, and the filter view of a spectrum.

CSV is the canonical export; :func:`to_json` mirrors it with the same keys
in the same order.  Rows always come out sorted by ``y``, ``P`` or ``k``.
"""

import enum
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from resbias.errors import ContractError, DomainError
from resbias.prototype import PrototypeParams, bias_sin2, classical_bound_sin2
from resbias.quadrature import builtin, direct_bias
from resbias.resonance import character_orthogonality_check, chi_tilde_array
from resbias.spectrum import (
    FourierSpectrum,
    bias_rbf_general,
    bound_exponential,
    estimate_spectrum_dft,
    fit_exponential_envelope,
)

CLASS_TOL = 1e-9
# Sample count and envelope floor for integrands without a finite spectrum.
SWEEP_DFT_N = 4096
ENVELOPE_FLOOR = 1e-15


class Classification(enum.Enum):
    PEAK = "Peak"
    ZERO = "Zero"
    INTERIOR = "Interior"


@dataclass(frozen=True)
class LandscapeSample:
    y: float
    chi: float
    classification: Classification


@dataclass(frozen=True)
class SweepRow:
    P: int
    direct_error: float
    rbf_prediction: float
    classical_bound: float


@dataclass(frozen=True)
class FilterViewRow:
    k: int
    input_mag: float
    filter_mag: float
    filtered_mag: float
    filtered: complex = 0j  # not exported


@dataclass(frozen=True)
class Landscape2DRow:
    y1: float
    y2: float
    re_product: float
    product_of_re: float


SCHEMAS = {
    "landscape": ("y", "chi", "classification"),
    "sweep": ("P", "direct_error", "rbf_prediction", "classical_bound"),
    "filterview": ("k", "input_mag", "filter_mag", "filtered_mag"),
    "landscape2d": ("y1", "y2", "re_product", "product_of_re"),
}

_ROW_FIELDS = {
    LandscapeSample: ("y", "chi", "classification"),
    SweepRow: ("P", "direct_error", "rbf_prediction", "classical_bound"),
    FilterViewRow: ("k", "input_mag", "filter_mag", "filtered_mag"),
    Landscape2DRow: ("y1", "y2", "re_product", "product_of_re"),
}


def _uniform(lo, hi, n):
    # (hi - lo) * i is exact for integral spans, so interior points are
    # correctly rounded
    return [lo + (hi - lo) * i / (n - 1) for i in range(n - 1)] + [hi]


def sample_landscape(P, y_min, y_max, n_points):
    """Uniform samples of chi_P on [y_min, y_max] with every integer and every
    n/P in range injected exactly, each row classified."""
    if n_points < 2 or not y_min < y_max:
        raise DomainError("need n_points >= 2 and y_min < y_max")
    res = (y_max - y_min) / (n_points - 1)
    pts = [(y, False) for y in _uniform(y_min, y_max, n_points)]
    for n in range(math.ceil(y_min * P), math.floor(y_max * P) + 1):
        y = n / P
        if y_min <= y <= y_max:
            pts.append((y, True))
    pts.sort()
    # a uniform point a few ulp from an injected exact one is replaced by it
    merged = []
    for y, exact in pts:
        if merged and abs(y - merged[-1][0]) <= 1e-12 * max(1.0, abs(y)):
            if exact and not merged[-1][1]:
                merged[-1] = (y, True)
            continue
        merged.append((y, exact))
    ys = np.array([y for y, _ in merged])
    chis = chi_tilde_array(P, ys).real
    rows = []
    for y, chi in zip(ys.tolist(), chis.tolist()):
        rows.append(LandscapeSample(y, chi, _classify(P, y, chi, res)))
    return rows


def _classify(P, y, chi, res):
    if abs(y - round(y)) < res / 2 and abs(chi - 1.0) < CLASS_TOL:
        return Classification.PEAK
    n = round(y * P)
    if n % P != 0 and abs(y - n / P) < res / 2 and abs(chi) < CLASS_TOL:
        return Classification.ZERO
    return Classification.INTERIOR


def _sweep_row_sin2(f, params, P):
    return SweepRow(
        P,
        direct_bias(f, P),
        bias_sin2(P, params),
        classical_bound_sin2(P, params),
    )


def sweep_bias(label, params=None, P_min=2, P_max=200, threads=0):
    """Direct error, predicted bias and an a-priori bound for each P in [P_min, P_max].

    ``sin2`` uses the closed-form prototype bias and the pi^2 m^2 / (3 P^2)
    bound; other 1D entries use the spectrum route (exact spectrum when
    finite, otherwise a DFT estimate) with a fitted exponential envelope.
    """
    params = dict(params or {})
    f = builtin(label, **params)
    if f.dim != 1:
        raise ContractError(f"sweeps are 1D only; {label} is {f.dim}D")
    if P_min < 2 or P_max < P_min:
        raise DomainError("need 2 <= P_min <= P_max")
    Ps = range(int(P_min), int(P_max) + 1)

    if label == "sin2":
        proto = PrototypeParams(float(params["k"]))

        def row(P):
            return _sweep_row_sin2(f, proto, P)

    else:
        if f.spectrum is not None:
            spec = FourierSpectrum(f.spectrum, symmetric_real=True)
        else:
            spec = estimate_spectrum_dft(f, SWEEP_DFT_N)
        envelope = fit_exponential_envelope(spec, floor=ENVELOPE_FLOOR)

        def row(P):
            return SweepRow(
                P,
                direct_bias(f, P),
                bias_rbf_general(spec, P).real,
                bound_exponential(envelope, P),
            )

    if threads and threads > 0:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(row, Ps))
    return [row(P) for P in Ps]


def filter_view(spec, P, k_range):
    """Per-mode input magnitude, filter gain |chi~_P(k/P)| and filtered magnitude
    for 0 < |k| <= k_range.  The mean (k = 0) is not part of the bias and is
    left out."""
    if P < 2:
        raise DomainError("P must be >= 2")
    rows = []
    for k in range(-k_range, k_range + 1):
        if k == 0:
            continue
        c = spec[k]
        gain = float(character_orthogonality_check(P, k))
        filtered = c * gain
        rows.append(FilterViewRow(k, abs(c), gain, abs(filtered), filtered))
    return rows


def filter_gains_diagnostic(P, k_range):
    """|chi~_P(k/P)| through the resonance evaluator, for comparison with the
    exact indicator used by :func:`filter_view`."""
    ks = np.array([k for k in range(-k_range, k_range + 1) if k != 0])
    return ks, np.abs(chi_tilde_array(P, ks / P))


def sample_landscape_2d(P, y_range, n):
    """n x n grid over [0, y_range]^2 of ``Re[chi~(y1) chi~(y2)]`` and
    ``chi(y1) chi(y2)``, y1-major."""
    if n < 2:
        raise DomainError("n must be >= 2")
    ys = np.array(_uniform(0.0, float(y_range), n))
    ct = chi_tilde_array(P, ys)
    re_prod = np.real(np.outer(ct, ct))
    prod_re = np.outer(ct.real, ct.real)
    rows = []
    for i, y1 in enumerate(ys.tolist()):
        for j, y2 in enumerate(ys.tolist()):
            rows.append(Landscape2DRow(y1, y2, float(re_prod[i, j]), float(prod_re[i, j])))
    return rows


def format_number(x):
    """Shortest round-trip decimal; integral values print without '.0', no '-0'."""
    if isinstance(x, enum.Enum):
        return str(x.value)
    if isinstance(x, str):
        return x
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if x == 0:
        return "0"
    if not math.isfinite(x):
        return repr(x)
    if x.is_integer() and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def _values(row):
    return [getattr(row, name) for name in _ROW_FIELDS[type(row)]]


def to_csv(rows, kind):
    buf = io.StringIO()
    buf.write(",".join(SCHEMAS[kind]) + "\n")
    for row in rows:
        buf.write(",".join(format_number(v) for v in _values(row)) + "\n")
    return buf.getvalue()


def _json_value(v):
    if isinstance(v, enum.Enum):
        return v.value
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return int(v)
    return float(v)


def to_json(rows, kind):
    cols = SCHEMAS[kind]
    data = [dict(zip(cols, (_json_value(v) for v in _values(row)))) for row in rows]
    return json.dumps(data, indent=1) + "\n"
