import math

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import phasor_mean
from resbias import (
    Branch,
    DomainError,
    arrows,
    character_orthogonality_check,
    chi_real,
    chi_taylor_lobe,
    chi_tilde_array,
    chi_tilde_closed,
    chi_tilde_naive,
)
from resbias.resonance import lobe_curvature


def mp_chi(P, y):
    """50-digit reference for chi~_P(y)."""
    with mpmath.workdps(50):
        y = mpmath.mpf(y)
        s = mpmath.fsum(mpmath.expjpi(2 * y * j) for j in range(P))
        return complex(s / P)


# -- chi_tilde_naive -------------------------------------------------------

def test_naive_integer_all_arrows_align():
    rv = chi_tilde_naive(5, 1.0)
    assert rv.value == 1 + 0j
    assert rv.branch is Branch.NAIVE_SUM


def test_naive_fifth_roots_cancel():
    assert abs(chi_tilde_naive(5, 0.2).value) < 1e-14


def test_naive_partial_cancellation_value():
    # value quoted to two decimals for the P=5 arrows picture
    v = chi_tilde_naive(5, 0.3).value
    assert v.real == pytest.approx(0.20, abs=0.005)
    assert v.imag == pytest.approx(0.15, abs=0.006)
    assert abs(v - mp_chi(5, 0.3)) < 1e-15


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_non_finite_rejected(bad):
    with pytest.raises(DomainError):
        chi_tilde_naive(5, bad)
    with pytest.raises(DomainError):
        chi_tilde_closed(5, bad)


@pytest.mark.parametrize("P", [0, -3, 2.5])
def test_bad_grid_rejected(P):
    with pytest.raises(DomainError):
        chi_tilde_closed(P, 0.1)


# -- chi_tilde_closed ------------------------------------------------------

def test_closed_real_part_p20():
    # frozen from the 50-digit phasor sum
    ref = mp_chi(20, 0.23)
    assert ref.real == pytest.approx(0.028557637411830, abs=1e-15)
    rv = chi_tilde_closed(20, 0.23)
    assert rv.branch is Branch.CLOSED_FORM
    assert abs(rv.value - ref) < 1e-15


def test_closed_integer_limit():
    rv = chi_tilde_closed(7, 3.0)
    assert rv.value == 1 + 0j
    assert rv.branch is Branch.INTEGER_LIMIT


def test_closed_large_P_near_half():
    y = 0.5 + 1 / (3 * 10**4)
    a = chi_tilde_closed(10**4, y).value
    b = chi_tilde_naive(10**4, y).value
    assert abs(a - b) < 1e-10
    assert abs(a - mp_chi(10**4, y)) < 1e-11


@pytest.mark.parametrize(
    "d, branch",
    [(0.0, Branch.INTEGER_LIMIT), (5e-13, Branch.INTEGER_LIMIT), (1e-9, Branch.NAIVE_SUM),
     (9e-7, Branch.NAIVE_SUM), (2e-6, Branch.CLOSED_FORM)],
)
@pytest.mark.parametrize("k", [0, 1, -2])
def test_branch_selection(d, branch, k):
    for y in (k + d, k - d):
        assert chi_tilde_closed(13, y).branch is branch


def test_integer_limit_only_at_value_one():
    for y in (0.0, 2.0, -1.0, 4 + 1e-13):
        rv = chi_tilde_closed(9, y)
        assert rv.branch is Branch.INTEGER_LIMIT and rv.value == 1


def test_p1_is_identically_one():
    for y in (0.37, -2.2, 1e6 + 0.1):
        assert chi_tilde_closed(1, y).value == 1
        assert chi_tilde_naive(1, y).value == 1


def test_guard_band_continuity():
    # both sides of the guard-band edge agree with the reference
    for d in (1e-6 * (1 - 1e-9), 1e-6 * (1 + 1e-9)):
        for P in (3, 50, 997):
            assert abs(chi_tilde_closed(P, d).value - mp_chi(P, d)) < 1e-12


# -- chi_real --------------------------------------------------------------

def test_real_zero_at_first_rational():
    assert abs(chi_real(20, 1 / 20)) < 1e-14


def test_real_peak_at_integer():
    assert chi_real(20, 2.0) == 1.0


def test_real_parity():
    assert chi_real(20, -0.23) == pytest.approx(chi_real(20, 0.23), abs=1e-15)


def test_real_matches_closed_formula():
    for P, y in [(20, 0.23), (7, 0.61), (64, 3.1)]:
        direct = math.sin(math.pi * P * y) / (P * math.sin(math.pi * y)) * math.cos(math.pi * (P - 1) * y)
        assert chi_real(P, y) == pytest.approx(direct, abs=1e-12)


# -- Taylor lobe -----------------------------------------------------------

def test_lobe_peak():
    assert chi_taylor_lobe(20, 0, 0.0) == 1.0


def test_lobe_value():
    assert chi_taylor_lobe(20, 1, 1e-3) == pytest.approx(1 - math.pi**2 * 19 * 39 * 1e-6 / 3, abs=1e-15)
    assert chi_taylor_lobe(20, 1, 1e-3) == pytest.approx(0.997562, abs=5e-7)
    # leading remainder ~ (2 pi)^4 <j^4> eps^4 / 24 ~ 1.8e-6 at eps = 1e-3
    assert abs(chi_real(20, 1.001) - chi_taylor_lobe(20, 1, 1e-3)) < 3e-6


def test_lobe_even():
    assert chi_taylor_lobe(5, 0, -1e-3) == chi_taylor_lobe(5, 0, 1e-3)


@pytest.mark.parametrize("P", [5, 20])
@pytest.mark.parametrize("eps", [1e-2, 1e-3])
def test_lobe_remainder_is_quartic(P, eps):
    # chi_P is even about integers, so the remainder after the quadratic term
    # is O(eps^4): halving eps divides it by ~16.
    r1 = abs(chi_real(P, 1 + eps) - chi_taylor_lobe(P, 1, eps))
    r2 = abs(chi_real(P, 1 + eps / 2) - chi_taylor_lobe(P, 1, eps / 2))
    assert 14.5 <= r1 / r2 <= 16.5


@pytest.mark.parametrize("P", [2, 5, 20, 50])
def test_curvature_matches_moment_sum(P):
    # chi''(0) = -(1/P) sum (2 pi j)^2
    moment = -math.fsum((2 * math.pi * j) ** 2 for j in range(P)) / P
    assert lobe_curvature(P) == pytest.approx(moment, rel=1e-14)


# -- arrows ----------------------------------------------------------------

def test_arrows_resonance():
    dec = arrows(5, 1.0)
    assert np.all(dec.arrows == 1)
    assert dec.centroid == 1


def test_arrows_roots_of_unity():
    dec = arrows(5, 0.2)
    roots = np.exp(2j * np.pi * np.arange(5) / 5)
    assert np.max(np.abs(dec.arrows - roots)) < 1e-15
    assert abs(dec.centroid) < 1e-14


def test_arrows_single():
    dec = arrows(1, 0.37)
    assert dec.arrows.tolist() == [1 + 0j]
    assert dec.centroid == 1


@given(P=st.integers(1, 200), y=st.floats(-50, 50, allow_nan=False))
@settings(max_examples=200, deadline=None)
def test_arrows_invariants(P, y):
    dec = arrows(P, y)
    assert len(dec.arrows) == P
    assert np.max(np.abs(np.abs(dec.arrows) - 1)) < 1e-12
    assert abs(dec.centroid - np.mean(dec.arrows)) < 1e-12
    assert abs(dec.centroid - chi_tilde_naive(P, y).value) < 1e-12


# -- orthogonality ---------------------------------------------------------

@pytest.mark.parametrize("P, k, expected", [(20, 40, 1), (20, 7, 0), (4, -4, 1), (3, 0, 1), (1, 5, 1)])
def test_orthogonality_indicator(P, k, expected):
    assert character_orthogonality_check(P, k) == expected


@given(P=st.integers(1, 64), k=st.integers(-500, 500))
@settings(max_examples=300, deadline=None)
def test_orthogonality_matches_sum(P, k):
    assert abs(phasor_mean(P, k / P) - character_orthogonality_check(P, k)) < 1e-12


# -- properties ------------------------------------------------------------

def off_snap_band(y):
    # within a few ulps of the 1e-12 snap radius the two sides of a shift can
    # land on different branches; that jump is covered separately below
    return abs(y - round(y)) > 2e-12


@pytest.mark.parametrize("P", [2, 33, 64])
def test_snap_jump_is_bounded(P):
    for d in (1e-12, 9.9e-13, 1.01e-12):
        jump = abs(chi_tilde_closed(P, d).value - phasor_mean(P, d))
        assert jump <= math.pi * (P - 1) * 1.01e-12


@given(P=st.integers(1, 64), y=st.floats(-3, 3, allow_nan=False))
@settings(max_examples=500, deadline=None)
def test_periodicity_and_symmetry(P, y):
    assume(off_snap_band(y))
    v = chi_tilde_closed(P, y).value
    assert abs(chi_tilde_closed(P, y + 1).value - v) < 1e-12
    assert abs(chi_tilde_closed(P, -y).value - v.conjugate()) < 1e-12
    assert abs(v) <= 1 + 1e-12


@given(P=st.integers(2, 997), y=st.floats(-10, 10, allow_nan=False))
@settings(max_examples=500, deadline=None)
def test_closed_matches_oracle(P, y):
    assume(off_snap_band(y))
    assert abs(chi_tilde_closed(P, y).value - phasor_mean(P, y)) < 1e-10


def test_array_matches_scalar():
    rng = np.random.default_rng(1)
    ys = np.concatenate([rng.uniform(-4, 4, 500), [0.0, 1.0, 2 + 1e-13, 0.5 + 5e-7]])
    for P in (1, 3, 20, 301):
        arr = chi_tilde_array(P, ys)
        ref = np.array([chi_tilde_closed(P, y).value for y in ys])
        assert np.max(np.abs(arr - ref)) < 1e-13


def test_equidistribution_decay():
    y = math.sqrt(2) - 1
    small = abs(chi_tilde_closed(10**2, y).value)
    large = abs(chi_tilde_closed(10**5, y).value)
    assert large * 10 <= small
    assert abs(chi_tilde_naive(10**5, y).value - chi_tilde_closed(10**5, y).value) < 1e-10


def test_half_alternates_with_parity_of_P():
    # oracle: 0 for even P, 1/P for odd P
    for P in range(2, 40):
        v = chi_tilde_closed(P, 0.5).value
        ref = phasor_mean(P, 0.5)
        assert abs(v - ref) < 1e-14
        assert abs(v - (0 if P % 2 == 0 else 1 / P)) < 1e-14
