#!/usr/bin/env python3
"""
Bessel series tests against scipy reference values and the direct
two-sided sum.
"""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import iv

from formula import ContractError, SeriesOverflowError
from theory import (SeriesControl, bessel_i, big_i, big_i_direct, big_i_dz, log_bessel_i,
                    log_bessel_i_orders)
from utils.numerics import numeric_derivative


def test_bessel_at_zero():
    assert bessel_i(0, 0.0) == 1.0
    assert bessel_i(1, 0.0) == 0.0
    assert bessel_i(5, 0.0) == 0.0


def test_bessel_i0_at_one():
    assert bessel_i(0, 1.0) == pytest.approx(1.2660658777520082, rel=1e-14)


@pytest.mark.parametrize("n", [0, 1, 2, 5, 10, 25])
@pytest.mark.parametrize("z", [0.01, 0.5, 1.0, 3.7, 12.0, 40.0])
def test_bessel_matches_scipy(n, z):
    assert bessel_i(n, z) == pytest.approx(float(iv(n, z)), rel=1e-12)


@settings(max_examples=50, deadline=None)
@given(n=st.integers(0, 30), z=st.floats(1e-6, 60.0))
def test_bessel_order_symmetry(n, z):
    assert log_bessel_i(n, z).value == log_bessel_i(-n, z).value


def test_series_reports_truncation():
    result = log_bessel_i(3, 10.0)
    assert result.error < 1e-13
    assert result.terms > 1


def test_series_refuses_large_arguments():
    with pytest.raises(SeriesOverflowError):
        log_bessel_i(0, 600.0)
    with pytest.raises(SeriesOverflowError):
        log_bessel_i(0, 50.0, SeriesControl(max_terms=2))
    with pytest.raises(ContractError):
        log_bessel_i(0, -1.0)


def test_orders_vector():
    logs = log_bessel_i_orders(4, 2.0)
    assert len(logs) == 5
    for n, value in enumerate(logs):
        assert math.exp(value) == pytest.approx(float(iv(n, 2.0)), rel=1e-12)


def test_big_i_at_zero_argument():
    result = big_i(0.0, 3.0)
    assert result.value == pytest.approx(1.0, abs=1e-15)
    assert result.r0 == pytest.approx(1.0)


@pytest.mark.parametrize("z,nu", [(0.5, 1.0), (2.0, 3.0), (5.0, 4.0), (1.0, 10.0)])
def test_big_i_matches_direct_sum(z, nu):
    fast = big_i(z, nu).log_value
    direct = big_i_direct(z, nu, n_max=200)
    assert fast == pytest.approx(direct, rel=1e-10)


def test_big_i_large_nu_is_dominated_by_first_term():
    z, nu = 1e-5, 30.0
    result = big_i(z, nu)
    assert result.log_value == pytest.approx(z * math.cosh(nu / 2) + math.log(2), rel=1e-6)


@pytest.mark.parametrize("z,nu", [(0.7, 2.0), (3.0, 5.0)])
def test_big_i_derivative_ratios(z, nu):
    result = big_i(z, nu)
    dz = numeric_derivative(lambda t: big_i(t, nu).log_value, z, 1e-4)
    dnu = numeric_derivative(lambda t: big_i(z, t).log_value, nu, 1e-4)
    assert result.dz == pytest.approx(dz, rel=1e-7)
    assert result.dnu == pytest.approx(dnu, rel=1e-7)
    cross = numeric_derivative(lambda t: big_i_dz(z, t), nu, 1e-4) / result.value
    assert result.dz_dnu == pytest.approx(cross, rel=1e-6)
    assert big_i_dz(z, nu) == pytest.approx(result.value * result.dz)


def test_big_i_rejects_bad_arguments():
    with pytest.raises(ContractError):
        big_i(1.0, 0.0)
    with pytest.raises(ContractError):
        big_i(-1.0, 2.0)


def test_series_control_validation():
    with pytest.raises(ContractError):
        SeriesControl(rel_tol=0.0)
    control = SeriesControl.from_dict({"rel_tol": 1e-12, "unrelated": 3})
    assert control.rel_tol == 1e-12 and control.max_terms == 500
