import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rmlab.qexp import (
    NCPoly,
    QSeriesParams,
    addition_check,
    dilog,
    dilog_asymptotic,
    eq_series,
    euler_coefficient,
    halving_ratio,
    log_eq,
    nc_mul,
    parse_mu,
    pentagon_check,
    pentagon_obstruction,
    rogers_L,
    rogers_numeric,
)

P = QSeriesParams(4, 12)


def test_commutation_relation():
    u, v = NCPoly.u(P), NCPoly.v(P)
    assert (u * v).coefficient(1, 1) == [0, 0, 1] + [0] * 10
    assert (v * u).coefficient(1, 1) == [1] + [0] * 12
    assert u * v == (v * u).shift_q(2)


def test_nc_mul_power_rule():
    # u^a v^b = q^{2ab} v^b u^a
    for a in range(3):
        for b in range(3):
            if a + b > P.Ndeg:
                continue
            x = NCPoly.monomial(0, a, P) * NCPoly.monomial(b, 0, P)
            expect = [0] * 13
            if 2 * a * b <= 12:
                expect[2 * a * b] = 1
            assert x.coefficient(b, a) == expect


@st.composite
def polys(draw):
    coeffs = {}
    for b in range(3):
        for a in range(3 - b):
            coeffs[(b, a)] = draw(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
    return NCPoly(coeffs, P)


@settings(max_examples=40, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(x, y, z):
    assert nc_mul(nc_mul(x, y), z) == nc_mul(x, nc_mul(y, z))
    assert x * (y + z) == x * y + x * z
    assert (x - x).is_zero()
    assert x * NCPoly.one(P) == x


def test_truncation_drops_high_degrees():
    Q = QSeriesParams(1, 3)
    assert (NCPoly.u(Q) * NCPoly.v(Q)).is_zero()
    assert NCPoly.monomial(0, 0, Q, qpow=9).is_zero()


def test_params_validation():
    with pytest.raises(ValueError):
        QSeriesParams(-1, 5)
    with pytest.raises(ValueError):
        QSeriesParams(2, 0)
    with pytest.raises(ValueError):
        NCPoly.u(P) * NCPoly.u(QSeriesParams(4, 13))
    with pytest.raises(ValueError):
        eq_series(NCPoly.one(P))


@pytest.mark.parametrize("text, k", [("q", 1), ("1", 0), ("q^3", 3), ("q**2", 2)])
def test_parse_mu(text, k):
    assert parse_mu(text) == k


def test_parse_mu_rejects():
    with pytest.raises(ValueError):
        parse_mu("2q")


def test_eq_series_single_variable():
    Q = QSeriesParams(1, 7)
    assert eq_series(NCPoly.u(Q)).coefficient(0, 1) == [0, 1, 0, 1, 0, 1, 0, 1]


@pytest.mark.parametrize("k", range(7))
def test_euler_coefficients(k):
    Q = QSeriesParams(6, 40)
    series = eq_series(NCPoly.u(Q))
    assert series.coefficient(0, k) == euler_coefficient(k, 40)


def test_euler_coefficient_small_values():
    # q / (1 - q^2) and q^4 / ((1 - q^2)(1 - q^4))
    assert euler_coefficient(1, 7) == [0, 1, 0, 1, 0, 1, 0, 1]
    assert euler_coefficient(2, 10) == [0, 0, 0, 0, 1, 0, 1, 0, 2, 0, 2]


def test_addition_and_pentagon_vanish():
    Q = QSeriesParams(6, 40, 1)
    assert addition_check(Q).is_zero()
    assert pentagon_check(Q).is_zero()


def test_pentagon_obstruction_with_scaling_one():
    r = pentagon_check(QSeriesParams(2, 20, 0))
    assert set(r.coeffs) == {(1, 1)}
    assert r.coefficient(1, 1) == pentagon_obstruction(20)


def test_pentagon_degree_one_is_blind():
    # the obstruction lives in the vu monomial, which degree 1 truncates away
    assert pentagon_check(QSeriesParams(1, 20, 0)).is_zero()


def test_dilog_values():
    assert dilog(1.0) == pytest.approx(math.pi**2 / 6, abs=1e-14)
    assert dilog(0.5) == pytest.approx(math.pi**2 / 12 - math.log(2) ** 2 / 2, abs=1e-14)
    assert dilog(-1.0) == pytest.approx(-math.pi**2 / 12, abs=1e-14)
    assert dilog(0.3) == pytest.approx(sum(0.3**n / n**2 for n in range(1, 60)), abs=1e-15)
    with pytest.raises(ValueError):
        dilog(1.5)


def test_rogers():
    assert rogers_L(0.5) == pytest.approx(math.pi**2 / 12, abs=1e-14)
    for x in (0.1, 0.37, 0.5, 0.83):
        assert rogers_L(x) + rogers_L(1 - x) == pytest.approx(math.pi**2 / 6, abs=1e-14)
        for y in (0.2, 0.6, 0.95):
            assert rogers_numeric(x, y) < 1e-12
    with pytest.raises(ValueError):
        rogers_L(1.0)
    with pytest.raises(ValueError):
        rogers_numeric(0.5, 1.2)


def test_log_eq_direct():
    y, t = 0.1, 0.7
    q = math.exp(-2 * math.pi * y)
    direct = sum(math.log1p(q ** (2 * n + 1) * t) for n in range(200))
    assert log_eq(t, y) == pytest.approx(direct, abs=1e-15)
    with pytest.raises(ValueError):
        log_eq(-1, 0.1)


def test_dilog_asymptotic_is_linear_in_y():
    assert abs(halving_ratio(1.0, 0.01) - 0.5) < 0.01
    assert dilog_asymptotic(1.0, 0.005) < dilog_asymptotic(1.0, 0.01)
    # with the extra log term the remainder tends to log(2)/2 instead of 0
    assert dilog_asymptotic(1.0, 0.002, literal=True) == pytest.approx(math.log(2) / 2, abs=0.01)
    assert halving_ratio(1.0, 0.01, literal=True) > 0.9
