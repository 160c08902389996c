"""Series reconstruction and quasi-polynomial extraction."""

from fractions import Fraction

import pytest

from conftest import analysis
from pgrowth.exactalg import FactoredDenominator, IntPoly
from pgrowth.series import (GrowthSeries, extract_quasipolynomial,
                            reconstruct_series, verify_prediction)

F = Fraction


def test_square_closed_form():
    a = analysis("square")
    s = a.series
    assert s.numerator == IntPoly([1, 2, 1])
    assert sorted(s.denominator.factors) == [1, 1]
    assert s.coefficients(6) == [1, 4, 8, 12, 16, 20]


def test_honeycomb_closed_form():
    a = analysis("honeycomb")
    s = a.series
    assert s.numerator == IntPoly([1, 1, 1])
    assert sorted(s.denominator.factors) == [1, 1]
    assert s.coefficients(5) == [1, 3, 6, 9, 12]


def test_reconstruction_rejects_wrong_terms():
    a = analysis("square")
    bad = list(a.terms)
    bad[-1] += 1
    with pytest.raises(ArithmeticError):
        reconstruct_series(bad, a.report)


def test_verify_prediction_counts_checked_terms():
    a = analysis("honeycomb")
    extra = a.series.coefficients(len(a.terms))
    assert verify_prediction(a.series, extra) >= 0
    wrong = list(extra)
    wrong[-1] += 1
    with pytest.raises(ArithmeticError):
        verify_prediction(a.series, wrong)


def test_square_quasipolynomial():
    a = analysis("square")
    q = a.quasi
    assert q.period == 1
    # s_i = 4i for i >= 1
    for i in range(max(1, q.threshold), 40):
        assert q(i) == 4 * i


def test_honeycomb_quasipolynomial():
    a = analysis("honeycomb")
    q = a.quasi
    for i in range(max(1, q.threshold), 40):
        assert q(i) == 3 * i


def test_quasipolynomial_from_plain_denominator():
    # a fully reduced denominator that is not a binomial product
    num = IntPoly([1, 1, 4, 0, 2, 1, -1])
    den = IntPoly([1, -2, 2, -2, 1])     # (1-t)^2 (1+t^2)
    s = GrowthSeries(num, den, gamma=30, beta=F(20), extra_checked=0)
    q = extract_quasipolynomial(s, 2)
    assert q.period == 4
    coeffs = [0] * 60
    ref = [0] * 60
    # compare against direct expansion
    from pgrowth.exactalg import series_coefficients
    ref = series_coefficients(num, den, 60)
    for i in range(q.threshold, 60):
        assert q(i) == ref[i], i


def test_as_dict_roundtrips_both_denominator_shapes():
    a = analysis("square")
    d = a.series.as_dict()
    assert d["numerator"] == [1, 2, 1]
    s = GrowthSeries(IntPoly([1, 1]), IntPoly([1, -1]), 5, F(3), 0)
    d2 = s.as_dict()
    assert d2["denominator"] == [1, -1]
