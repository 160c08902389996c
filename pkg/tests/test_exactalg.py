"""Exact arithmetic layer, cross-checked against sympy."""

from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from pgrowth.exactalg import (FactoredDenominator, IntPoly, cyclotomic,
                              lcm_factor_products, lcm_int, mat_det,
                              one_minus_t_pow, rat, rational_reduce,
                              series_coefficients, solve_linear)

t = sympy.symbols("t")


def to_sympy(p: IntPoly):
    return sympy.Poly(list(reversed(p.coeffs)), t) if p.coeffs else sympy.Poly(0, t)


coeffs_st = st.lists(st.integers(-9, 9), min_size=0, max_size=8)


@given(coeffs_st, coeffs_st)
def test_poly_ring_ops_match_sympy(a, b):
    p, q = IntPoly(a), IntPoly(b)
    assert to_sympy(p + q) == to_sympy(p) + to_sympy(q)
    assert to_sympy(p - q) == to_sympy(p) - to_sympy(q)
    assert to_sympy(p * q) == to_sympy(p) * to_sympy(q)


@given(coeffs_st, coeffs_st, st.integers(0, 10))
def test_truncmul_is_truncated_product(a, b, n):
    p, q = IntPoly(a), IntPoly(b)
    full = p * q
    trunc = p.truncmul(q, n)
    assert trunc == IntPoly(full.coeffs[:n + 1])


@given(coeffs_st, coeffs_st)
def test_divmod_exact_roundtrip(a, b):
    p, q = IntPoly(a), IntPoly(b)
    if q.is_zero() or abs(q.coeffs[-1]) != 1:
        return
    quo, rem = p.divmod_exact(q)
    assert quo * q + rem == p
    assert rem.degree < q.degree or rem.is_zero()


def test_cyclotomic_against_sympy():
    for d in range(1, 40):
        ours = to_sympy(cyclotomic(d))
        assert ours == sympy.Poly(sympy.cyclotomic_poly(d, t), t), d


def test_factored_denominator_expands_to_product():
    den = FactoredDenominator([2, 3, 3])
    prod = one_minus_t_pow(2) * one_minus_t_pow(3) * one_minus_t_pow(3)
    assert den.expand() == prod
    assert den.degree == 8


def _expanded(den):
    return den.expand() if isinstance(den, FactoredDenominator) else den


def test_lcm_factor_products_covers_each_input():
    prods = [[2, 3], [4], [2, 2, 5]]
    den_poly = _expanded(lcm_factor_products(prods))
    for ps in prods:
        q, r = den_poly.divmod_exact(FactoredDenominator(ps).expand())
        assert r.is_zero(), ps


def test_lcm_factor_products_is_minimal():
    # the true polynomial lcm can have smaller degree than the
    # exponent-wise multiset union of the binomial factors, and need not
    # be a product of binomials at all
    prods = [[3, 18], [3, 20], [4, 8], [4, 9], [4, 22],
             [9, 36], [18, 36], [20, 42], [22, 42]]
    den = lcm_factor_products(prods)
    assert den.degree == 132
    den_poly = _expanded(den)
    assert den_poly[0] == 1
    for ps in prods:
        q, r = den_poly.divmod_exact(FactoredDenominator(ps).expand())
        assert r.is_zero(), ps
    lcm_sym = sympy.Poly(1, t)
    for ps in prods:
        lcm_sym = sympy.lcm(lcm_sym, to_sympy(FactoredDenominator(ps).expand()))
    assert sympy.degree(lcm_sym) == 132


@given(st.lists(st.lists(st.integers(-4, 4), min_size=1, max_size=3),
                min_size=1, max_size=6))
def test_solve_linear_matches_sympy(rows):
    n = len(rows[0])
    rows = [r[:n] + [0] * (n - len(r)) for r in rows]
    rhs = [sum(r) for r in rows]   # consistent by construction: x = all-ones
    frows = [[Fraction(x) for x in r] for r in rows]
    sol = solve_linear([r[:] for r in frows], [Fraction(x) for x in rhs])
    if sol is None:
        return
    for r, b in zip(frows, rhs):
        assert sum(c * x for c, x in zip(r, sol)) == b


def test_mat_det_matches_sympy():
    rows = [[Fraction(1), Fraction(2), Fraction(3)],
            [Fraction(0), Fraction(1, 2), Fraction(4)],
            [Fraction(-1), Fraction(5), Fraction(1)]]
    assert mat_det(rows) == sympy.Matrix(rows).det()


def test_series_coefficients_match_sympy_expansion():
    num = IntPoly([1, 2, 1])
    den = FactoredDenominator([1, 1])
    ours = series_coefficients(num, den, 10)
    expr = sympy.Poly([1, 2, 1][::-1], t).as_expr() / (1 - t) ** 2
    ref = sympy.series(expr, t, 0, 10).removeO().as_poly(t).all_coeffs()[::-1]
    assert ours == [int(x) for x in ref]


@given(coeffs_st, st.lists(st.integers(1, 5), min_size=1, max_size=3))
def test_rational_reduce_preserves_the_function(nc, factors):
    num = IntPoly(nc)
    den = FactoredDenominator(factors)
    num2, den2 = rational_reduce(num, den)
    den2poly = den2.expand() if isinstance(den2, FactoredDenominator) else den2
    # cross-multiplication: num * den2 == num2 * den
    assert num * den2poly == num2 * den.expand()


def test_rat_parses_strings_and_numbers():
    assert rat("3/4") == Fraction(3, 4)
    assert rat(2) == Fraction(2)
    assert lcm_int([4, 6]) == 12
