"""Reconstruction of the growth generating function and quasi-polynomial.

Given the certified truncation degree and a denominator assembled from the
vertex periods, the generating function is recovered by one exact truncated
multiplication; extra terms of the product must vanish, which is checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exactalg import (FactoredDenominator, IntPoly,
                       cyclotomic_multiplicities_of, lcm_factor_products,
                       poly_truncmul, rational_reduce, series_coefficients)


@dataclass
class GrowthSeries:
    numerator: IntPoly
    denominator: FactoredDenominator
    gamma: int                  # truncation degree used
    beta: Fraction
    extra_checked: int

    def coefficients(self, n_terms):
        return series_coefficients(self.numerator, self.denominator, n_terms)

    def latex(self):
        return r"\frac{%s}{%s}" % (self.numerator.latex(),
                                   self.denominator.latex())

    def __str__(self):
        return "(%s) / %s" % (self.numerator, self.denominator)

    def as_dict(self):
        if isinstance(self.denominator, FactoredDenominator):
            den = list(self.denominator.factors)
        else:
            den = list(self.denominator.coeffs)
        return {
            "numerator": list(self.numerator.coeffs),
            "denominator": den,
            "gamma": self.gamma,
            "beta": str(self.beta),
            "extra_checked": self.extra_checked,
        }


def assemble_denominator(report) -> FactoredDenominator:
    """Common multiple of the per-simplex products prod_v (1 - t^cpx(v))."""
    products = list(report.simplex_cpx_products().values())
    return lcm_factor_products(products)


def reconstruct_series(terms, report, denominator=None):
    """Exact generating function from enough initial terms.

    `terms` must reach index gamma where gamma = floor(beta) +
    deg(denominator); all terms beyond gamma verify the reconstruction."""
    if denominator is None:
        denominator = assemble_denominator(report)
    gamma = math.floor(report.beta) + denominator.degree
    if len(terms) < gamma + 1:
        raise ValueError("need %d terms, got %d" % (gamma + 1, len(terms)))
    den_poly = (
        denominator.expand()
        if isinstance(denominator, FactoredDenominator)
        else denominator
    )
    series = IntPoly(tuple(int(t) for t in terms))
    avail = len(terms) - 1
    product = poly_truncmul(den_poly, series, avail)
    raw = list(product.coeffs) + [0] * (avail + 1 - len(product.coeffs))
    extra_checked = 0
    for i in range(gamma + 1, avail + 1):
        if raw[i] != 0:
            raise ArithmeticError(
                "reconstruction failed: product coefficient %d is %d"
                % (i, raw[i]))
        extra_checked += 1
    numerator = IntPoly(tuple(raw[:gamma + 1]))
    num_r, den_r = rational_reduce(numerator, denominator)
    return GrowthSeries(num_r, den_r, gamma, report.beta, extra_checked)


def verify_prediction(series: GrowthSeries, terms):
    """All supplied exact terms must match the reconstructed function."""
    pred = series.coefficients(len(terms))
    for i, (a, b) in enumerate(zip(pred, terms)):
        if a != b:
            raise ArithmeticError(
                "series predicts s_%d = %d but the graph gives %d"
                % (i, a, b))
    return len(terms)


# ---------------------------------------------------------------------------
# quasi-polynomial form
# ---------------------------------------------------------------------------

@dataclass
class QuasiPolynomial:
    period: int
    threshold: int
    pieces: list            # pieces[r] = coefficients (Fraction), lowest first

    def __call__(self, i):
        coeffs = self.pieces[i % self.period]
        acc = Fraction(0)
        for c in reversed(coeffs):
            acc = acc * i + c
        return acc

    def as_dict(self):
        return {
            "period": self.period,
            "threshold": self.threshold,
            "pieces": [[str(c) for c in piece] for piece in self.pieces],
        }


def _denominator_orders(den):
    """Orders d of the cyclotomic factors Phi_d of the denominator.

    A FactoredDenominator lists binomial exponents directly; a plain
    polynomial (the fallback shape after reduction) is trial-divided."""
    if isinstance(den, FactoredDenominator):
        return list(den.factors)
    orders = []
    for d, k in sorted(cyclotomic_multiplicities_of(den).items()):
        orders.extend([d] * k)
    return orders


def extract_quasipolynomial(series: GrowthSeries, dim,
                            n_terms=None) -> QuasiPolynomial:
    """Eventual quasi-polynomial of the coefficient sequence, with the
    least period and the exact first index where it starts to hold."""
    N = 1
    for a in _denominator_orders(series.denominator):
        N = N * a // math.gcd(N, a)
    deg = dim - 1
    start = series.gamma + 1
    need = start + N * (deg + 2) + N
    if n_terms is not None:
        need = max(need, n_terms)
    terms = series.coefficients(need)
    pieces = []
    for r in range(N):
        xs, ys = [], []
        i = start + ((r - start) % N)
        while len(xs) < deg + 1:
            xs.append(i)
            ys.append(Fraction(terms[i]))
            i += N
        coeffs = _fit_poly(xs, ys)
        # verify one extra sample
        if _eval_poly(coeffs, i) != terms[i]:
            raise ArithmeticError("coefficients are not eventually "
                                  "quasi-polynomial at the expected degree")
        pieces.append(coeffs)
    period, pieces = _minimize_period(N, pieces)
    qp = QuasiPolynomial(period, 0, pieces)
    threshold = len(terms)
    for i in range(len(terms) - 1, -1, -1):
        if qp(i) != terms[i]:
            threshold = i + 1
            break
        threshold = i
    qp.threshold = threshold
    return qp


def _fit_poly(xs, ys):
    """Exact interpolating polynomial through the points (Newton form
    expanded to monomial coefficients, lowest first)."""
    n = len(xs)
    divided = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            divided[i] = (divided[i] - divided[i - 1]) / (xs[i] - xs[i - j])
    coeffs = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        # coeffs <- coeffs * (x - xs[k]) + divided[k]
        new = [Fraction(0)] * n
        for j in range(n - 1):
            new[j + 1] += coeffs[j]
            new[j] -= xs[k] * coeffs[j]
        new[0] += divided[k]
        coeffs = new
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _eval_poly(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _minimize_period(N, pieces):
    for p in sorted(_divisors(N)):
        ok = True
        for r in range(N):
            if pieces[r] != pieces[r % p]:
                ok = False
                break
        if ok:
            return p, pieces[:p]
    return N, pieces


def _divisors(n):
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return out
