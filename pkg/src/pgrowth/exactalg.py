"""Exact arithmetic kernel: rationals, small linear algebra, integer
polynomials and factored denominators of the form prod (1 - t^a).

Everything in this module is exact.  Rationals are `fractions.Fraction`,
polynomials are immutable tuples of Python ints in ascending degree order.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

Rat = Fraction


def rat(value) -> Fraction:
    """Parse a rational from an int, a Fraction or a 'p/q' string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floating point input is not accepted: %r" % (value,))
    raise TypeError("cannot interpret %r as a rational" % (value,))


# ---------------------------------------------------------------------------
# small exact vector / matrix helpers (dimension <= 3 plus one homogeneous row)
# ---------------------------------------------------------------------------

def vec(*xs) -> tuple:
    return tuple(Fraction(x) for x in xs)


def vadd(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vsub(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vscale(c, a: Sequence[Fraction]) -> tuple:
    c = Fraction(c)
    return tuple(c * x for x in a)


def vdot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b, strict=True)), Fraction(0))


def cross2(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def cross3(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def solve_linear(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
    """Solve A x = b exactly by Gaussian elimination.

    Returns the solution tuple when the system has a unique solution,
    and None when it is singular or inconsistent.
    """
    m = len(rows)
    if m == 0:
        return ()
    n = len(rows[0])
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    piv_cols = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][col]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv_cols.append(col)
        r += 1
        if r == m:
            break
    # inconsistent?
    for i in range(r, m):
        if a[i][n] != 0:
            return None
    if len(piv_cols) != n:
        return None  # no unique solution
    x = [Fraction(0)] * n
    for i, col in enumerate(piv_cols):
        x[col] = a[i][n]
    return tuple(x)


def mat_det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(rows)
    if n == 1:
        return Fraction(rows[0][0])
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        return vdot(rows[0], cross3(rows[1], rows[2]))
    raise ValueError("determinant only for n <= 3")


def lcm_int(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


# ---------------------------------------------------------------------------
# integer polynomials
# ---------------------------------------------------------------------------

def _strip(coeffs) -> tuple:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class IntPoly:
    """Dense polynomial with integer coefficients, ascending degree order.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = _strip(coeffs)
        for c in cs:
            if not isinstance(c, int):
                raise TypeError("IntPoly coefficients must be ints, got %r" % (c,))
        self.coeffs = cs

    # -- basics ------------------------------------------------------------
    @classmethod
    def monomial(cls, coeff: int, deg: int) -> "IntPoly":
        return cls([0] * deg + [coeff])

    @classmethod
    def one(cls) -> "IntPoly":
        return cls([1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __repr__(self):
        return "IntPoly(%r)" % (list(self.coeffs),)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mag = "" if abs(c) == 1 else str(abs(c)) + "*"
                term = "%st^%d" % (mag, i) if i > 1 else "%st" % mag
                parts.append(("+ " if c > 0 else "- ") + term
                             if parts else ("-" + term if c < 0 else term))
        return " ".join(parts) or "0"

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly([self[i] + other[i] for i in range(n)])

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly([self[i] - other[i] for i in range(n)])

    def __neg__(self) -> "IntPoly":
        return IntPoly([-c for c in self.coeffs])

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly([other * c for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        # iterate over the sparser factor
        a, b = self.coeffs, other.coeffs
        if sum(1 for c in a if c) > sum(1 for c in b if c):
            a, b = b, a
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] += ca * cb
        return IntPoly(out)

    __rmul__ = __mul__

    def truncmul(self, other: "IntPoly", max_deg: int) -> "IntPoly":
        """Product truncated to degree <= max_deg."""
        out = [0] * (max_deg + 1)
        a, b = self.coeffs, other.coeffs
        if sum(1 for c in a if c) > sum(1 for c in b if c):
            a, b = b, a
        for i, ca in enumerate(a):
            if ca and i <= max_deg:
                top = min(len(b), max_deg + 1 - i)
                for j in range(top):
                    cb = b[j]
                    if cb:
                        out[i + j] += ca * cb
        return IntPoly(out)

    def divmod_exact(self, other: "IntPoly"):
        """Quotient and remainder, defined when the division stays integral.

        Valid whenever `other` has leading coefficient +-1 (our divisors
        always do).  Raises ValueError otherwise.
        """
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead = other.coeffs[-1]
        if lead not in (1, -1):
            raise ValueError("divisor must have unit leading coefficient")
        rem = list(self.coeffs)
        dq = len(self.coeffs) - len(other.coeffs)
        if dq < 0:
            return IntPoly(), self
        quot = [0] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + other.degree]
            if c:
                q = c * lead  # c / lead with lead = +-1
                quot[k] = q
                for j, oc in enumerate(other.coeffs):
                    rem[k + j] -= q * oc
        return IntPoly(quot), IntPoly(rem)

    def divides(self, other: "IntPoly") -> bool:
        """True when self divides other exactly."""
        if self.is_zero():
            return other.is_zero()
        _, r = other.divmod_exact(self)
        return r.is_zero()

    def exact_div(self, other: "IntPoly") -> "IntPoly":
        q, r = self.divmod_exact(other)
        if not r.is_zero():
            raise ValueError("division is not exact")
        return q

    def __call__(self, x):
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def latex(self, var: str = "t") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                term = str(c)
            else:
                mag = "" if abs(c) == 1 else str(abs(c))
                pw = var if i == 1 else "%s^{%d}" % (var, i)
                term = ("-" if c < 0 else "") + mag + pw
                if c < 0:
                    parts.append(term if not parts else "- " + term[1:])
                    continue
            parts.append(term)
        out = parts[0]
        for p in parts[1:]:
            out += " " + p if p.startswith("- ") else " + " + p
        return out


def poly_truncmul(p: IntPoly, q: IntPoly, max_deg: int) -> IntPoly:
    return p.truncmul(q, max_deg)


def one_minus_t_pow(a: int) -> IntPoly:
    """The binomial 1 - t^a."""
    if a < 1:
        raise ValueError("exponent must be >= 1")
    return IntPoly([1] + [0] * (a - 1) + [-1])


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> IntPoly:
    """The d-th cyclotomic polynomial (monic, integer coefficients)."""
    if d < 1:
        raise ValueError("d must be >= 1")
    num = IntPoly([-1] + [0] * (d - 1) + [1])  # t^d - 1
    for e in range(1, d):
        if d % e == 0:
            num = num.exact_div(cyclotomic(e))
    return num


class FactoredDenominator:
    """A denominator kept as a multiset of exponents a, meaning prod (1-t^a)."""

    __slots__ = ("factors",)

    def __init__(self, factors: Iterable[int] = ()):
        fs = sorted(int(a) for a in factors)
        if any(a < 1 for a in fs):
            raise ValueError("factor exponents must be >= 1")
        self.factors = tuple(fs)

    @property
    def degree(self) -> int:
        return sum(self.factors)

    def expand(self) -> IntPoly:
        out = IntPoly.one()
        for a in self.factors:
            out = out * one_minus_t_pow(a)
        return out

    def cyclotomic_multiplicities(self) -> dict:
        mult: dict[int, int] = {}
        for a in self.factors:
            for d in range(1, a + 1):
                if a % d == 0:
                    mult[d] = mult.get(d, 0) + 1
        return mult

    def __eq__(self, other):
        return isinstance(other, FactoredDenominator) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        return "FactoredDenominator(%r)" % (list(self.factors),)

    def __str__(self):
        if not self.factors:
            return "1"
        return "".join("(1-t^%d)" % a if a > 1 else "(1-t)"
                       for a in self.factors)

    def latex(self, var: str = "t") -> str:
        if not self.factors:
            return "1"
        from collections import Counter
        parts = []
        for a, k in sorted(Counter(self.factors).items()):
            base = "(1 - %s)" % var if a == 1 else "(1 - %s^{%d})" % (var, a)
            parts.append(base if k == 1 else base + "^{%d}" % k)
        return "".join(parts)


def _binomials_from_mult(mult: dict):
    """Greedy re-expression of prod Phi_d^mult[d] as a multiset of binomial
    exponents a (meaning prod (1 - t^a) up to sign), largest first.
    Returns the exponent list, or None when the greedy walk gets stuck."""
    remaining = {d: k for d, k in mult.items() if k > 0}
    factors = []
    a = sum(d * k for d, k in remaining.items())  # degree bound
    while a >= 1 and remaining:
        divisors = [d for d in range(1, a + 1) if a % d == 0]
        if all(remaining.get(d, 0) >= 1 for d in divisors):
            for d in divisors:
                remaining[d] -= 1
                if remaining[d] == 0:
                    del remaining[d]
            factors.append(a)
            a = min(a, sum(d * k for d, k in remaining.items()))
        else:
            a -= 1
    return factors if not remaining else None


def _totient(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def cyclotomic_multiplicities_of(poly: IntPoly) -> dict:
    """Factor a polynomial known to be a product of cyclotomics (times a
    unit) into its multiplicities {d: k}; raises ArithmeticError if a
    non-cyclotomic part remains."""
    mult: dict[int, int] = {}
    rem = poly
    if rem[0] < 0:
        rem = -rem
    # deg Phi_d = phi(d) >= sqrt(d/2), so any factor satisfies
    # d <= 2 * deg(poly)^2
    bound = 2 * max(rem.degree, 1) ** 2
    d = 1
    while rem.degree > 0:
        if d > bound:
            raise ArithmeticError("polynomial has a non-cyclotomic factor")
        if _totient(d) <= rem.degree:
            phi = cyclotomic(d)
            while rem.degree >= phi.degree:
                q, r = rem.divmod_exact(phi)
                if not r.is_zero():
                    break
                rem = q
                mult[d] = mult.get(d, 0) + 1
        d += 1
    if abs(rem[0]) != 1:
        raise ArithmeticError("polynomial has a non-cyclotomic factor")
    return mult


def expand_cyclotomic_mult(mult: dict) -> IntPoly:
    """prod Phi_d^mult[d], sign-normalized to constant term +1."""
    out = IntPoly.one()
    for d, k in sorted(mult.items()):
        for _ in range(k):
            out = out * cyclotomic(d)
    if out[0] < 0:
        out = -out
    return out


def lcm_factor_products(products: Sequence[Iterable[int]]):
    """Least common multiple of several products prod (1 - t^a).

    The inputs are compared through their cyclotomic multiplicities and
    the per-factor maximum is taken, giving the minimal-degree common
    multiple.  The result is a FactoredDenominator when it can be written
    as a product of binomials again; otherwise the expanded polynomial
    (constant term +1) is returned.
    """
    need: dict[int, int] = {}
    for p in products:
        have = FactoredDenominator(p).cyclotomic_multiplicities()
        for d, k in have.items():
            if need.get(d, 0) < k:
                need[d] = k
    factors = _binomials_from_mult(need)
    if factors is not None:
        return FactoredDenominator(factors)
    return expand_cyclotomic_mult(need)


def rational_reduce(numerator: IntPoly, denominator):
    """Cancel common factors of numerator / denominator over Q[t].

    The denominator is a product of cyclotomic polynomials — either a
    FactoredDenominator (product of binomials 1 - t^a) or an IntPoly with
    constant term +1; cancellation therefore reduces to dividing out
    common cyclotomic powers.  Afterwards the reduced denominator is
    greedily re-expressed as a product of binomials, trying the largest
    exponent first.  Returns a pair (reduced_numerator,
    reduced_denominator) where the denominator is a FactoredDenominator
    when the re-expression succeeds and an IntPoly with constant term 1
    otherwise.
    """
    if numerator.is_zero():
        return IntPoly(), FactoredDenominator()
    if isinstance(denominator, FactoredDenominator):
        mult = denominator.cyclotomic_multiplicities()
        den_expanded = denominator.expand()
    else:
        den_expanded = denominator
        if den_expanded[0] != 1:
            raise ValueError("denominator constant term must be +1")
        mult = cyclotomic_multiplicities_of(den_expanded)
    num = numerator
    for d in sorted(mult):
        phi = cyclotomic(d)
        while mult[d] > 0:
            q, r = num.divmod_exact(phi)
            if not r.is_zero():
                break
            num = q
            mult[d] -= 1
    mult = {d: k for d, k in mult.items() if k > 0}
    factors = _binomials_from_mult(mult)
    if factors is not None:
        den = FactoredDenominator(factors)
        den_poly = den.expand()
    else:
        # product of the remaining cyclotomics, normalised so the
        # denominator has constant term +1
        den = den_poly = expand_cyclotomic_mult(mult)
    # cancellation tracked the numerator only up to the sign convention of
    # the denominator; settle it by cross-multiplication
    if numerator * den_poly != num * den_expanded:
        num = -num
    _check_cross(numerator, den_expanded, num, den_poly)
    return num, den


def _check_cross(num_a: IntPoly, den_a: IntPoly, num_b: IntPoly, den_b: IntPoly):
    if num_a * den_b != num_b * den_a:
        raise AssertionError("rational_reduce produced an inequivalent fraction")


def series_coefficients(numerator: IntPoly, denominator, n_terms: int) -> list:
    """First n_terms coefficients of numerator / denominator as a power series.

    The denominator may be a FactoredDenominator or an IntPoly with
    constant term +-1; coefficients come out as exact ints.
    """
    den = denominator.expand() if isinstance(denominator, FactoredDenominator) else denominator
    d0 = den[0]
    if d0 not in (1, -1):
        raise ValueError("denominator constant term must be a unit")
    dens = [(i, c) for i, c in enumerate(den.coeffs) if i > 0 and c]
    out = []
    for i in range(n_terms):
        acc = numerator[i]
        for j, c in dens:
            if j > i:
                break
            acc -= c * out[i - j]
        out.append(acc * d0)
    return out
