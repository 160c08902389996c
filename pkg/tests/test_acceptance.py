"""End-to-end acceptance: published reference values, one test per item.

Series comparisons are by cross-multiplication, so a fully reduced result
matches a reference display that still carries a common factor.
"""

import time
from fractions import Fraction

import pytest

from conftest import ALL_FIXTURES, analysis, ball30
from pgrowth import analyze_graph
from pgrowth.exactalg import FactoredDenominator, IntPoly
from pgrowth.geometry import triangulate_facets
from pgrowth.lattice import (growth_ball, naive_growth_terms,
                             translation_check)
from pgrowth.series import assemble_denominator

F = Fraction


def same_series(series, num_coeffs, orders):
    """Cross-multiplied equality against a reference num/(prod 1-t^a)."""
    ref_num = IntPoly(num_coeffs)
    ref_den = FactoredDenominator(orders).expand()
    ours_den = series.denominator
    if isinstance(ours_den, FactoredDenominator):
        ours_den = ours_den.expand()
    return series.numerator * ref_den == ref_num * ours_den


# -- 1: the 2-d uniform tilings table ---------------------------------------

TILING_SERIES = {
    "snub-square": [((0, 1, 2, 3), (1, 4, 6, 4, 1), [1, 3])],
    "cairo": [((0, 2), (1, 2, 1), [1, 1]),
              ((1, 3, 4, 5), (1, 2, 5, 4, 2, 3, 0, -1), [1, 4])],
    "truncated-square": [((0, 1, 2, 3), (1, 2, 2, 2, 1), [1, 3])],
    "rhombitrihexagonal": [((0, 1, 2, 3, 4, 5), (1, 2, 1), [1, 1])],
    "truncated-hexagonal": [((0, 1, 2, 3, 4, 5),
                             (1, 3, 4, 6, 6, 6, 6, 3, 3, 0, -2), [4, 4])],
    "snub-hexagonal": [((0, 1, 2, 3, 4, 5),
                        (1, 4, 4, 6, 4, 4, 1), [1, 5])],
    "floret": [((2,), (1, 6, 12, 10, 12, 12, 1), [3, 3]),
               ((4, 6), (1, 3, 6, 13, 15, 6, 4, 9, 0, 0, -3), [3, 3]),
               ((0, 1, 3, 5, 7, 8),
                (1, 3, 9, 13, 12, 9, 8, 4, -1, -2, -2), [3, 3])],
}


def test_criterion_1_uniform_tilings():
    for name, groups in TILING_SERIES.items():
        for classes, num, orders in groups:
            for cls in classes:
                t0 = time.monotonic()
                a = analysis(name, cls)
                elapsed = time.monotonic() - t0
                assert same_series(a.series, num, orders), (name, cls)
                assert elapsed < 120, (name, cls, elapsed)


# -- 2: the worked three-class example --------------------------------------

WORKED = "\n".join([
    "dim=2",
    "c=3",
    "edges=[[(1,(0,0)),(1,(-1,0)),(1,(-1,-1)),(2,(0,0))],"
    "[(0,(0,0)),(0,(1,0)),(0,(1,1)),(2,(0,0))],[(0,(0,0)),(1,(0,0))]]",
    "pos=[(0,0),(0.5,0.5),(0.5,0)]",
])


def test_criterion_2_worked_example():
    a = analyze_graph(WORKED, start_class=2)
    rep = a.report
    assert rep.C1 == 1
    assert rep.C2_prime == 3
    assert rep.cpx_values() == [2]
    assert rep.cpx_global == 2
    assert rep.epsilon == F(1, 2)
    for vd in rep.vertex_data:
        assert all(s == 2 for s in vd.s_by_family.values())
        for sc in vd.support.values():
            assert sc.a_of(vd.vertex) in (F(2, 3), F(1, 2))
    avals = sorted(sc.a_of(vd.vertex) for vd in rep.vertex_data
                   for sc in vd.support.values())
    assert avals.count(F(1, 2)) == 4 and avals.count(F(2, 3)) == 8
    assert sorted(rep.beta_by_simplex.values()) == [18, 18, 18, 18, 22, 22]
    assert rep.beta == 25
    assert same_series(a.series, (1, 2, 2, 8, 5, 2, -2), [2, 2])


# -- 3: the three-layer tiling ----------------------------------------------

def test_criterion_3_three_uniform():
    a = analysis("three-uniform", 7)
    rep = a.report
    assert rep.cpx_values() == [4, 7, 11]
    assert rep.C2_prime == 13
    svals = sorted({s for vd in rep.vertex_data
                    for s in vd.s_by_family.values()})
    assert svals == [20, 42, 86, 108]
    # the defect constant is kept rational by policy; the sandwich checks
    # of the property suite certify it instead of the closed form
    assert isinstance(rep.C1, F) and 0 < rep.C1 < 1
    den = assemble_denominator(rep)
    gamma = int(rep.beta) + den.degree
    assert a.series.gamma == gamma
    assert len(a.terms) == gamma + 1 + 100
    assert same_series(a.series,
                       (1, 5, 12, 17, 22, 21, 21, 22, 17, 12, 5, 1), [4, 7])
    assert a.quasi.period == 28
    assert a.quasi.threshold <= 1
    for i in range(1, len(a.terms)):
        assert a.quasi(i) == a.terms[i]


# -- 4: the eleven-class tiling ---------------------------------------------

SIX_UNIFORM = {
    4: ((1, 5, 10, 10, 5, -4, -9, -12, -6, 0, -6, -12, -9, -4, 5, 10, 10,
         5, 1), [2, 3, 4, 9]),
    3: ((1, 6, 10, 15, 14, 7, -5, -15, -15, -11, -14, -11, -15, -15, -5, 7,
         14, 15, 10, 6, 1), [3, 4, 4, 9]),
    6: ((1, 6, 9, 10, 6, -7, -9, -10, -6, 0, -6, -10, -9, -7, 6, 10, 9, 6,
         1), [2, 3, 4, 9]),
    5: ((1, 5, 10, 16, 14, 6, -3, -12, -18, -13, -13, -11, -14, -14, -6, 3,
         11, 19, 13, 6, 2, -1, -1), [3, 4, 4, 9]),
    1: ((1, 5, 10, 9, 4, -1, -10, -9, -5, -8, -4, -8, -10, -3, 2, 8, 11, 6,
         3, 0, 0, -1), [2, 3, 4, 9]),
    0: ((1, 6, 10, 13, 16, 6, -4, -12, -17, -13, -12, -11, -15, -12, -8, 2,
         14, 15, 12, 10, 1, 0, -2), [3, 4, 4, 9]),
}


def test_criterion_4_six_uniform():
    t0 = time.monotonic()
    for cls, (num, orders) in SIX_UNIFORM.items():
        a = analysis("six-uniform-673", cls)
        assert same_series(a.series, num, orders), cls
        assert a.report.C2_prime == 11
    den = assemble_denominator(analysis("six-uniform-673", 0).report)
    assert den.degree == 132
    assert time.monotonic() - t0 < 3600


# -- 5 and 6: the three-dimensional nets ------------------------------------

def test_criterion_5_k6_net():
    t0 = time.monotonic()
    a = analysis("k6", 0)
    rep = a.report
    assert rep.cpx_values() == [4, 6, 12]
    assert rep.C1 == F(1, 2)
    assert rep.C2_prime == 13
    assert rep.beta == 396
    svals = sorted(s for vd in rep.vertex_data
                   for s in vd.s_by_family.values())
    assert set(svals) == {6, 8, 24}
    avals = {sc.a_of(vd.vertex) for vd in rep.vertex_data
             for sc in vd.support.values()}
    assert avals == {F(4, 5), F(6, 7), F(12, 13)}
    hvals = {sc.h for vd in rep.vertex_data for sc in vd.support.values()}
    assert hvals == {F(4, 5), F(6, 7)}
    assert same_series(a.series,
                       (1, 4, 8, 14, 23, 34, 31, 28, 4, -4, 1, -8, 8),
                       [3, 3, 4])
    assert a.quasi.period == 12
    assert a.quasi.threshold == 3
    assert time.monotonic() - t0 < 1800


def test_criterion_6_cfs_net():
    t0 = time.monotonic()
    a = analysis("cfs", 0)
    rep = a.report
    assert rep.cpx_values() == [3, 4, 6, 12]
    assert rep.C1 == F(3, 5)
    assert rep.C2_prime == 7
    assert rep.beta == 210
    assert same_series(a.series,
                       (1, 4, 12, 25, 38, 52, 54, 44, 27, 8, 0, -1, 2, 2),
                       [3, 4, 4])
    assert a.quasi.period == 12
    assert a.quasi.threshold == 3
    assert time.monotonic() - t0 < 900


# -- 7: the per-fixture property suite --------------------------------------

STARTS = {"three-uniform": 7}


def _suite_analysis(name):
    return analysis(name, STARTS.get(name, 0))


def _check_oracle_equivalence(a):
    got = naive_growth_terms(a.graph, a.start_class, 12)
    assert got == a.terms[:13]


def _check_translation(a):
    depth = min(int(a.report.beta), len(a.terms) - 26)
    radius = min(depth + 25, len(a.terms) - 1)
    ball = growth_ball(a.graph, a.polytope, a.start_class, radius,
                       a.report.C1, max_memory_gb=4.0)
    n = translation_check(a.graph, a.polytope, a.triangulations, a.report,
                          ball, a.start_class, n_samples=100,
                          min_depth=max(0, radius - 20))
    assert n >= 100, n


def _check_prediction(a):
    assert a.extra_verified >= 100


def _check_gauge_sandwich(a, ball):
    base = a.graph.pos[a.start_class]
    c1, c2p = a.report.C1, a.report.C2_prime
    for idx in ball.settled_indices():
        cls, off = ball.offset_of(idx)
        d = ball.distance(cls, off)
        phi = tuple(a.graph.pos[cls][k] + off[k] - base[k]
                    for k in range(a.graph.dim))
        gauge = a.polytope.gauge(phi)
        assert gauge - c1 <= d <= gauge + c2p, (cls, off)


def _check_triangulation_conditions(a):
    from itertools import product as iproduct

    from test_geometry import point_in_hull
    from pgrowth.geometry import halfspace_families

    # re-verify the face-compatibility condition from scratch
    triangulate_facets(a.polytope)
    # and the choice-function property of the half-space families
    for ft in a.triangulations:
        for s in ft.simplices:
            for v in s:
                fams = halfspace_families(a.polytope, ft.facet, v)
                for choice in iproduct(*[sorted(f) for f in fams]):
                    assert point_in_hull(v, set(choice), a.graph.dim)


def _check_reconstruction_identity(a):
    den = a.series.denominator
    if isinstance(den, FactoredDenominator):
        den = den.expand()
    gamma = a.series.gamma
    prod = den.truncmul(IntPoly(a.terms[:gamma + 1]), gamma)
    assert prod == a.series.numerator


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_criterion_7_property_suite(name):
    a = _suite_analysis(name)
    _check_oracle_equivalence(a)
    _check_translation(a)
    _check_prediction(a)
    _check_gauge_sandwich(a, ball30(name, a.start_class))
    _check_triangulation_conditions(a)
    _check_reconstruction_identity(a)


# -- 8: oracle-derived closed forms -----------------------------------------

def test_criterion_8_derived_closed_forms():
    sq = analysis("square")
    # ground truth from the naive oracle, not a hard-coded constant
    oracle = naive_growth_terms(sq.graph, 0, 30)
    assert sq.series.coefficients(31) == oracle
    assert same_series(sq.series, (1, 2, 1), [1, 1])
    hc = analysis("honeycomb")
    oracle = naive_growth_terms(hc.graph, 0, 30)
    assert hc.series.coefficients(31) == oracle
    assert same_series(hc.series, (1, 1, 1), [1, 1])
