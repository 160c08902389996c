"""Windowed distance computation and exact defect search."""

from fractions import Fraction

import pytest

from conftest import analysis, ball30, fixture_graph
from pgrowth.cycles import build_nu_table
from pgrowth.geometry import build_growth_polytope
from pgrowth.invariants import compute_C1
from pgrowth.lattice import (WindowTooLarge, compute_C2_exact, growth_ball,
                             growth_terms, max_defect, naive_growth_terms,
                             window_bounds)

F = Fraction


def setup(name, start=0):
    g = fixture_graph(name)
    nu = build_nu_table(g)
    P = build_growth_polytope(list(nu.points))
    return g, P, compute_C1(g, P, nu, start)


def test_square_terms():
    g, P, c1 = setup("square")
    assert growth_terms(g, P, 0, 5, c1) == [1, 4, 8, 12, 16, 20]
    assert naive_growth_terms(g, 0, 3) == [1, 4, 8, 12]


def test_honeycomb_terms():
    g, P, c1 = setup("honeycomb")
    assert naive_growth_terms(g, 0, 3) == [1, 3, 6, 9]
    assert growth_terms(g, P, 0, 3, c1) == [1, 3, 6, 9]


def test_ball_index_roundtrip():
    g, P, c1 = setup("cairo")
    ball = growth_ball(g, P, 0, 6, c1)
    for idx in ball.settled_indices()[:50]:
        cls, off = ball.offset_of(idx)
        assert ball.index_of(cls, off) == idx


def test_window_bounds_grow_with_radius():
    g, P, c1 = setup("snub-square")
    b1 = window_bounds(g, P, 0, 5, c1)
    b2 = window_bounds(g, P, 0, 15, c1)
    assert all(x <= y for x, y in zip(b1, b2))


def test_memory_budget_enforced():
    g, P, c1 = setup("k6")
    with pytest.raises(WindowTooLarge):
        growth_ball(g, P, 0, 400, c1, max_memory_gb=0.001)


def test_square_defect_is_zero():
    g, P, c1 = setup("square")
    value, vertex, _ = compute_C2_exact(g, P, 0, 12, c1)
    assert value == 0
    assert c1 == 0


def test_defect_between_zero_and_c2_prime():
    for name, start in (("snub-square", 0), ("cairo", 0), ("k6", 0)):
        a = analysis(name, start)
        ball = ball30(name, start)
        value, vertex = max_defect(a.graph, a.polytope, ball, start)
        assert 0 <= value <= a.report.C2_prime, name


def test_k6_known_sequence():
    g, P, c1 = setup("k6")
    want = [1, 4, 8, 16, 32, 54, 70, 102, 128, 158, 212, 236, 282, 356]
    assert growth_terms(g, P, 0, 13, c1) == want


def test_cfs_known_sequence():
    g, P, c1 = setup("cfs")
    want = [1, 4, 12, 26, 44, 72, 104, 138, 178, 228]
    assert growth_terms(g, P, 0, 9, c1) == want
