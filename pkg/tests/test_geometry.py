"""Growth polytope, gauge, triangulations and support half-spaces."""

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import fixture_graph
from pgrowth.cycles import build_nu_table
from pgrowth.exactalg import vdot
from pgrowth.geometry import (GeometryError, build_growth_polytope,
                              halfspace_families, support_coefficients,
                              triangulate_facets)

F = Fraction


def polytope_of(name):
    g = fixture_graph(name)
    nu = build_nu_table(g)
    return g, nu, build_growth_polytope(list(nu.points))


def test_square_polytope_is_cross_polytope():
    _, _, P = polytope_of("square")
    assert sorted(P.vertices) == [(-1, 0), (0, -1), (0, 1), (1, 0)]
    assert P.gauge((F(1), F(1))) == 2
    assert P.gauge((F(1, 2), F(0))) == F(1, 2)


def test_gauge_is_a_norm_on_samples():
    _, _, P = polytope_of("snub-square")
    pts = [(F(1), F(2)), (F(-1, 3), F(5, 7)), (F(0), F(-2))]
    for y in pts:
        gy = P.gauge(y)
        assert gy > 0
        # homogeneity
        assert P.gauge(tuple(3 * x for x in y)) == 3 * gy
        # unit ball membership
        assert P.contains(tuple(x / gy for x in y))
    # subadditivity on the sample pairs
    for y, z in product(pts, pts):
        s = tuple(a + b for a, b in zip(y, z))
        assert P.gauge(s) <= P.gauge(y) + P.gauge(z)


def test_origin_must_be_interior():
    with pytest.raises(GeometryError):
        build_growth_polytope([(F(1), F(0)), (F(2), F(1)), (F(1), F(1))])


def test_facet_points_lie_on_their_plane():
    for name in ("snub-square", "cairo", "k6"):
        _, _, P = polytope_of(name)
        for f in P.facets:
            for p in f.points:
                assert vdot(f.normal, p) == 1
            for v in f.vertices:
                assert v in P.vertices


def test_triangulations_partition_facets():
    for name in ("cairo", "truncated-hexagonal", "cfs"):
        _, _, P = polytope_of(name)
        tris = triangulate_facets(P)
        assert len(tris) == len(P.facets)
        for ft in tris:
            for s in ft.simplices:
                assert len(s) == P.dim


def test_bad_triangulation_override_rejected():
    _, _, P = polytope_of("square")
    f = P.facets[0]
    # a "triangulation" that misses part of the facet segment
    mid = tuple((a + b) / 2 for a, b in zip(*f.vertices))
    override = {tuple(f.normal): [[f.vertices[0], mid]]}
    with pytest.raises(GeometryError):
        triangulate_facets(P, override)


def point_in_hull(v, pts, dim):
    """Exact convex-hull membership via a tiny vertex-enumeration check."""
    from pgrowth.exactalg import solve_linear
    pts = list(pts)
    if len(pts) == 1:
        return v == pts[0]
    for combo in product(pts, repeat=min(dim + 1, len(pts))):
        uniq = list(dict.fromkeys(combo))
        k = len(uniq)
        rows = [[uniq[j][i] for j in range(k)] for i in range(len(v))]
        rows.append([F(1)] * k)
        sol = solve_linear(rows, list(v) + [F(1)])
        if sol is not None and all(x >= 0 for x in sol):
            return True
    return False


@pytest.mark.parametrize("name", ["snub-square", "cairo", "k6", "cfs"])
def test_halfspace_family_choice_property(name):
    # for every choice of one point per family, the vertex lies in the
    # convex hull of the chosen points
    g, nu, P = polytope_of(name)
    tris = triangulate_facets(P)
    for ft in tris:
        seen = set()
        for s in ft.simplices:
            for v in s:
                if v in seen:
                    continue
                seen.add(v)
                fams = halfspace_families(P, ft.facet, v)
                if v in set(nu.points):
                    for f in fams:
                        assert v in f
                for choice in product(*[sorted(f) for f in fams]):
                    assert point_in_hull(v, set(choice), g.dim), (v, choice)


def test_k6_midpoint_families():
    _, _, P = polytope_of("k6")
    tris = triangulate_facets(P)
    found = False
    for ft in tris:
        pts = set(ft.facet.points)
        extras = pts - set(ft.facet.vertices)
        for mid in extras:
            fams = halfspace_families(P, ft.facet, mid)
            # the edge midpoint sits between two facet vertices: each of
            # its two minimal families is {endpoint, midpoint}
            assert len(fams) == 2
            for f in fams:
                assert len(f) == 2 and mid in f
            found = True
    assert found


def test_support_coefficients_bound_the_polytope():
    for name in ("snub-square", "cairo"):
        g, nu, P = polytope_of(name)
        tris = triangulate_facets(P)
        for ft in tris:
            for s in ft.simplices:
                for v in s:
                    for f in halfspace_families(P, ft.facet, v):
                        sc = support_coefficients(P, ft.facet, s, v, f,
                                                  F(1, 2))
                        a_v = sc.a_of(v)
                        assert 0 < a_v < 1
                        # h P lies inside the half-space
                        for p in P.vertices:
                            assert vdot(sc.w, tuple(sc.h * x for x in p)) <= 1
                        # the scaled simplex vertices are on its boundary
                        for q in s:
                            aq = sc.a_of(q)
                            assert vdot(sc.w, tuple(aq * x for x in q)) == 1
