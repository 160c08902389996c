"""Quotient cycle enumeration and the normalized displacement table."""

from fractions import Fraction

import pytest

from conftest import fixture_graph
from pgrowth.cycles import (Cycle, CycleOverflow, build_nu_table,
                            enumerate_cycles, rotations)
from pgrowth.geometry import build_growth_polytope


def brute_cycles(g, max_len=None):
    """Reference enumeration: depth-first over simple quotient cycles,
    one representative per rotation class."""
    reps = set()
    c = g.n_classes
    for start in range(c):
        stack = [((start,), (0,) * g.dim, 0, ())]
        while stack:
            classes, disp, w, eids = stack.pop()
            cur = classes[-1]
            for ei, e in enumerate(g.edges):
                if e.src != cur:
                    continue
                nxt = e.dst
                nd = tuple(a + b for a, b in zip(disp, e.shift))
                if nxt == start:
                    key = min((classes[i:] + classes[:i], )
                              for i in range(len(classes)))[0]
                    reps.add((key, nd, w + e.weight))
                elif nxt not in classes and nxt > start:
                    stack.append((classes + (nxt,), nd, w + e.weight, eids))
    return reps


def test_square_cycle_displacements():
    g = fixture_graph("square")
    cycles = enumerate_cycles(g)
    nus = sorted(c.nu for c in cycles)
    assert nus == [(-1, 0), (0, -1), (0, 1), (1, 0)]
    assert all(c.weight == 1 for c in cycles)


def test_square_hull_min_weights():
    g = fixture_graph("square")
    nu = build_nu_table(g)
    P = build_growth_polytope(list(nu.points))
    for v in P.vertices:
        assert nu.min_weight(v) == 1


def test_honeycomb_cycle_lengths():
    g = fixture_graph("honeycomb")
    nu = build_nu_table(g)
    # every nonzero displacement comes from hexagon walks of length 2
    # in the quotient (out and back through the other class)
    for p in nu.points:
        assert nu.min_weight(p) == 2


@pytest.mark.parametrize("name", ["square", "honeycomb", "snub-square"])
def test_enumeration_matches_brute_force(name):
    g = fixture_graph(name)
    ours = {(c.nu, c.weight) for c in enumerate_cycles(g)}
    ref = {(tuple(Fraction(d, w) for d in disp), w)
           for (_, disp, w) in brute_cycles(g) if any(disp)}
    # same set of (normalized displacement, weight) pairs for nonzero
    # displacements
    ours_nz = {(n, w) for (n, w) in ours if any(n)}
    assert ours_nz == ref


def test_rotations_identify_cyclic_shifts():
    c = Cycle(edge_ids=(0, 1, 2), classes=(0, 1, 2), weight=3, mu=(1, 0),
              support=frozenset({0, 1, 2}))
    rots = list(rotations(c))
    assert len(rots) == 3


def test_nu_table_counts_on_wakatsuki_start():
    g = fixture_graph("snub-square")
    nu = build_nu_table(g)
    for p in nu.points:
        # num counts rotation classes; must be consistent with lengths
        for d in nu.lengths(p):
            assert nu.num(p, d) >= 1
            assert nu.supports(p, d)


def test_cycle_cap_enforced():
    g = fixture_graph("snub-hexagonal")
    with pytest.raises(CycleOverflow):
        list(enumerate_cycles(g, cap=3))
