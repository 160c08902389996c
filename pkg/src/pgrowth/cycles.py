"""Vertex-simple directed cycles of the quotient multigraph and the table
of normalized displacement points derived from them.

A cycle visits pairwise distinct classes; parallel edges and loops give
distinct cycles.  Each rotation class is emitted once, rotated so that the
cycle starts at its smallest class index (class indices along a
vertex-simple cycle are distinct, so this is well defined).  For
compatibility with conventions that treat every rotation as its own cycle,
`rotations` expands a cycle into all of its starts; none of the derived
invariants depend on the convention, because they only aggregate weight,
displacement and support.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import networkx as nx

from .graph import PeriodicGraph


class CycleOverflow(RuntimeError):
    pass


@dataclass(frozen=True)
class Cycle:
    edge_ids: tuple       # indices into graph.edges, in walk order
    classes: tuple        # visited classes, classes[k] = src of edge_ids[k]
    weight: int
    mu: tuple             # total displacement, integer vector
    support: frozenset    # set of visited classes

    @property
    def nu(self) -> tuple:
        return tuple(Fraction(m, self.weight) for m in self.mu)

    def __len__(self):
        return len(self.edge_ids)


def rotations(cycle: Cycle):
    """All rotations of a cycle (including itself)."""
    k = len(cycle.edge_ids)
    for r in range(k):
        ids = cycle.edge_ids[r:] + cycle.edge_ids[:r]
        cls = cycle.classes[r:] + cycle.classes[:r]
        yield Cycle(ids, cls, cycle.weight, cycle.mu, cycle.support)


def enumerate_cycles(g: PeriodicGraph, cap: int = 10_000_000):
    """Yield every vertex-simple directed cycle of the quotient, once per
    rotation class.  Raises CycleOverflow beyond `cap` cycles."""
    by_pair = {}
    for idx, e in enumerate(g.edges):
        by_pair.setdefault((e.src, e.dst), []).append(idx)
    quotient = nx.DiGraph()
    quotient.add_nodes_from(range(g.n_classes))
    quotient.add_edges_from(by_pair.keys())
    count = 0
    for node_cycle in nx.simple_cycles(quotient):
        # rotate to canonical start (classes are distinct along the cycle)
        shift = min(range(len(node_cycle)), key=lambda i: node_cycle[i])
        node_cycle = node_cycle[shift:] + node_cycle[:shift]
        hops = [(node_cycle[i], node_cycle[(i + 1) % len(node_cycle)])
                for i in range(len(node_cycle))]
        for combo in product(*(by_pair[h] for h in hops)):
            weight = 0
            mu = [0] * g.dim
            for idx in combo:
                e = g.edges[idx]
                weight += e.weight
                for k in range(g.dim):
                    mu[k] += e.shift[k]
            count += 1
            if count > cap:
                raise CycleOverflow("more than %d quotient cycles" % cap)
            yield Cycle(tuple(combo), tuple(node_cycle), weight, tuple(mu),
                        frozenset(node_cycle))


class NuTable:
    """Aggregated view of the quotient cycles.

    For each normalized displacement point u = mu/weight this stores, per
    cycle weight d, the set of distinct supports of weight-d cycles at u.
    `Len(u)` is the sorted list of weights, `num(u, d)` the number of
    distinct supports, and `min_weight(u)` the least weight (used for the
    box region of the distance-excess bound).
    """

    def __init__(self, g: PeriodicGraph, cap: int = 10_000_000,
                 keep_cycles: int = 500_000):
        self.graph = g
        self.by_nu: dict = {}
        self.n_cycles = 0
        self.cycles = []
        kept = True
        for cyc in enumerate_cycles(g, cap=cap):
            self.n_cycles += 1
            slot = self.by_nu.setdefault(cyc.nu, {})
            slot.setdefault(cyc.weight, set()).add(cyc.support)
            if kept:
                self.cycles.append(cyc)
                if len(self.cycles) > keep_cycles:
                    kept = False
                    self.cycles = None
        if not kept:
            self.cycles = None

    @property
    def points(self):
        return sorted(self.by_nu.keys())

    def lengths(self, u) -> list:
        return sorted(self.by_nu[u].keys())

    def num(self, u, d) -> int:
        return len(self.by_nu[u][d])

    def min_weight(self, u) -> int:
        return min(self.by_nu[u].keys())

    def supports(self, u, d) -> frozenset:
        return frozenset(self.by_nu[u][d])

    def dump(self) -> str:
        lines = []
        for u in self.points:
            slot = self.by_nu[u]
            for d in sorted(slot):
                sups = ",".join(sorted("{%s}" % ";".join(map(str, sorted(s)))
                                       for s in slot[d]))
                lines.append("nu=(%s) weight=%d supports=%s" %
                             (",".join(map(str, u)), d, sups))
        return "\n".join(lines)


def build_nu_table(g: PeriodicGraph, cap: int = 10_000_000,
                   keep_cycles: int = 500_000) -> NuTable:
    return NuTable(g, cap=cap, keep_cycles=keep_cycles)
