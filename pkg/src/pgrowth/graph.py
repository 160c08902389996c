"""Periodic graph model: quotient data, parsing, validation.

A periodic graph of dimension n is given by its finite quotient: c vertex
classes, directed edges labelled with integer shift vectors and positive
integer weights, and a rational position for each class (the positions are
the class representatives of a periodic realization, expressed in lattice
coordinates).  A vertex of the infinite graph is a pair (class, offset)
with offset in Z^n.
"""

from __future__ import annotations

import ast
import json
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Sequence

from .exactalg import rat


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    shift: tuple
    weight: int = 1

    def reversed(self) -> "Edge":
        return Edge(self.dst, self.src, tuple(-s for s in self.shift), self.weight)

    def key(self):
        return (self.src, self.dst, self.shift, self.weight)


@dataclass(frozen=True)
class PeriodicGraph:
    dim: int
    n_classes: int
    edges: tuple
    pos: tuple
    name: str = ""

    @property
    def max_weight(self) -> int:
        return max(e.weight for e in self.edges)

    @cached_property
    def out_edges(self):
        by_cls = {c: [] for c in range(self.n_classes)}
        for e in self.edges:
            by_cls[e.src].append(e)
        return by_cls

    def describe(self) -> str:
        return "%s: dim=%d classes=%d edges=%d (directed records)" % (
            self.name or "graph", self.dim, self.n_classes, len(self.edges))


def symmetrize_closure(edges: Sequence[Edge]) -> tuple:
    """Close a directed edge multiset under reversal.

    Records already matched by a reverse partner are left alone, so the
    operation is idempotent: applying it twice equals applying it once.
    """
    bag = Counter(e.key() for e in edges)
    out = list(edges)
    need = Counter()
    for e in edges:
        need[e.reversed().key()] += 1
    for key, k in need.items():
        missing = k - bag.get(key, 0)
        for _ in range(max(0, missing)):
            out.append(Edge(*key))
    return tuple(out)


def _parse_pos(entries, dim: int) -> tuple:
    pos = []
    for p in entries:
        if len(p) != dim:
            raise ValueError("position %r does not have dimension %d" % (p, dim))
        pos.append(tuple(rat(x) if not isinstance(x, float) else _rat_from_float(x) for x in p))
    return tuple(pos)


def _rat_from_float(x: float) -> Fraction:
    # positions in the compatibility format may be written as decimals such
    # as 0.5; accept them only when they are exact short decimals
    f = Fraction(str(x))
    if float(f) != x:
        raise ValueError("non-exact float position %r rejected" % (x,))
    return f


def parse_graph(source, name: str = "") -> PeriodicGraph:
    """Parse a periodic graph document.

    Two formats are accepted:

    * canonical JSON with keys dim, classes, undirected, edges
      (records {from, to, shift, weight}) and pos (rational strings), and
    * a compatibility format made of python-literal assignments
      ``dim=... c=... edges=[...] pos=[...]`` where ``edges[i]`` lists the
      targets ``(class, shift)`` of unit-weight edges leaving class i.
    """
    if isinstance(source, PeriodicGraph):
        return source
    if isinstance(source, dict):
        return _parse_json_doc(source, name)
    text = source
    if hasattr(source, "read"):
        text = source.read()
    text = text.strip()
    if text.startswith("{"):
        return _parse_json_doc(json.loads(text), name)
    return _parse_compat(text, name)


def _parse_json_doc(doc: dict, name: str) -> PeriodicGraph:
    dim = int(doc["dim"])
    c = int(doc["classes"])
    if dim < 1 or dim > 3:
        raise ValueError("dimension must be 1, 2 or 3 (got %d)" % dim)
    if c < 1:
        raise ValueError("need at least one vertex class")
    edges = []
    for rec in doc["edges"]:
        shift = tuple(int(s) for s in rec["shift"])
        if len(shift) != dim:
            raise ValueError("edge shift %r has wrong dimension" % (rec,))
        w = int(rec.get("weight", 1))
        if w < 1:
            raise ValueError("edge weights must be positive integers")
        i, j = int(rec["from"]), int(rec["to"])
        if not (0 <= i < c and 0 <= j < c):
            raise ValueError("edge endpoint out of range in %r" % (rec,))
        edges.append(Edge(i, j, shift, w))
    if not edges:
        raise ValueError("graph has no edges")
    if doc.get("undirected", False):
        edges = list(symmetrize_closure(edges))
    pos = _parse_pos(doc["pos"], dim) if "pos" in doc else tuple((Fraction(0),) * dim for _ in range(c))
    if len(pos) != c:
        raise ValueError("pos must list one position per class")
    return PeriodicGraph(dim, c, tuple(edges), pos, name=name or doc.get("name", ""))


def _parse_compat(text: str, name: str) -> PeriodicGraph:
    fields = {}
    for stmt in text.splitlines():
        stmt = stmt.strip().rstrip(";")
        if not stmt or stmt.startswith("#"):
            continue
        if "=" not in stmt:
            raise ValueError("cannot parse line %r" % (stmt,))
        key, _, value = stmt.partition("=")
        fields[key.strip()] = ast.literal_eval(value.strip())
    dim = int(fields["dim"])
    c = int(fields["c"])
    edges = []
    for i, targets in enumerate(fields["edges"]):
        for j, shift in targets:
            edges.append(Edge(int(i), int(j), tuple(int(s) for s in shift), 1))
    edges = list(symmetrize_closure(edges))
    pos_entries = fields.get("pos")
    if pos_entries is None:
        pos = tuple((Fraction(0),) * dim for _ in range(c))
    else:
        pos = _parse_pos(pos_entries, dim)
    return PeriodicGraph(dim, c, tuple(edges), pos, name=name)


def graph_to_json(g: PeriodicGraph) -> dict:
    return {
        "dim": g.dim,
        "classes": g.n_classes,
        "undirected": False,
        "name": g.name,
        "edges": [
            {"from": e.src, "to": e.dst, "shift": list(e.shift), "weight": e.weight}
            for e in g.edges
        ],
        "pos": [[str(x) for x in p] for p in g.pos],
    }


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass
class ValidationReport:
    quotient_strongly_connected: bool
    sampled_reachability_ok: bool
    origin_interior: bool | None = None  # filled in once the polytope exists
    messages: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.quotient_strongly_connected and self.sampled_reachability_ok
                and self.origin_interior is not False)


def _quotient_scc_count(g: PeriodicGraph) -> int:
    adj = [[] for _ in range(g.n_classes)]
    for e in g.edges:
        adj[e.src].append(e.dst)
    index = [None] * g.n_classes
    low = [0] * g.n_classes
    onstack = [False] * g.n_classes
    stack = []
    counter = [0]
    sccs = [0]

    def strongconnect(v0):
        work = [(v0, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter[0]
                counter[0] += 1
                stack.append(v)
                onstack[v] = True
            advanced = False
            for i in range(pi, len(adj[v])):
                w = adj[v][i]
                if index[w] is None:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    advanced = True
                    break
                elif onstack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    onstack[w] = False
                    if w == v:
                        break
                sccs[0] += 1
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])

    for v in range(g.n_classes):
        if index[v] is None:
            strongconnect(v)
    return sccs[0]


def _sampled_reachability(g: PeriodicGraph) -> bool:
    """BFS smoke test on the cover: within radius 3c edges from (0, 0),
    every touched vertex must also reach the start (checked on the
    reversed graph over the same window)."""
    radius = 3 * g.n_classes
    fwd = _ball(g, (0, tuple([0] * g.dim)), radius, reverse=False)
    bwd = _ball(g, (0, tuple([0] * g.dim)), radius, reverse=True)
    # strong connectivity means the forward ball within radius r is matched
    # by backward reachability within some radius; as a smoke test, check
    # that every vertex of the forward ball of radius c is in the backward
    # ball of radius 3c
    small = _ball(g, (0, tuple([0] * g.dim)), g.n_classes, reverse=False)
    return small <= bwd and (0, tuple([0] * g.dim)) in fwd


def _ball(g: PeriodicGraph, start, radius: int, reverse: bool) -> set:
    seen = {start}
    frontier = [start]
    for _ in range(radius):
        nxt = []
        for (cls, off) in frontier:
            for e in g.edges:
                if not reverse and e.src == cls:
                    to = (e.dst, tuple(o + s for o, s in zip(off, e.shift)))
                elif reverse and e.dst == cls:
                    to = (e.src, tuple(o - s for o, s in zip(off, e.shift)))
                else:
                    continue
                if to not in seen:
                    seen.add(to)
                    nxt.append(to)
        frontier = nxt
        if not frontier:
            break
    return seen


def validate_graph(g: PeriodicGraph) -> ValidationReport:
    """Structural validation of a periodic graph document.

    Checks quotient strong connectivity and runs a sampled reachability
    smoke test on the cover.  The remaining part of the strong
    connectivity certificate (the origin being interior to the growth
    polytope) is attached by the pipeline once the polytope is built.
    """
    msgs = []
    for e in g.edges:
        if e.weight < 1:
            raise ValueError("non-positive edge weight on %r" % (e,))
    scc_ok = _quotient_scc_count(g) == 1
    if not scc_ok:
        msgs.append("quotient graph is not strongly connected")
    if scc_ok:
        idx = _displacement_index(g)
        if idx != 1:
            raise ValueError(
                "the closed-walk displacements generate a sublattice of "
                "index %s: the graph splits into disjoint translated "
                "copies; rewrite the shifts in a basis of that sublattice"
                % idx)
    reach_ok = _sampled_reachability(g) if scc_ok else False
    if scc_ok and not reach_ok:
        msgs.append("sampled reachability check failed")
    return ValidationReport(scc_ok, reach_ok, messages=msgs)


def _displacement_index(g: PeriodicGraph):
    """Index in Z^dim of the lattice spanned by closed-walk displacements.

    1 means the cover graph is connected (given a strongly connected
    quotient); 0 means the displacements do not even span full rank."""
    # potentials along a spanning tree of the quotient, then one generator
    # per non-tree edge
    pot = {0: (0,) * g.dim}
    order = [0]
    while order:
        cls = order.pop()
        for e in g.out_edges[cls]:
            if e.dst not in pot:
                pot[e.dst] = tuple(p + s for p, s in
                                   zip(pot[cls], e.shift))
                order.append(e.dst)
    gens = []
    for cls in range(g.n_classes):
        for e in g.out_edges[cls]:
            gens.append(tuple(p + s - q for p, s, q in
                              zip(pot[cls], e.shift, pot[e.dst])))
    # the index equals the gcd of all dim x dim minors (product of the
    # elementary divisors); 0 when the generators are rank deficient
    gens = sorted(set(gens) - {(0,) * g.dim})
    n = g.dim

    def det(rows):
        if n == 1:
            return rows[0][0]
        if n == 2:
            return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
        a, b, c = rows
        return (a[0] * (b[1] * c[2] - b[2] * c[1])
                - a[1] * (b[0] * c[2] - b[2] * c[0])
                + a[2] * (b[0] * c[1] - b[1] * c[0]))

    from itertools import combinations
    from math import gcd
    idx = 0
    for rows in combinations(gens, n):
        idx = gcd(idx, det(rows))
        if idx == 1:
            return 1
    return abs(idx)
