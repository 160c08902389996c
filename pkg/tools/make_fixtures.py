#!/usr/bin/env python3
"""Generate the bundled fixture graphs.

This tool lives outside the library on purpose: it works with floating
point coordinates while constructing tilings and nets, then emits exact
rational graph descriptions.  The library itself never touches floats.

Run from the repository root:

    python3 tools/make_fixtures.py [name ...]
"""

import argparse
import json
import math
import os
import sys
from fractions import Fraction

import numpy as np

OUT = os.path.join(os.path.dirname(__file__), "..", "src", "pgrowth",
                   "fixtures")

TOL = 1e-6


# ---------------------------------------------------------------------------
# generic 2-d machinery
# ---------------------------------------------------------------------------

def dedupe_mod_lattice(points, basis):
    """Representatives of float points modulo the lattice spanned by the
    basis rows; returns reps with basis-coordinate fractional parts."""
    binv = np.linalg.inv(np.array(basis, dtype=float))
    reps = []
    for p in points:
        q = np.array(p, dtype=float) @ binv
        frac = q - np.floor(q + TOL)
        frac[frac > 1 - TOL] = 0.0
        if not any(np.allclose(frac, r, atol=1e-5) for r in reps):
            reps.append(frac)
    return [tuple(r) for r in reps]


def build_quotient(classes_basis, basis, bond, name, scan=3):
    """Quotient graph of the unit-distance graph on the given vertex
    classes (basis coordinates) under the lattice; `bond` is the edge
    length in Cartesian coordinates."""
    B = np.array(basis, dtype=float)
    cart = [np.array(c, dtype=float) @ B for c in classes_basis]
    edges = []
    for i, p in enumerate(cart):
        for j, q in enumerate(cart):
            for m1 in range(-scan, scan + 1):
                for m2 in range(-scan, scan + 1):
                    if i == j and m1 == 0 and m2 == 0:
                        continue
                    target = q + m1 * B[0] + m2 * B[1]
                    if abs(np.linalg.norm(target - p) - bond) < 1e-5:
                        edges.append((i, j, (m1, m2)))
    # keep one record per unordered pair; the loader closes under reversal
    seen = set()
    out = []
    for (i, j, s) in edges:
        key = (i, j, s)
        rkey = (j, i, (-s[0], -s[1]))
        if rkey in seen or key in seen:
            continue
        seen.add(key)
        out.append({"from": i, "to": j, "shift": list(s)})
    return {
        "dim": 2,
        "classes": len(classes_basis),
        "undirected": True,
        "edges": out,
        "pos": [[_ratstr(x) for x in c] for c in classes_basis],
        "name": name,
    }


def _ratstr(x, max_den=96):
    f = Fraction(float(x)).limit_denominator(max_den)
    return "%d/%d" % (f.numerator, f.denominator) if f.denominator != 1 \
        else str(f.numerator)


def faces_of(classes_basis, basis, bond, patch=4):
    """Faces of the tiling (as centroid Cartesian coordinates), found by
    walking the planar rotation system on a finite patch and keeping faces
    whose every vertex is interior to the patch."""
    B = np.array(basis, dtype=float)
    verts = {}
    for i, c in enumerate(classes_basis):
        for m1 in range(-patch, patch + 1):
            for m2 in range(-patch, patch + 1):
                p = (np.array(c, dtype=float) + np.array([m1, m2])) @ B
                verts[(i, m1, m2)] = p
    keys = list(verts)
    arr = np.array([verts[k] for k in keys])
    adj = {k: [] for k in keys}
    from scipy.spatial import cKDTree
    tree = cKDTree(arr)
    pairs = tree.query_pairs(bond + 1e-5)
    for a, b in pairs:
        if abs(np.linalg.norm(arr[a] - arr[b]) - bond) < 1e-5:
            adj[keys[a]].append(keys[b])
            adj[keys[b]].append(keys[a])
    for k in adj:
        p = verts[k]
        adj[k].sort(key=lambda q: math.atan2(*(verts[q] - p)[::-1]))
    interior = {k for k in keys
                if max(abs(k[1]), abs(k[2])) <= patch - 2}
    faces = []
    used = set()
    for v in keys:
        for w in adj[v]:
            if (v, w) in used:
                continue
            face = []
            a, b = v, w
            ok = True
            while (a, b) not in used:
                used.add((a, b))
                face.append(a)
                ring = adj[b]
                i = ring.index(a)
                c = ring[(i - 1) % len(ring)]
                a, b = b, c
                if len(face) > 24:
                    ok = False
                    break
            if not ok or len(face) < 3:
                continue
            pts = np.array([verts[k] for k in face])
            area = 0.0
            for i in range(len(face)):
                x1, y1 = pts[i]
                x2, y2 = pts[(i + 1) % len(face)]
                area += x1 * y2 - x2 * y1
            if area <= 0:
                continue
            if not all(k in interior for k in face):
                continue
            faces.append(pts.mean(axis=0))
    return faces


def dual_graph(classes_basis, basis, bond, name, patch=5):
    """Quotient of the dual tiling: vertices are face centroids, edges join
    faces sharing a tile edge.  Edge lengths in the dual vary, so adjacency
    is recovered from shared edges rather than distances."""
    B = np.array(basis, dtype=float)
    verts = {}
    for i, c in enumerate(classes_basis):
        for m1 in range(-patch, patch + 1):
            for m2 in range(-patch, patch + 1):
                p = (np.array(c, dtype=float) + np.array([m1, m2])) @ B
                verts[(i, m1, m2)] = p
    keys = list(verts)
    arr = np.array([verts[k] for k in keys])
    adj = {k: [] for k in keys}
    from scipy.spatial import cKDTree
    tree = cKDTree(arr)
    for a, b in tree.query_pairs(bond + 1e-5):
        if abs(np.linalg.norm(arr[a] - arr[b]) - bond) < 1e-5:
            adj[keys[a]].append(keys[b])
            adj[keys[b]].append(keys[a])
    for k in adj:
        p = verts[k]
        adj[k].sort(key=lambda q: math.atan2(*(verts[q] - p)[::-1]))
    faces = []        # list of (vertex key tuple, centroid)
    edge_to_face = {}
    used = set()
    for v in keys:
        for w in adj[v]:
            if (v, w) in used:
                continue
            face = []
            a, b = v, w
            ok = True
            while (a, b) not in used:
                used.add((a, b))
                face.append((a, b))
                ring = adj[b]
                i = ring.index(a)
                c = ring[(i - 1) % len(ring)]
                a, b = b, c
                if len(face) > 24:
                    ok = False
                    break
            if not ok or len(face) < 3:
                continue
            pts = np.array([verts[a] for a, _ in face])
            area = 0.0
            for i in range(len(face)):
                x1, y1 = pts[i]
                x2, y2 = pts[(i + 1) % len(face)]
                area += x1 * y2 - x2 * y1
            if area <= 0:
                continue
            fid = len(faces)
            faces.append(pts.mean(axis=0))
            for e in face:
                edge_to_face[e] = fid
    # dual adjacency through shared edges
    dual_edges = set()
    for (a, b), f1 in edge_to_face.items():
        f2 = edge_to_face.get((b, a))
        if f2 is not None and f1 != f2:
            dual_edges.add((min(f1, f2), max(f1, f2)))
    centers = np.array(faces)
    # classes: face centers modulo the lattice, from an interior window
    binv = np.linalg.inv(B)
    reps = []
    for c in centers:
        q = c @ binv
        if not (-0.25 <= q[0] < 1.75 and -0.25 <= q[1] < 1.75):
            continue
        frac = q - np.floor(q + TOL)
        frac[frac > 1 - TOL] = 0.0
        if not any(np.allclose(frac, r, atol=1e-5) for r in reps):
            reps.append(frac)
    reps = [tuple(r) for r in reps]
    rep_cart = [np.array(r) @ B for r in reps]

    def classify(c):
        q = c @ binv
        frac = q - np.floor(q + TOL)
        frac[frac > 1 - TOL] = 0.0
        for idx, r in enumerate(reps):
            if np.allclose(frac, r, atol=1e-5):
                shift = np.round(q - np.array(r)).astype(int)
                return idx, tuple(int(x) for x in shift)
        return None

    out_edges = set()
    for f1, f2 in dual_edges:
        a = classify(centers[f1])
        b = classify(centers[f2])
        if a is None or b is None:
            continue
        (i, s1), (j, s2) = a, b
        s = (s2[0] - s1[0], s2[1] - s1[1])
        key = (i, j, s)
        rkey = (j, i, (-s[0], -s[1]))
        if rkey not in out_edges:
            out_edges.add(key)
    return {
        "dim": 2,
        "classes": len(reps),
        "undirected": True,
        "edges": [{"from": i, "to": j, "shift": list(s)}
                  for (i, j, s) in sorted(out_edges)],
        "pos": [[_ratstr(x) for x in r] for r in reps],
        "name": name,
    }


# ---------------------------------------------------------------------------
# the individual tilings
# ---------------------------------------------------------------------------

def snub_square_data():
    d = math.sqrt(2 + math.sqrt(3))
    basis = [[d, 0.0], [0.0, d]]
    r = math.sqrt(0.5)
    corners = [(r * math.cos(math.radians(45 + 15 + 90 * k)),
                r * math.sin(math.radians(45 + 15 + 90 * k)))
               for k in range(4)]
    classes = dedupe_mod_lattice(corners, basis)
    return classes, basis, 1.0


def fixture_snub_square():
    classes, basis, bond = snub_square_data()
    g = build_quotient(classes, basis, bond, "snub-square")
    assert g["classes"] == 4, g["classes"]
    return g


def fixture_cairo():
    classes, basis, bond = snub_square_data()
    g = dual_graph(classes, basis, bond, "cairo")
    assert g["classes"] == 6, g["classes"]
    return g


def fixture_truncated_square():
    s = 1 + math.sqrt(2)
    basis = [[s, 0.0], [0.0, s]]
    c8 = 0.5 + math.sqrt(2) / 2
    pts = [(c8, 0.5), (c8, -0.5), (0.5, c8), (-0.5, c8)]
    classes = dedupe_mod_lattice(pts, basis)
    g = build_quotient(classes, basis, 1.0, "truncated-square")
    assert g["classes"] == 4, g["classes"]
    return g


def fixture_rhombitrihexagonal():
    L = 1 + math.sqrt(3)
    basis = [[L * math.cos(math.radians(30)), L * math.sin(math.radians(30))],
             [0.0, L]]
    pts = [(math.cos(math.radians(60 * k)), math.sin(math.radians(60 * k)))
           for k in range(6)]
    classes = dedupe_mod_lattice(pts, basis)
    g = build_quotient(classes, basis, 1.0, "rhombitrihexagonal")
    assert g["classes"] == 6, g["classes"]
    return g


def fixture_truncated_hexagonal():
    L = 2 + math.sqrt(3)
    basis = [[L * math.cos(math.radians(30)), L * math.sin(math.radians(30))],
             [0.0, L]]
    R = 0.5 / math.sin(math.radians(15))
    pts = [(R * math.cos(math.radians(15 + 30 * k)),
            R * math.sin(math.radians(15 + 30 * k))) for k in range(12)]
    classes = dedupe_mod_lattice(pts, basis)
    g = build_quotient(classes, basis, 1.0, "truncated-hexagonal")
    assert g["classes"] == 6, g["classes"]
    return g


def tri_minus_sublattice(sub1, sub2, name, expect):
    """Triangular lattice with the sublattice spanned by sub1, sub2 (in
    triangular-basis integer coordinates) removed."""
    u = np.array([1.0, 0.0])
    v = np.array([0.5, math.sqrt(3) / 2])
    B = np.array([sub1[0] * u + sub1[1] * v, sub2[0] * u + sub2[1] * v])
    det = abs(sub1[0] * sub2[1] - sub1[1] * sub2[0])
    pts = []
    M = np.array([sub1, sub2], dtype=float)
    Minv = np.linalg.inv(M)
    for a in range(-6, 7):
        for b in range(-6, 7):
            q = np.array([a, b], dtype=float) @ Minv
            fa = q - np.floor(q + TOL)
            if np.allclose(fa, [0, 0], atol=1e-7):
                continue  # hole
            pts.append(a * u + b * v)
    classes = dedupe_mod_lattice(pts, B.tolist())
    g = build_quotient(classes, B.tolist(), 1.0, name)
    assert g["classes"] == expect, g["classes"]
    return g


def fixture_snub_hexagonal():
    return tri_minus_sublattice((2, 1), (-1, 3), "snub-hexagonal", 6)


def fixture_floret():
    u = np.array([1.0, 0.0])
    v = np.array([0.5, math.sqrt(3) / 2])
    sub1, sub2 = (2, 1), (-1, 3)
    B = np.array([sub1[0] * u + sub1[1] * v, sub2[0] * u + sub2[1] * v])
    M = np.array([sub1, sub2], dtype=float)
    Minv = np.linalg.inv(M)
    pts = []
    for a in range(-8, 9):
        for b in range(-8, 9):
            q = np.array([a, b], dtype=float) @ Minv
            fa = q - np.floor(q + TOL)
            if np.allclose(fa, [0, 0], atol=1e-7):
                continue
            pts.append(a * u + b * v)
    classes = dedupe_mod_lattice(pts, B.tolist())
    g = dual_graph(classes, B.tolist(), 1.0, "floret", patch=5)
    assert g["classes"] == 9, g["classes"]
    return g


def fixture_six_uniform():
    """Triangular lattice with an index-12 sublattice of holes; the 11
    vertex classes fall into five mirror pairs and one fixed class."""
    return tri_minus_sublattice((3, 0), (0, 4), "six-uniform-673", 11)


def fixture_three_uniform():
    """p6 square-and-triangle tiling with one hexavalent class per cell:
    one flower center, a hexagon ring at unit distance, and one further
    orbit of six outer vertices closing squares between adjacent flowers."""
    d = 2 + math.sqrt(3)
    basis = [[d * math.cos(math.radians(30)), d * math.sin(math.radians(30))],
             [0.0, d]]
    ring = [(math.cos(math.radians(30 + 60 * k)),
             math.sin(math.radians(30 + 60 * k))) for k in range(6)]
    o = np.array([-0.5, -d / 2])
    outer = []
    for k in range(6):
        a = math.radians(60 * k)
        R = np.array([[math.cos(a), -math.sin(a)],
                      [math.sin(a), math.cos(a)]])
        outer.append(R @ o)
    pts = [np.zeros(2)] + [np.array(r) for r in ring] + outer
    classes = dedupe_mod_lattice(pts, basis)
    g = build_quotient(classes, basis, 1.0, "three-uniform")
    assert g["classes"] == 13, g["classes"]
    return g


def fixture_square():
    """The square lattice: one class, unit edges along both axes."""
    return {
        "name": "square",
        "dim": 2,
        "classes": 1,
        "undirected": True,
        "edges": [{"from": 0, "to": 0, "shift": [1, 0]},
                  {"from": 0, "to": 0, "shift": [0, 1]}],
        "pos": [["0", "0"]],
    }


def fixture_honeycomb():
    """The honeycomb lattice: two classes, three bonds."""
    return {
        "name": "honeycomb",
        "dim": 2,
        "classes": 2,
        "undirected": True,
        "edges": [{"from": 0, "to": 1, "shift": [0, 0]},
                  {"from": 1, "to": 0, "shift": [1, 0]},
                  {"from": 1, "to": 0, "shift": [0, 1]}],
        "pos": [["0", "0"], ["1/3", "1/3"]],
    }


# ---------------------------------------------------------------------------
# 3-d carbon nets
# ---------------------------------------------------------------------------

def _harmonic_positions(n, dim, edges):
    """Equilibrium embedding: each class at the average of its neighbours
    (shifts included), class 0 pinned at the origin.  Exact rationals."""
    from pgrowth.exactalg import solve_linear

    adj = {i: [] for i in range(n)}
    for (u, v, s) in edges:
        adj[u].append((v, s))
        adj[v].append((u, tuple(-x for x in s)))
    rows, rhs = [], [[] for _ in range(dim)]
    for i in range(1, n):
        row = [Fraction(0)] * (n - 1)
        row[i - 1] = Fraction(len(adj[i]))
        acc = [Fraction(0)] * dim
        for (j, s) in adj[i]:
            for k in range(dim):
                acc[k] += s[k]
            if j > 0:
                row[j - 1] -= 1
        rows.append(row)
        for k in range(dim):
            rhs[k].append(acc[k])
    sol = [solve_linear([r[:] for r in rows], rhs[k]) for k in range(dim)]
    pos = [[Fraction(0)] * dim]
    pos += [[sol[k][i] for k in range(dim)] for i in range(n - 1)]
    return pos


def fixture_k6():
    """Chiral cubic sp3 carbon net, 12 atoms per conventional cell.

    The primitive quotient is the octahedron graph (three antipodal
    vertex pairs, every pair of distinct axes joined) over the bcc
    lattice, with shifts fixed by a three-fold axis permuting the
    primitive vectors; the conventional cell doubles it."""
    def rho(s):
        return (s[2], s[0], s[1])

    a, b, c, d = (0, 0, 0), (0, 0, 0), (-1, 0, 0), (0, 1, 0)
    prim = []
    A, B, C, D = a, b, c, d
    for (u, up, v, vp) in [(0, 1, 2, 3), (2, 3, 4, 5), (4, 5, 0, 1)]:
        prim += [(u, v, A), (u, vp, B), (up, v, C), (up, vp, D)]
        A, B, C, D = rho(A), rho(B), rho(C), rho(D)

    # unfold over the conventional cubic cell: conventional basis vectors
    # are the pairwise sums of the bcc primitive ones, index two
    def conv(s):
        return (Fraction(-s[0] + s[1] + s[2], 2),
                Fraction(s[0] - s[1] + s[2], 2),
                Fraction(s[0] + s[1] - s[2], 2))

    half = (Fraction(1, 2),) * 3
    edges = []
    for (u, v, s) in prim:
        par = (s[0] + s[1] + s[2]) % 2
        cs = conv(s)
        for p in (0, 1):
            p2 = (p + par) % 2
            r1 = half if p else (0, 0, 0)
            r2 = half if p2 else (0, 0, 0)
            sh = tuple(int(cs[k] + r1[k] - r2[k]) for k in range(3))
            edges.append((u + 6 * p, v + 6 * p2, sh))
    pos = _harmonic_positions(12, 3, edges)
    return {
        "name": "k6",
        "dim": 3,
        "classes": 12,
        "undirected": True,
        "edges": [{"from": u, "to": v, "shift": list(s)}
                  for (u, v, s) in edges],
        "pos": [[str(x) for x in p] for p in pos],
    }


def fixture_cfs():
    """Hexagonal sp2/sp3 carbon net with six atoms on one 6-fold screw
    orbit and two bond orbits.  Its closed-walk displacements span an
    index-3 sublattice of the naive hexagonal coordinates, so the output
    is rewritten in a basis of that sublattice to keep the cover graph
    connected."""
    def R(s):
        return (-s[1], s[0] + s[1], s[2])

    edges = []
    for (step, s0) in ((1, (0, 0, 0)), (2, (-1, -1, 0))):
        s = s0
        for i in range(6):
            j = i + step
            edges.append((i, j % 6, (s[0], s[1], s[2] + (j // 6))))
            s = R(s)

    # screw-symmetric embedding; the in-plane screw translation 7/10
    # reproduces the published distance defect constants
    tx = Fraction(7, 10)
    pos = [(Fraction(0), Fraction(0), Fraction(0))]
    x = y = Fraction(0)
    for i in range(1, 6):
        x, y = -y + tx, x + y
        pos.append((x, y, Fraction(i, 6)))

    # rebase: representative offsets per class from a breadth-first walk,
    # then shifts rewritten in the displacement-lattice basis
    from pgrowth.exactalg import solve_linear

    basis = [[3, 1, 0], [0, 1, 0], [0, 0, 1]]  # columns

    def to_new(vec):
        rows = [[Fraction(basis[i][j]) for j in range(3)] for i in range(3)]
        return solve_linear(rows, [Fraction(v) for v in vec])

    adj = {i: [] for i in range(6)}
    for (u, v, s) in edges:
        adj[u].append((v, s))
        adj[v].append((u, tuple(-x for x in s)))
    rep = {0: (0, 0, 0)}
    frontier = [0]
    while frontier:
        u = frontier.pop()
        for (v, s) in adj[u]:
            if v not in rep:
                rep[v] = tuple(rep[u][k] + s[k] for k in range(3))
                frontier.append(v)

    out_edges = []
    for (u, v, s) in edges:
        s2 = to_new([s[k] + rep[u][k] - rep[v][k] for k in range(3)])
        assert all(x.denominator == 1 for x in s2), (u, v, s, s2)
        out_edges.append((u, v, tuple(int(x) for x in s2)))
    out_pos = []
    for cls in range(6):
        q = to_new([pos[cls][k] + rep[cls][k] for k in range(3)])
        out_pos.append([str(x) for x in q])
    return {
        "name": "cfs",
        "dim": 3,
        "classes": 6,
        "undirected": True,
        "edges": [{"from": u, "to": v, "shift": list(s)}
                  for (u, v, s) in out_edges],
        "pos": out_pos,
    }


FIXTURES = {
    "square": fixture_square,
    "honeycomb": fixture_honeycomb,
    "k6": fixture_k6,
    "cfs": fixture_cfs,
    "six-uniform-673": fixture_six_uniform,
    "three-uniform": fixture_three_uniform,
    "snub-square": fixture_snub_square,
    "cairo": fixture_cairo,
    "truncated-square": fixture_truncated_square,
    "rhombitrihexagonal": fixture_rhombitrihexagonal,
    "truncated-hexagonal": fixture_truncated_hexagonal,
    "snub-hexagonal": fixture_snub_hexagonal,
    "floret": fixture_floret,
}


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("names", nargs="*", default=[])
    args = ap.parse_args(argv)
    names = args.names or sorted(FIXTURES)
    os.makedirs(OUT, exist_ok=True)
    for name in names:
        g = FIXTURES[name]()
        path = os.path.join(OUT, name + ".json")
        with open(path, "w") as fh:
            json.dump(g, fh, indent=1)
        print("wrote %s (%d classes, %d edge records)"
              % (path, g["classes"], len(g["edges"])))


if __name__ == "__main__":
    sys.exit(main())
