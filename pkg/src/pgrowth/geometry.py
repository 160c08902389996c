"""Growth polytope geometry, all exact.

Builds the convex hull of the normalized displacement points together with
the origin, exposes the gauge (Minkowski functional), triangulates facets
subject to the two compatibility conditions used by the distance
certificates, computes the minimal half-space families of each
(facet, vertex) pair, and constructs the scaled support half-spaces with
their coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .exactalg import (cross2, cross3, mat_det, solve_linear, vdot, vsub,
                       vadd, vscale)

ZERO = Fraction(0)
ONE = Fraction(1)


class GeometryError(ValueError):
    pass


# ---------------------------------------------------------------------------
# convex hull
# ---------------------------------------------------------------------------

@dataclass
class Facet:
    """A facet of the growth polytope, with inequality <normal, x> <= 1."""
    normal: tuple
    vertices: tuple   # polytope vertices on the facet, boundary order
    points: tuple     # all displacement points on the facet, ordered
    index: int = -1

    def chart_axis(self) -> int:
        """Axis to drop when charting the facet plane (3-d only)."""
        best = max(range(len(self.normal)), key=lambda i: (abs(self.normal[i]), -i))
        return best


class GrowthPolytope:
    """conv(points + {0}) with the origin certified interior."""

    def __init__(self, points):
        pts = sorted(set(tuple(Fraction(x) for x in p) for p in points))
        if not pts:
            raise GeometryError("no displacement points")
        self.dim = len(pts[0])
        self.points = pts
        if self.dim == 1:
            self.vertices, self.facets = _hull_1d(pts)
        elif self.dim == 2:
            self.vertices, self.facets = _hull_2d(pts)
        elif self.dim == 3:
            self.vertices, self.facets = _hull_3d(pts)
        else:
            raise GeometryError("dimension must be <= 3")
        for i, f in enumerate(self.facets):
            f.index = i
        self._normals = [f.normal for f in self.facets]

    def gauge(self, y) -> Fraction:
        """Minkowski functional of the polytope: min {t >= 0 : y in tP}."""
        y = tuple(Fraction(x) for x in y)
        best = ZERO
        for n in self._normals:
            v = vdot(n, y)
            if v > best:
                best = v
        return best

    def contains(self, y) -> bool:
        return all(vdot(n, y) <= 1 for n in self._normals)

    def facet_of_point(self, p):
        """Facets whose plane contains p (with equality)."""
        return [f for f in self.facets if vdot(f.normal, p) == 1]

    def max_abs_coordinate(self, axis: int) -> Fraction:
        return max(abs(v[axis]) for v in self.vertices)


def _facet_points(pts, normal):
    return [p for p in pts if vdot(normal, p) == 1]


def _normal_through(points_on, dim):
    """Normal u with <u, p> = 1 for the given affinely spanning points."""
    sol = solve_linear([list(p) for p in points_on[:dim]], [ONE] * dim)
    if sol is None:
        raise GeometryError("facet plane passes through the origin "
                            "(origin not interior, graph cannot be "
                            "strongly connected)")
    return sol


def _hull_1d(pts):
    lo, hi = pts[0][0], pts[-1][0]
    if not (lo < 0 < hi):
        raise GeometryError("origin is not interior to the growth polytope")
    vertices = [(lo,), (hi,)]
    facets = [
        Facet((1 / hi,), ((hi,),), tuple(p for p in pts if p == (hi,))),
        Facet((1 / lo,), ((lo,),), tuple(p for p in pts if p == (lo,))),
    ]
    return vertices, facets


def _hull_2d(pts):
    pts = sorted(set(pts) | {(ZERO, ZERO)})
    if len(pts) < 3:
        raise GeometryError("points do not span the plane")

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross2(vsub(out[-1], out[-2]), vsub(p, out[-2])) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(list(reversed(pts)))
    verts = lower[:-1] + upper[:-1]  # counter-clockwise
    if len(verts) < 3:
        raise GeometryError("points do not span the plane")
    if (ZERO, ZERO) in verts:
        raise GeometryError("origin is not interior to the growth polytope")
    disp = [p for p in pts if p != (ZERO, ZERO)]
    facets = []
    for i, a in enumerate(verts):
        b = verts[(i + 1) % len(verts)]
        normal = _normal_through([a, b], 2)
        on = _facet_points(disp, normal)
        # order the facet points from a to b
        direction = vsub(b, a)
        on.sort(key=lambda p: vdot(vsub(p, a), direction))
        facets.append(Facet(tuple(normal), (a, b), tuple(on)))
    # interiority check: all vertices must see the origin strictly inside
    for f in facets:
        if not ZERO < 1:  # pragma: no cover - structural constant
            raise AssertionError
    return verts, facets


def _orient3(plane_pts, p) -> Fraction:
    a, b, c = plane_pts
    return mat_det([list(vsub(b, a)), list(vsub(c, a)), list(vsub(p, a))])


def _hull_3d(pts):
    pts = sorted(set(pts) | {(ZERO, ZERO, ZERO)})
    n = len(pts)
    # initial affinely independent quadruple
    base = [pts[0]]
    for p in pts[1:]:
        if len(base) == 1 and p != base[0]:
            base.append(p)
        elif len(base) == 2:
            if cross3(vsub(base[1], base[0]), vsub(p, base[0])) != (ZERO, ZERO, ZERO):
                base.append(p)
        elif len(base) == 3:
            if _orient3(base, p) != 0:
                base.append(p)
                break
    if len(base) != 4:
        raise GeometryError("points do not span 3-space")
    interior = tuple(sum(c[i] for c in base) / 4 for i in range(3))

    def oriented(tri):
        """Return tri oriented so that the interior point is on the negative side."""
        if _orient3(tri, interior) > 0:
            return (tri[0], tri[2], tri[1])
        return tri

    faces = set()
    for tri in combinations(base, 3):
        faces.add(oriented(tri))

    for p in pts:
        if p in base:
            continue
        visible = [f for f in faces if _orient3(f, p) > 0]
        if not visible:
            continue
        horizon = {}
        for f in visible:
            for i in range(3):
                edge = (f[i], f[(i + 1) % 3])
                rev = (edge[1], edge[0])
                if rev in horizon:
                    del horizon[rev]
                else:
                    horizon[edge] = True
        for f in visible:
            faces.discard(f)
        for (a, b) in horizon:
            faces.add((a, b, p))

    # merge coplanar triangles into polygonal facets
    by_plane = {}
    for f in faces:
        normal = _normal_through(list(f), 3)
        key = tuple(normal)
        by_plane.setdefault(key, set()).update(f)
    disp = [p for p in pts if p != (ZERO, ZERO, ZERO)]
    facets = []
    for normal, vset in sorted(by_plane.items()):
        if any(vdot(normal, q) > 1 for q in pts):
            raise GeometryError("hull construction produced an invalid facet")
        on = _facet_points(disp, normal)
        verts = _order_polygon(sorted(vset), normal)
        verts = _prune_polygon(verts)
        facets.append(Facet(tuple(normal), tuple(verts), tuple(on)))
    vertices = sorted({v for f in facets for v in f.vertices})
    if (ZERO, ZERO, ZERO) in vertices:
        raise GeometryError("origin is not interior to the growth polytope")
    return vertices, facets


def chart_project(normal, p):
    """Project a point of the facet plane to exact 2-d chart coordinates."""
    drop = max(range(len(normal)), key=lambda i: (abs(normal[i]), -i))
    return tuple(p[i] for i in range(len(normal)) if i != drop)


def chart_lift(normal, q):
    """Inverse of chart_project for points on the plane <normal, x> = 1."""
    drop = max(range(len(normal)), key=lambda i: (abs(normal[i]), -i))
    axes = [i for i in range(len(normal)) if i != drop]
    rest = ONE - sum(normal[a] * q[k] for k, a in enumerate(axes))
    missing = rest / normal[drop]
    out = [ZERO] * len(normal)
    for k, a in enumerate(axes):
        out[a] = q[k]
    out[drop] = missing
    return tuple(out)


def _order_polygon(points3, normal):
    """Order coplanar points cyclically around their centroid."""
    pts2 = [chart_project(normal, p) for p in points3]
    cx = sum(p[0] for p in pts2) / len(pts2)
    cy = sum(p[1] for p in pts2) / len(pts2)
    rel = [(p[0] - cx, p[1] - cy) for p in pts2]

    def half_of(v):
        if v[1] > 0 or (v[1] == 0 and v[0] > 0):
            return 0
        return 1

    import functools

    def cmp(i, j):
        hi, hj = half_of(rel[i]), half_of(rel[j])
        if hi != hj:
            return -1 if hi < hj else 1
        c = cross2(rel[i], rel[j])
        if c > 0:
            return -1
        if c < 0:
            return 1
        return 0

    order = sorted(range(len(points3)), key=functools.cmp_to_key(cmp))
    return [points3[i] for i in order]


def _prune_polygon(verts):
    """Drop points interior to the edges of an ordered convex polygon."""
    if len(verts) <= 3:
        return verts
    out = []
    n = len(verts)
    for i in range(n):
        a, b, c = verts[(i - 1) % n], verts[i], verts[(i + 1) % n]
        ab, cb = vsub(b, a), vsub(c, b)
        crossv = cross3(ab, cb) if len(b) == 3 else cross2(ab, cb)
        if (crossv != (ZERO, ZERO, ZERO)) if len(b) == 3 else (crossv != 0):
            out.append(b)
    return out


def build_growth_polytope(points) -> GrowthPolytope:
    return GrowthPolytope(points)


# ---------------------------------------------------------------------------
# facet triangulations
# ---------------------------------------------------------------------------

@dataclass
class FacetTriangulation:
    facet: Facet
    simplices: tuple   # tuples of n points each (vertices of the simplex)
    verified: bool = True


def triangulate_facets(polytope: GrowthPolytope, override=None):
    """Triangulations of all facets satisfying the two compatibility
    conditions (rational vertices; every conv(F) meets every simplex in a
    face of the simplex).  `override` optionally maps facet normals to
    prescribed simplex lists, which are then verified instead."""
    out = []
    for facet in polytope.facets:
        if override is not None and tuple(facet.normal) in override:
            simplices = tuple(tuple(tuple(Fraction(x) for x in v) for v in s)
                              for s in override[tuple(facet.normal)])
        elif polytope.dim == 1:
            simplices = ((facet.vertices[0],),)
        elif polytope.dim == 2:
            pts = list(facet.points)
            simplices = tuple((pts[i], pts[i + 1]) for i in range(len(pts) - 1))
        else:
            simplices = _triangulate_facet_3d(facet)
        _verify_triangulation(polytope, facet, simplices)
        out.append(FacetTriangulation(facet, simplices))
    return out


def _seg_intersection(p1, p2, q1, q2):
    """Proper or touching intersection point of two segments, or None."""
    d1, d2 = vsub(p2, p1), vsub(q2, q1)
    denom = cross2(d1, d2)
    if denom == 0:
        return None
    t = cross2(vsub(q1, p1), d2) / denom
    s = cross2(vsub(q1, p1), d1) / denom
    if 0 <= t <= 1 and 0 <= s <= 1:
        return vadd(p1, vscale(t, d1))
    return None


def _triangulate_facet_3d(facet: Facet):
    normal = facet.normal
    S = [chart_project(normal, p) for p in facet.points]
    poly = [chart_project(normal, v) for v in facet.vertices]
    nodes = set(S) | set(poly)
    segments = [(a, b) for a, b in combinations(sorted(nodes), 2)]
    for (a, b), (c, d) in combinations(segments, 2):
        x = _seg_intersection(a, b, c, d)
        if x is not None:
            nodes.add(x)
    nodes = sorted(nodes)
    # split each segment at every node lying on it
    adj = {v: set() for v in nodes}
    for (a, b) in segments:
        d = vsub(b, a)
        on = []
        for x in nodes:
            r = vsub(x, a)
            if cross2(d, r) == 0:
                t = vdot(r, d) / vdot(d, d)
                if 0 <= t <= 1:
                    on.append((t, x))
        on.sort()
        for (t0, x0), (t1, x1) in zip(on, on[1:]):
            if x0 != x1:
                adj[x0].add(x1)
                adj[x1].add(x0)
    cells = _trace_cells(adj)
    tris = []
    for cell in cells:
        anchor = min(cell)
        k = cell.index(anchor)
        cell = cell[k:] + cell[:k]
        for i in range(1, len(cell) - 1):
            tri2 = (cell[0], cell[i], cell[i + 1])
            if cross2(vsub(tri2[1], tri2[0]), vsub(tri2[2], tri2[0])) == 0:
                continue
            tris.append(tuple(chart_lift(normal, q) for q in tri2))
    return tuple(tris)


def _trace_cells(adj):
    """Bounded faces of a planar straight-line subdivision.

    Directed edges are walked keeping the interior on the left; the one
    clockwise outer face is discarded.
    """
    import functools

    def half_of(v):
        return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1

    order = {}
    for v, nbrs in adj.items():
        rel = {w: vsub(w, v) for w in nbrs}

        def cmp(w1, w2):
            a, b = rel[w1], rel[w2]
            ha, hb = half_of(a), half_of(b)
            if ha != hb:
                return -1 if ha < hb else 1
            c = cross2(a, b)
            return -1 if c > 0 else (1 if c < 0 else 0)

        order[v] = sorted(nbrs, key=functools.cmp_to_key(cmp))
    used = set()
    cells = []
    for v in adj:
        for w in adj[v]:
            if (v, w) in used:
                continue
            face = []
            a, b = v, w
            while (a, b) not in used:
                used.add((a, b))
                face.append(a)
                ring = order[b]
                i = ring.index(a)
                c = ring[(i - 1) % len(ring)]
                a, b = b, c
            area2 = sum(cross2(face[i], face[(i + 1) % len(face)])
                        for i in range(len(face)))
            if area2 > 0:
                cells.append(face)
    return cells


def _hull_2d_points(pts):
    """Convex hull of 2-d points; returns ordered vertex list (may be a
    single point or a segment)."""
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross2(vsub(out[-1], out[-2]), vsub(p, out[-2])) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(list(reversed(pts)))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:  # all points equal
        return pts[:1]
    return hull


def _clip_polygon(subject, clip_tri):
    """Sutherland-Hodgman clip of a convex polygon by a triangle, exact."""
    out = list(subject)
    n = len(clip_tri)
    for i in range(n):
        a, b = clip_tri[i], clip_tri[(i + 1) % n]
        d = vsub(b, a)
        inp, out = out, []
        if not inp:
            break
        m = len(inp)
        for j in range(m):
            p, q = inp[j], inp[(j + 1) % m]
            sp = cross2(d, vsub(p, a))
            sq = cross2(d, vsub(q, a))
            if sp >= 0:
                out.append(p)
            if (sp > 0 and sq < 0) or (sp < 0 and sq > 0):
                t = sp / (sp - sq)
                out.append(vadd(p, vscale(t, vsub(q, p))))
    seen = []
    for p in out:
        if p not in seen:
            seen.append(p)
    return seen


def _clip_segment(p, q, clip_tri):
    lo, hi = ZERO, ONE
    d = vsub(q, p)
    n = len(clip_tri)
    for i in range(n):
        a, b = clip_tri[i], clip_tri[(i + 1) % n]
        e = vsub(b, a)
        sp = cross2(e, vsub(p, a))
        sd = cross2(e, d)
        # inside means cross >= 0
        if sd == 0:
            if sp < 0:
                return None
        else:
            t = -sp / sd
            if sd > 0:
                lo = max(lo, t)
            else:
                hi = min(hi, t)
    if lo > hi:
        return None
    return (vadd(p, vscale(lo, d)), vadd(p, vscale(hi, d)))


def _point_in_tri(x, tri):
    for i in range(3):
        a, b = tri[i], tri[(i + 1) % 3]
        if cross2(vsub(b, a), vsub(x, a)) < 0:
            return False
    return True


def _is_face_of_simplex(piece, tri):
    """piece: list of 2-d points describing conv(F) cap tri; check that it
    is a face of the triangle tri (empty, vertex, edge or tri itself)."""
    if not piece:
        return True
    uniq = sorted(set(piece))
    tv = sorted(set(tri))
    if len(uniq) == 1:
        return uniq[0] in tv
    if len(uniq) == 2:
        edges = {frozenset((tri[i], tri[(i + 1) % 3])) for i in range(3)}
        return frozenset(uniq) in edges
    return uniq == tv


def _verify_triangulation(polytope: GrowthPolytope, facet: Facet, simplices):
    dim = polytope.dim
    if dim == 1:
        if len(simplices) != 1 or len(simplices[0]) != 1:
            raise GeometryError("facet of a 1-d polytope must be one point")
        return
    if dim == 2:
        _verify_triangulation_generic(facet, simplices, dim)
        return
    _verify_triangulation_generic(facet, simplices, dim)


def _verify_triangulation_generic(facet: Facet, simplices, dim):
    normal = facet.normal
    for s in simplices:
        if len(s) != dim:
            raise GeometryError("simplex with wrong vertex count")
        for v in s:
            if vdot(normal, v) != 1:
                raise GeometryError("simplex vertex is off the facet plane")
    S = [chart_project(normal, p) for p in facet.points] if dim == 3 else None
    if dim == 2:
        # simplices are sub-segments of the facet segment; check that they
        # tile it and that the point-compatibility condition holds
        a, b = facet.vertices
        direction = vsub(b, a)
        params = []
        for s in simplices:
            ts = sorted(vdot(vsub(v, a), direction) for v in s)
            params.append((ts[0], ts[1]))
        params.sort()
        total = vdot(direction, direction)
        if params[0][0] != 0 or params[-1][1] != total:
            raise GeometryError("segment triangulation does not cover the facet")
        for (l0, r0), (l1, r1) in zip(params, params[1:]):
            if r0 != l1:
                raise GeometryError("segment triangulation has gaps or overlaps")
        # condition: every facet point must be a simplex vertex, otherwise
        # conv(F) containing it meets some simplex interior
        vertex_set = {v for s in simplices for v in s}
        for p in facet.points:
            if p not in vertex_set:
                raise GeometryError("facet point interior to a simplex")
        return
    # dim == 3: full check of the compatibility condition
    tris2 = [tuple(chart_project(normal, v) for v in s) for s in simplices]
    # orient counter-clockwise
    fixed = []
    for t in tris2:
        if cross2(vsub(t[1], t[0]), vsub(t[2], t[0])) < 0:
            t = (t[0], t[2], t[1])
        fixed.append(t)
    tris2 = fixed
    # cover check: total area equals polygon area and pairwise interiors
    # are disjoint is implied by the construction; verify areas
    poly = [chart_project(normal, v) for v in facet.vertices]
    area_poly = sum(cross2(poly[i], poly[(i + 1) % len(poly)]) for i in range(len(poly)))
    area_tris = sum(cross2(vsub(t[1], t[0]), vsub(t[2], t[0])) for t in tris2)
    if area_poly != area_tris:
        raise GeometryError("triangulation does not cover the facet")
    for face_pts in _power_set(S):
        hull = _hull_2d_points(face_pts)
        for t in tris2:
            if len(hull) == 1:
                piece = [hull[0]] if _point_in_tri(hull[0], t) else []
            elif len(hull) == 2:
                seg = _clip_segment(hull[0], hull[1], t)
                piece = list(seg) if seg else []
            else:
                piece = _clip_polygon(hull, t)
            if not _is_face_of_simplex(piece, t):
                raise GeometryError(
                    "conv(F) meets a simplex in a non-face for F=%r" % (face_pts,))


def _power_set(items):
    items = list(items)
    for r in range(1, len(items) + 1):
        for combo in combinations(items, r):
            yield combo


# ---------------------------------------------------------------------------
# half-space families
# ---------------------------------------------------------------------------

def halfspace_families(polytope: GrowthPolytope, facet: Facet, v):
    """Inclusion-minimal sets Im(nu) cap H over closed half-spaces H of the
    facet hyperplane with v on the boundary.  Returns a list of frozensets
    of displacement points."""
    v = tuple(Fraction(x) for x in v)
    dim = polytope.dim
    S = list(facet.points)
    if dim == 1:
        return [frozenset(S)]
    if dim == 2:
        a, b = facet.vertices
        direction = vsub(b, a)
        order = sorted(S, key=lambda p: vdot(vsub(p, a), direction))
        if v not in order:
            raise GeometryError("vertex is not a facet point in dimension 2")
        i = order.index(v)
        prefix = frozenset(order[:i + 1])
        suffix = frozenset(order[i:])
        fams = []
        if not suffix < prefix:
            fams.append(prefix)
        if not prefix < suffix and prefix != suffix:
            fams.append(suffix)
        if not fams:
            fams = [prefix]
        return fams
    # dim == 3: rotate a closed half-plane of the facet plane around v
    normal = facet.normal
    v2 = chart_project(normal, v)
    pts2 = {p: chart_project(normal, p) for p in S}
    dirs = []
    for p, q in pts2.items():
        d = vsub(q, v2)
        if d != (ZERO, ZERO):
            dirs.append(d)
    if not dirs:
        return [frozenset(S)]
    # candidate boundary normals: perpendiculars of point directions plus a
    # direction strictly inside every angular gap
    cands = []
    for d in dirs:
        cands.append((d[1], -d[0]))
        cands.append((-d[1], d[0]))
    uniq = []
    for c in cands:
        if not any(cross2(c, u) == 0 and vdot(c, u) > 0 for u in uniq):
            uniq.append(c)
    import functools

    def half_of(w):
        return 0 if (w[1] > 0 or (w[1] == 0 and w[0] > 0)) else 1

    def cmp(a, b):
        ha, hb = half_of(a), half_of(b)
        if ha != hb:
            return -1 if ha < hb else 1
        c = cross2(a, b)
        return -1 if c > 0 else (1 if c < 0 else 0)

    uniq.sort(key=functools.cmp_to_key(cmp))
    k = len(uniq)
    mids = []
    for i in range(k):
        u, w = uniq[i], uniq[(i + 1) % k]
        c = cross2(u, w)
        if c > 0:
            mids.append(vadd(u, w))
        elif c == 0 and vdot(u, w) < 0:
            mids.append((-u[1], u[0]))
    families = set()
    for nvec in uniq + mids:
        fam = frozenset(p for p, q in pts2.items()
                        if vdot(vsub(q, v2), nvec) >= 0)
        families.add(fam)
    minimal = [f for f in families
               if not any(g < f for g in families)]
    minimal.sort(key=lambda f: sorted(f))
    return minimal


# ---------------------------------------------------------------------------
# support coefficients
# ---------------------------------------------------------------------------

@dataclass
class SupportCoefficients:
    """Scaled support half-space for one (facet, simplex, vertex, family).

    `a` maps each simplex vertex v' to its coefficient a(v') in (0, 1];
    `w` is the functional of the half-space H = {x : <w, x> <= 1} through
    the scaled points a(v') v'; `h` is the largest alpha with alpha P
    inside H.
    """
    a: dict
    w: tuple
    h: Fraction

    def a_of(self, v):
        return self.a[tuple(v)]


def support_coefficients(polytope: GrowthPolytope, facet: Facet, simplex,
                         v, family, epsilon: Fraction) -> SupportCoefficients:
    v = tuple(Fraction(x) for x in v)
    family = frozenset(tuple(Fraction(x) for x in p) for p in family)
    if not (0 < epsilon < 1):
        raise GeometryError("epsilon must lie in (0, 1)")
    dim = polytope.dim
    if dim == 1:
        return _support_1d(polytope, facet, simplex, v, family, epsilon)
    if dim == 2:
        return _support_2d(polytope, facet, simplex, v, family, epsilon)
    return _support_3d(polytope, facet, simplex, v, family, epsilon)


def _finish(polytope, simplex, v, family, a):
    """Solve for the half-space through the scaled simplex points, compute
    h, and verify the three defining conditions."""
    dim = polytope.dim
    pts = [vscale(a[tuple(q)], q) for q in simplex]
    w = solve_linear([list(p) for p in pts], [ONE] * dim)
    if w is None:
        raise GeometryError("scaled support points do not span a hyperplane")
    hmax = max(vdot(w, u) for u in polytope.vertices)
    if hmax <= 0:
        raise GeometryError("support half-space does not cut the polytope")
    h = 1 / hmax
    av = a[tuple(v)]
    if not (0 < av < 1):
        raise GeometryError("support coefficient a(v)=%s outside (0,1)" % (av,))
    for q in simplex:
        if not (0 < a[tuple(q)] <= 1):
            raise GeometryError("support coefficient outside (0,1]")
    for p in polytope.points:
        if p in family:
            continue
        if vdot(w, p) > 1:
            raise GeometryError("support half-space misses a displacement point")
    return SupportCoefficients(dict(a), tuple(w), h)


def _support_1d(polytope, facet, simplex, v, family, epsilon):
    x = v[0]
    bound = epsilon
    for p in polytope.points:
        if p in family:
            continue
        ratio = p[0] / x
        if ratio > bound:
            bound = ratio
    if bound >= 1:
        raise GeometryError("no valid support coefficient in dimension 1")
    return _finish(polytope, simplex, v, family, {v: bound})


def _alpha_range_2d(polytope, family, fixed, v):
    """Range of alpha > 0 keeping every point outside `family` inside
    H(fixed, alpha v).  A point p = x*fixed + y*v is inside exactly when
    x + y/alpha <= 1, which is a lower bound on alpha for y > 0 and an
    upper bound for y < 0 (when x > 1)."""
    lo, hi = ZERO, None
    for p in polytope.points:
        if p in family:
            continue
        sol = solve_linear([[fixed[0], v[0]], [fixed[1], v[1]]], list(p))
        if sol is None:
            # p lies in the degenerate pencil; handled by the caller's
            # verification step
            continue
        x, y = sol
        if y == 0:
            if x > 1:
                raise GeometryError("support construction infeasible")
            continue
        if y < 0:
            if x > 1:
                bound = y / (1 - x)
                if hi is None or bound < hi:
                    hi = bound
            continue
        if 1 - x <= 0:
            raise GeometryError("support construction infeasible")
        need = y / (1 - x)
        if need > lo:
            lo = need
    if hi is not None and lo > hi:
        raise GeometryError("support construction infeasible")
    return lo, hi


def _support_2d(polytope, facet, simplex, v, family, epsilon):
    a_pt, b_pt = facet.vertices
    direction = vsub(b_pt, a_pt)
    order = sorted(facet.points, key=lambda p: vdot(vsub(p, a_pt), direction))
    i = order.index(v)
    suffix = frozenset(order[i:])
    is_suffix = (family == suffix)
    # neighbour on the far side of the family, taken at full scale
    if is_suffix:
        anchor = order[i - 1] if i > 0 else order[i + 1]
    else:
        anchor = order[i + 1] if i + 1 < len(order) else order[i - 1]
    lo, hi = _alpha_range_2d(polytope, family, anchor, v)
    t1 = max(epsilon, lo)
    if hi is not None and t1 > hi:
        t1 = hi if hi >= lo else None
        if t1 is None:
            raise GeometryError("support construction infeasible")
    if t1 >= 1:
        raise GeometryError("support coefficient would reach 1")
    a = {tuple(v): t1}
    for q in simplex:
        q = tuple(q)
        if q == tuple(v):
            continue
        if q == tuple(anchor):
            a[q] = ONE
        else:
            # scale q onto the line through anchor and t1*v
            sol = solve_linear([[anchor[0], t1 * v[0]], [anchor[1], t1 * v[1]]],
                               list(q))
            if sol is None or sol[0] + sol[1] <= 0:
                raise GeometryError("cannot place simplex vertex on support line")
            a[q] = 1 / (sol[0] + sol[1])
    return _finish(polytope, simplex, v, family, a)


def _support_3d(polytope, facet, simplex, v, family, epsilon):
    normal = facet.normal
    S = list(facet.points)
    others = [p for p in S if p not in family]
    v2 = chart_project(normal, v)
    pts2 = {p: chart_project(normal, p) for p in set(S) | set(simplex) | {v}}
    tri2 = [pts2[q] for q in simplex]
    cand_nodes = sorted(set(pts2[p] for p in others) | set(tri2)
                        | set(chart_project(normal, u) for u in facet.vertices))
    lines = set()
    for a2, b2 in combinations(cand_nodes, 2):
        lines.add((a2, vsub(b2, a2)))
    for a2 in cand_nodes:
        for b2, c2 in combinations(cand_nodes, 2):
            d = vsub(c2, b2)
            if d != (ZERO, ZERO):
                lines.add((a2, d))
    best = None
    for (p0, d) in lines:
        if d == (ZERO, ZERO):
            continue
        # half-plane H' = {x : cross(d, x - p0) >= 0}; try both orientations
        for sgn in (1, -1):
            dd = vscale(sgn, d)
            sv = cross2(dd, vsub(v2, p0))
            if sv >= 0:
                continue  # v must be strictly outside H'
            if any(cross2(dd, vsub(pts2[p], p0)) < 0 for p in others):
                continue  # family complement on the facet must lie in H'
            if any(cross2(dd, vsub(t, p0)) > 0 for t in tri2):
                continue  # H' must avoid the simplex interior
            res = _support_3d_from_line(polytope, facet, simplex, v, family,
                                        epsilon, p0, dd)
            if res is None:
                continue
            if best is None or res[0] < best[0]:
                best = res
    if best is None:
        raise GeometryError("no separating boundary line found for the "
                            "support construction")
    return _finish(polytope, simplex, v, family, best[1])


def _support_3d_from_line(polytope, facet, simplex, v, family, epsilon, p0, d):
    normal = facet.normal
    l1 = chart_lift(normal, p0)
    l2 = chart_lift(normal, vadd(p0, d))
    rows = [list(l1), list(l2), list(v)]
    A = solve_linear(rows, [ONE, ONE, ZERO])
    B = solve_linear(rows, [ZERO, ZERO, ONE])
    if A is None or B is None:
        return None
    astar = ZERO
    for p in polytope.points:
        if p in family:
            continue
        if vdot(facet.normal, p) == 1:
            continue  # facet-plane points are handled by the separating line
        alpha_p = vdot(A, p)
        beta_p = vdot(B, p)
        if beta_p > 0:
            denom = 1 - alpha_p
            if denom <= 0:
                return None
            need = beta_p / denom
            if need > astar:
                astar = need
    a_v = max(astar, epsilon)
    if a_v >= 1:
        return None
    a = {tuple(v): a_v}
    wa = tuple(A[i] + B[i] / a_v for i in range(3))
    for q in simplex:
        q = tuple(q)
        if q == tuple(v):
            continue
        val = vdot(wa, q)
        if val <= 0:
            return None
        a[q] = 1 / val
        if not (0 < a[q] <= 1):
            return None
    return (a_v, a)
