"""Certificate constants for the growth series of a periodic graph.

Everything here is exact: distances are integers (edge weights), gauges and
the derived constants are rationals.  The three layers are

  * combinatorial constants C1 and C2' bounding graph distance against the
    polytope gauge,
  * per-(facet, vertex) moduli cpx and lower-bound data m, s used by the
    step-translation certificates,
  * the assembled report with the truncation degree beta.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .cycles import NuTable
from .exactalg import lcm_int, solve_linear, vadd, vdot, vscale, vsub
from .geometry import (FacetTriangulation, GrowthPolytope, GeometryError,
                       SupportCoefficients, halfspace_families,
                       support_coefficients)
from .graph import PeriodicGraph

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# shortest-path helpers (small balls; the big engine lives in lattice.py)
# ---------------------------------------------------------------------------

def _dijkstra_ball(g: PeriodicGraph, start, radius):
    """Exact distances from `start` to every vertex within weighted
    distance `radius`.  Vertices are (class, offset-tuple)."""
    dist = {start: 0}
    heap = [(0, start)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        cls, off = u
        for e in g.out_edges[cls]:
            nd = d + e.weight
            if nd > radius:
                continue
            v = (e.dst, tuple(o + s for o, s in zip(off, e.shift)))
            if nd < dist.get(v, nd + 1):
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def _phi(g: PeriodicGraph, vertex, base_pos):
    cls, off = vertex
    return tuple(g.pos[cls][i] + off[i] - base_pos[i] for i in range(g.dim))


def compute_C1(g: PeriodicGraph, polytope: GrowthPolytope, nu: NuTable,
               start_class: int) -> Fraction:
    """Largest defect gauge(Phi(y) - Phi(x0)) - d(x0, y) over vertices
    reachable by walks shorter (in edge count) than the class count."""
    base = g.pos[start_class]
    start = (start_class, (0,) * g.dim)
    # breadth by edge count, tracking minimal weight per vertex
    frontier = {start: 0}
    best = {start: 0}
    for _ in range(g.n_classes - 1):
        nxt = {}
        for (cls, off), w in frontier.items():
            for e in g.out_edges[cls]:
                v = (e.dst, tuple(o + s for o, s in zip(off, e.shift)))
                nw = w + e.weight
                if nw < best.get(v, nw + 1):
                    best[v] = nw
                    nxt[v] = nw
                elif v not in best:
                    best[v] = nw
                    nxt[v] = nw
        frontier = nxt
        if not frontier:
            break
    # `best` now holds, for every vertex reachable within c-1 edges, the
    # least weight over such short walks; true distance can only be smaller,
    # so recompute it exactly inside a ball
    radius = max(best.values()) if best else 0
    dist = _dijkstra_ball(g, start, radius)
    c1 = ZERO
    for v in best:
        d = dist[v]
        defect = polytope.gauge(_phi(g, v, base)) - d
        if defect > c1:
            c1 = defect
    return c1


def _covering_radius_targets(g: PeriodicGraph, polytope: GrowthPolytope,
                             triangulations, nu: NuTable, start_class: int):
    """Graph vertices whose relative position lies in one of the half-open
    boxes spanned by d_v * v for the simplex vertices v, d_v the least
    cycle weight at v.  Returned as (class, offset) pairs.

    The boxes come from fan triangulations of each facet using only the
    facet's own vertices: interior subdivision points (which the Ehrhart
    stratification may introduce) have no cycle weight of their own and
    are not part of the covering bound."""
    import itertools

    base = g.pos[start_class]
    targets = set()
    for facet in polytope.facets:
        verts = facet.vertices
        if g.dim == 1:
            fan = [tuple(verts)]
        else:
            fan = [(verts[0],) + tuple(verts[i:i + g.dim - 1])
                   for i in range(1, len(verts) - g.dim + 2)]
        for simplex in fan:
            spans = [vscale(Fraction(nu.min_weight(v)), v) for v in simplex]
            dim = g.dim
            lo = [ZERO] * dim
            hi = [ZERO] * dim
            for s in spans:
                for i in range(dim):
                    if s[i] < 0:
                        lo[i] += s[i]
                    else:
                        hi[i] += s[i]
            rows = [[spans[j][i] for j in range(len(spans))]
                    for i in range(dim)]
            for cls in range(g.n_classes):
                frac = [g.pos[cls][i] - base[i] for i in range(dim)]
                ranges = [range(math.ceil(lo[i] - frac[i]),
                                math.floor(hi[i] - frac[i]) + 1)
                          for i in range(dim)]
                for off in itertools.product(*ranges):
                    q = [frac[i] + off[i] for i in range(dim)]
                    coeffs = solve_linear([list(r) for r in rows], q)
                    if coeffs is None:
                        raise GeometryError(
                            "degenerate simplex box in the covering region")
                    if all(0 <= c < 1 for c in coeffs):
                        targets.add((cls, off))
    return sorted(targets)


def _covering_distances(g: PeriodicGraph, start_class: int, targets,
                        cap: int):
    """Least weights of walks from the start vertex to each target vertex
    (class, offset) whose quotient image visits every class.  A single
    Dijkstra sweep over (class, offset, visited-mask) states serves all
    targets; states are pruned against a per-(class, offset) Pareto
    frontier (a state is useless when another one at the same vertex has a
    superset mask and no larger distance).  Returns a dict; targets not
    reachable by a covering walk of weight <= cap are absent."""
    full = (1 << g.n_classes) - 1
    want = set(targets)
    found = {}
    start_mask = 1 << start_class
    start_pos = (0,) * g.dim
    pareto = {(start_class, start_pos): [(start_mask, 0)]}
    dist = {(start_class, start_pos, start_mask): 0}
    heap = [(0, start_class, start_pos, start_mask)]
    while heap:
        d, cls, off, mask = heapq.heappop(heap)
        if d > dist.get((cls, off, mask), d):
            continue
        if mask == full and (cls, off) in want and (cls, off) not in found:
            found[(cls, off)] = d
            if len(found) == len(want):
                return found
        for e in g.out_edges[cls]:
            nd = d + e.weight
            if nd > cap:
                continue
            noff = tuple(o + s for o, s in zip(off, e.shift))
            nmask = mask | (1 << e.dst)
            nkey = (e.dst, noff, nmask)
            prev = dist.get(nkey)
            if prev is not None and prev <= nd:
                continue
            spot = pareto.setdefault((e.dst, noff), [])
            if any((m2 | nmask) == m2 and d2 <= nd for m2, d2 in spot):
                continue
            spot[:] = [(m2, d2) for (m2, d2) in spot
                       if not ((nmask | m2) == nmask and nd <= d2)]
            spot.append((nmask, nd))
            dist[nkey] = nd
            heapq.heappush(heap, (nd, nkey[0], nkey[1], nkey[2]))
    return found


def _covering_distances_unit(g: PeriodicGraph, polytope: GrowthPolytope,
                             start_class: int, targets, cap: int, c1):
    """Vectorized variant of _covering_distances for unit edge weights.

    Runs breadth-first search over states (visited-mask, class, offset)
    encoded as flat integers, with a packed visited bit-array.  Offsets are
    confined to a box large enough for every walk of weight <= cap: any
    prefix of such a walk satisfies gauge <= weight + C1.
    """
    import numpy as np

    dim, c = g.dim, g.n_classes
    base = g.pos[start_class]
    margin = [max(abs(g.pos[cls][k] - base[k]) for cls in range(c))
              for k in range(dim)]
    pad = max(max(abs(s) for s in e.shift) for es in g.out_edges.values()
              for e in es)
    bound = [int(math.ceil((cap + c1) * polytope.max_abs_coordinate(k)
                           + margin[k])) + 1 + pad for k in range(dim)]
    sizes = [2 * b + 1 for b in bound]
    strides = [1] * dim
    for k in range(dim - 2, -1, -1):
        strides[k] = strides[k + 1] * sizes[k + 1]
    ncells = sizes[0] * strides[0]
    # strides index a virtual box only; nothing of box size is allocated,
    # so a skewed gauge ball occupying a sliver of the box costs nothing
    center = sum(bound[k] * strides[k] for k in range(dim))

    deltas = {a: [(e.dst,
                   sum(e.shift[k] * strides[k] for k in range(dim)))
                  for e in g.out_edges[a]] for a in range(c)}

    def encode(mask, cls, cell):
        return (mask * c + cls) * ncells + cell

    def cell_of(off):
        return center + sum(off[k] * strides[k] for k in range(dim))

    full = (1 << c) - 1
    target_ids = {encode(full, t_cls, cell_of(t_off)): (t_cls, t_off)
                  for (t_cls, t_off) in targets}
    keys = np.fromiter(target_ids, dtype=np.int64, count=len(target_ids))

    def in_box(cells):
        ok = np.ones(cells.shape, dtype=bool)
        rest = cells
        for k in range(dim):
            coord, rest = np.divmod(rest, strides[k]) if k < dim - 1 \
                else (rest, None)
            ok &= (coord >= pad) & (coord <= sizes[k] - 1 - pad)
        return ok

    start_state = encode(1 << start_class, start_class, cell_of((0,) * dim))
    visited = np.array([start_state], dtype=np.int64)
    frontier = visited
    found = {}
    for d in range(cap + 1):
        if frontier.size and len(target_ids):
            idx = np.clip(np.searchsorted(frontier, keys), 0,
                          frontier.size - 1)
            for hid in keys[frontier[idx] == keys].tolist():
                found.setdefault(target_ids[hid], d)
        if len(found) == len(target_ids) or not frontier.size or d == cap:
            break
        cells = frontier % ncells
        rest = frontier // ncells
        clss = rest % c
        masks = rest // c
        chunks = []
        for a in range(c):
            sel = clss == a
            if not sel.any():
                continue
            cells_a = cells[sel]
            masks_a = masks[sel]
            for (b, lin) in deltas[a]:
                ncell = cells_a + lin
                ok = in_box(ncell)
                nmask = masks_a[ok] | (1 << b)
                chunks.append((nmask * c + b) * ncells + ncell[ok])
        if not chunks:
            frontier = np.empty(0, dtype=np.int64)
            continue
        cand = np.unique(np.concatenate(chunks))
        fresh = np.ones(cand.size, dtype=bool)
        pos = np.searchsorted(visited, cand)
        inside = pos < visited.size
        fresh[inside] = visited[pos[inside]] != cand[inside]
        frontier = cand[fresh]
        visited = np.concatenate([visited, frontier])
        visited.sort()
    return found


def compute_C2_prime(g: PeriodicGraph, polytope: GrowthPolytope,
                     triangulations, nu: NuTable,
                     start_class: int) -> Fraction:
    """Constant bounding the all-classes covering distance minus the gauge
    over the vertices of the simplex boxes region."""
    targets = _covering_radius_targets(g, polytope, triangulations, nu,
                                       start_class)
    base = g.pos[start_class]
    W = g.max_weight
    gauges = {}
    for t_cls, t_off in targets:
        q = tuple(g.pos[t_cls][i] - base[i] + t_off[i]
                  for i in range(g.dim))
        gauges[(t_cls, t_off)] = polytope.gauge(q)
    cap = (int(math.ceil(max(gauges.values()))) if gauges else 0) \
        + W * (2 * g.n_classes + 4)
    unit = all(e.weight == 1 for es in g.out_edges.values() for e in es)
    c1 = compute_C1(g, polytope, nu, start_class) if unit else None
    while True:
        if unit:
            found = _covering_distances_unit(g, polytope, start_class,
                                             targets, cap, c1)
        else:
            found = _covering_distances(g, start_class, targets, cap)
        if len(found) == len(targets):
            break
        cap *= 2
        if cap > 10 ** 7:
            raise RuntimeError("covering distance search exploded")
    c2 = ZERO
    for key, d in found.items():
        val = Fraction(d) - gauges[key]
        if val > c2:
            c2 = val
    return c2


# ---------------------------------------------------------------------------
# moduli and lower-bound data per (facet, vertex)
# ---------------------------------------------------------------------------

def compute_cpx(nu: NuTable, family_union, v):
    """Least period D such that every exact convex combination of points of
    the half-space families expressing v forces D-step translations whose
    displacement is integral.

    For each linearly independent subset U of the family union with v in
    conv(U) (coefficients c_u > 0 summing to at most structure), each c_u
    with denominator q against the cycle length L of u forces the modulus
    L*q / gcd(p, L*q) where c_u = p/q.  The result is the lcm over all
    forced moduli; vertices expressible only by themselves get the lcm of
    their own cycle lengths.
    """
    v = tuple(Fraction(x) for x in v)
    pts = sorted(set(tuple(Fraction(x) for x in p) for p in family_union))
    dim = len(v)
    moduli = set()
    for r in range(1, dim + 1):
        for U in combinations(pts, r):
            coeffs = _convex_coords(U, v)
            if coeffs is None:
                continue
            for u, c in zip(U, coeffs):
                if c == 0:
                    continue
                L = lcm_int(list(nu.lengths(u)))
                p, q = c.numerator, c.denominator
                m = (L * q) // math.gcd(p, L * q)
                moduli.add(m)
    if not moduli:
        moduli.add(lcm_int(list(nu.lengths(v))))
    return lcm_int(sorted(moduli))


def _convex_coords(U, v):
    """Coefficients c >= 0 with sum 1 and sum c_u u = v, for linearly
    independent U; None when no such combination exists."""
    dim = len(v)
    rows = [[u[i] for u in U] for i in range(dim)]
    rows.append([ONE] * len(U))
    rhs = list(v) + [ONE]
    # overdetermined solve: use the first len(U) independent rows, verify rest
    import itertools
    for idx in itertools.combinations(range(dim + 1), len(U)):
        sub = [rows[i] for i in idx]
        sol = solve_linear(sub, [rhs[i] for i in idx])
        if sol is None:
            continue
        if all(sum(rows[i][j] * sol[j] for j in range(len(U))) == rhs[i]
               for i in range(dim + 1)):
            if all(c >= 0 for c in sol):
                return tuple(sol)
            return None
    return None


def compute_m(nu: NuTable, family_union, v, cpx):
    """Per-point repetition counts m(u): the largest ceil(cpx * c_u) over
    valid convex expressions of v using u; defaults to 1, and to cpx for
    v itself when v is extreme."""
    v = tuple(Fraction(x) for x in v)
    pts = sorted(set(tuple(Fraction(x) for x in p) for p in family_union))
    dim = len(v)
    m = {u: 1 for u in pts}
    found_any = False
    for r in range(1, dim + 1):
        for U in combinations(pts, r):
            coeffs = _convex_coords(U, v)
            if coeffs is None:
                continue
            found_any = True
            for u, c in zip(U, coeffs):
                if c == 0:
                    continue
                val = math.ceil(cpx * c)
                if val > m[u]:
                    m[u] = val
    if not found_any and v in m:
        m[v] = cpx
    return m


def compute_sF(nu: NuTable, family, m):
    """Step budget of a family: sum over its points u and cycle lengths d of
    m(u) + d * (num(u, d) - 1)."""
    total = 0
    for u in sorted(family):
        for d in sorted(nu.lengths(u)):
            total += m[u] + d * (nu.num(u, d) - 1)
    return total


# ---------------------------------------------------------------------------
# assembled report
# ---------------------------------------------------------------------------

@dataclass
class VertexData:
    facet_index: int
    simplex_index: int
    vertex: tuple
    families: list          # list of frozensets
    cpx: int
    m: dict                 # family-union point -> count
    s_by_family: dict       # family -> s^F
    support: dict           # family -> SupportCoefficients
    alpha: Fraction = ZERO
    alpha_prime: Fraction = ZERO
    beta: Fraction = ZERO


@dataclass
class InvariantReport:
    C1: Fraction
    C2_prime: Fraction
    cpx_global: int
    beta: Fraction
    beta_by_simplex: dict   # (facet_index, simplex_index) -> Fraction
    vertex_data: list       # list of VertexData
    epsilon: Fraction = Fraction(1, 2)

    def cpx_values(self):
        return sorted({vd.cpx for vd in self.vertex_data})

    def simplex_cpx_products(self):
        """Per simplex, the multiset of cpx values of its vertices."""
        prods = {}
        for vd in self.vertex_data:
            prods.setdefault((vd.facet_index, vd.simplex_index), []).append(vd.cpx)
        return {k: sorted(v) for k, v in prods.items()}


def assemble_report(g: PeriodicGraph, polytope: GrowthPolytope,
                    triangulations, nu: NuTable, start_class: int,
                    epsilon: Fraction = Fraction(1, 2)) -> InvariantReport:
    C1 = compute_C1(g, polytope, nu, start_class)
    C2p = compute_C2_prime(g, polytope, triangulations, nu, start_class)
    W = g.max_weight
    c = g.n_classes
    all_vd = []
    cpx_all = []
    for ft in triangulations:
        facet = ft.facet
        fam_cache = {}
        cpx_cache = {}
        for si, simplex in enumerate(ft.simplices):
            for v in simplex:
                if v not in fam_cache:
                    fam_cache[v] = halfspace_families(polytope, facet, v)
                families = fam_cache[v]
                union = set()
                for f in families:
                    union |= f
                if v not in cpx_cache:
                    cpx_cache[v] = compute_cpx(nu, union, v)
                cpx = cpx_cache[v]
                m = compute_m(nu, union, v, cpx)
                s_by = {f: compute_sF(nu, f, m) for f in families}
                support = {}
                for f in families:
                    support[f] = support_coefficients(
                        polytope, facet, simplex, v, f, epsilon)
                vd = VertexData(facet.index, si, tuple(v), families, cpx, m,
                                s_by, support)
                _fill_bounds(vd, C1, C2p, W, c)
                all_vd.append(vd)
                cpx_all.append(cpx)
    beta_by_simplex = {}
    for vd in all_vd:
        key = (vd.facet_index, vd.simplex_index)
        beta_by_simplex[key] = beta_by_simplex.get(key, ZERO) + vd.beta
    beta = C2p + max(beta_by_simplex.values())
    return InvariantReport(C1, C2p, lcm_int(cpx_all), beta,
                           beta_by_simplex, all_vd, epsilon)


def _fill_bounds(vd: VertexData, C1, C2p, W, c):
    alpha = ZERO
    alpha_p = ZERO
    for f in vd.families:
        sc = vd.support[f]
        a = sc.a_of(vd.vertex)
        h = sc.h
        sF = vd.s_by_family[f]
        base = (a / (1 - a))
        common = C1 / h + C2p
        cur_p = base * (common + ((1 - h) / h) * (sF + W * (c - 1)))
        cur = base * (common + ((1 - h) / h) * (W * (c - 1)))
        if cur_p > alpha_p:
            alpha_p = cur_p
        if cur > alpha:
            alpha = cur
    vd.alpha = alpha
    vd.alpha_prime = alpha_p
    vd.beta = max(alpha, alpha_p - vd.cpx)
