"""Triangulated flat surfaces with complex edge holonomies.

A surface is a collection of positively oriented triangles, each carrying
three complex edge vectors that sum to zero, together with an involutive
gluing that pairs triangle edges carrying opposite vectors.  Cone points
arise from the vertex identifications; a vertex of total angle 2*pi*(m+1)
is a zero of order m (m = 0 is a regular marked point).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * math.pi

# Relative tolerances for the metric validation checks.
TOL_CLOSURE = 1e-9
TOL_GLUING = 1e-9
TOL_ANGLE = 1e-7


class SurfaceError(ValueError):
    pass


def _cross(a: complex, b: complex) -> float:
    return a.real * b.imag - a.imag * b.real


def _dot(a: complex, b: complex) -> float:
    return a.real * b.real + a.imag * b.imag


@dataclass(frozen=True)
class StratumSignature:
    """Multiset of zero orders; order 0 marks a regular marked point."""

    zero_orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(m) for m in self.zero_orders)
        object.__setattr__(self, "zero_orders", orders)
        if any(m < 0 for m in orders):
            raise SurfaceError("zero orders must be nonnegative")
        if sum(orders) % 2 != 0:
            raise SurfaceError("zero orders must sum to an even number")

    @property
    def genus(self) -> int:
        return (sum(self.zero_orders) + 2) // 2

    @property
    def dimension(self) -> int:
        """Complex dimension of the ambient period-coordinate space."""
        return 2 * self.genus + len(self.zero_orders) - 1


@dataclass(frozen=True)
class ValidationReport:
    structural_errors: tuple[str, ...]
    metric_errors: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.structural_errors and not self.metric_errors

    def __str__(self):
        if self.ok:
            return "valid"
        lines = [f"structural: {e}" for e in self.structural_errors]
        lines += [f"metric: {e}" for e in self.metric_errors]
        return "\n".join(lines)


class TranslationSurface:
    """Immutable triangulated translation surface.

    Parameters
    ----------
    triangles : sequence of 3 complex edge vectors per triangle.  Edge k of a
        triangle runs from corner k to corner k+1 (mod 3); positively
        oriented triangles have cross(e0, e1) > 0.
    gluings : dict mapping (tri, edge) -> (tri, edge).  Must be a fixed-point
        free involution; glued edges carry opposite vectors.
    edge_coords : optional integer array of shape (n_tri, 3, n_params) giving
        each edge vector as an integral combination of chart parameters.
        Enables exact homology classes for enumerated saddle connections.
    """

    def __init__(self, triangles, gluings, edge_coords=None):
        tri = [tuple(complex(z) for z in t) for t in triangles]
        if any(len(t) != 3 for t in tri):
            raise SurfaceError("each triangle needs exactly 3 edges")
        self._edges = tri
        self.n_triangles = len(tri)
        self._gluings = dict(gluings)
        self._coeffs = None
        if edge_coords is not None:
            arr = np.asarray(edge_coords)
            if arr.shape[:2] != (self.n_triangles, 3):
                raise SurfaceError("edge_coords shape mismatch")
            self._coeffs = [
                [tuple(int(x) for x in arr[t, e]) for e in range(3)]
                for t in range(self.n_triangles)
            ]
        self._neighbor = self._build_neighbor_table()
        self._corner_vertex, self._n_vertices = self._identify_vertices()

    # -- construction helpers -------------------------------------------------

    def _build_neighbor_table(self):
        nbr = [[None] * 3 for _ in range(self.n_triangles)]
        for (t, e), (t2, e2) in self._gluings.items():
            if 0 <= t < self.n_triangles and e in (0, 1, 2):
                nbr[t][e] = (t2, e2)
        return nbr

    def _identify_vertices(self):
        # Union-find over corners; corner k of a triangle is the start of
        # edge k.  Gluing (t,e) <-> (t2,e2) identifies corner e of t with
        # the end corner of edge e2 (= corner e2+1) and vice versa.
        n = 3 * self.n_triangles
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)

        for (t, e), (t2, e2) in self._gluings.items():
            union(3 * t + e, 3 * t2 + (e2 + 1) % 3)
            union(3 * t + (e + 1) % 3, 3 * t2 + e2)
        roots = sorted({find(x) for x in range(n)})
        index = {r: i for i, r in enumerate(roots)}
        corner_vertex = [[index[find(3 * t + c)] for c in range(3)]
                         for t in range(self.n_triangles)]
        return corner_vertex, len(roots)

    # -- basic geometry --------------------------------------------------------

    def edge(self, t: int, e: int) -> complex:
        return self._edges[t][e]

    def edge_coeff(self, t: int, e: int):
        return None if self._coeffs is None else self._coeffs[t][e]

    @property
    def has_coords(self) -> bool:
        return self._coeffs is not None

    @property
    def n_params(self) -> int:
        if self._coeffs is None:
            raise SurfaceError("surface carries no chart coordinates")
        return len(self._coeffs[0][0])

    @property
    def gluings(self):
        return dict(self._gluings)

    @property
    def n_vertices(self) -> int:
        return self._n_vertices

    def vertex_of_corner(self, t: int, c: int) -> int:
        return self._corner_vertex[t][c]

    def corner_angle(self, t: int, c: int) -> float:
        a = self._edges[t][c]
        b = -self._edges[t][(c - 1) % 3]
        return math.atan2(_cross(a, b), _dot(a, b)) % TWO_PI

    def vertex_angles(self) -> list[float]:
        angles = [0.0] * self._n_vertices
        for t in range(self.n_triangles):
            for c in range(3):
                angles[self._corner_vertex[t][c]] += self.corner_angle(t, c)
        return angles

    def vertex_orders(self) -> list[int]:
        """Cone angle of vertex v is 2*pi*(order+1)."""
        return [int(round(a / TWO_PI)) - 1 for a in self.vertex_angles()]

    def area(self) -> float:
        return sum(0.5 * _cross(t[0], t[1]) for t in self._edges)

    def scale(self) -> float:
        return max(abs(z) for t in self._edges for z in t)

    def rescaled(self, s: float) -> "TranslationSurface":
        """Surface with every edge vector multiplied by s > 0.

        Chart coordinates are kept: homology classes are scale invariant.
        """
        tri = [[s * z for z in t] for t in self._edges]
        return TranslationSurface(tri, self._gluings, self._coeffs)

    def mapped(self, m) -> "TranslationSurface":
        """Apply a real-linear map (2x2 matrix acting on R^2) to all edges."""
        m = np.asarray(m, dtype=float)
        tri = [
            [
                complex(m[0, 0] * z.real + m[0, 1] * z.imag,
                        m[1, 0] * z.real + m[1, 1] * z.imag)
                for z in t
            ]
            for t in self._edges
        ]
        return TranslationSurface(tri, self._gluings, None)

    # -- validation -------------------------------------------------------------

    def validate(self, sig: StratumSignature | None = None) -> ValidationReport:
        structural: list[str] = []
        metric: list[str] = []
        seen = set()
        for t in range(self.n_triangles):
            for e in range(3):
                key = (t, e)
                if key not in self._gluings:
                    structural.append(f"edge {key} has no gluing partner")
                    continue
                partner = self._gluings[key]
                if partner == key:
                    structural.append(f"edge {key} glued to itself")
                    continue
                pt, pe = partner
                if not (0 <= pt < self.n_triangles and pe in (0, 1, 2)):
                    structural.append(f"edge {key} glued to missing edge {partner}")
                    continue
                if self._gluings.get(partner) != key:
                    structural.append(f"gluing at {key} is not an involution")
                    continue
                seen.add(key)
        if structural:
            return ValidationReport(tuple(structural), tuple(metric))

        s = self.scale()
        for t in range(self.n_triangles):
            e0, e1, e2 = self._edges[t]
            if abs(e0 + e1 + e2) > TOL_CLOSURE * s:
                metric.append(f"triangle {t} edges do not close up")
            if _cross(e0, e1) <= 0:
                metric.append(f"triangle {t} is not positively oriented")
        for (t, e) in seen:
            (t2, e2) = self._gluings[(t, e)]
            if (t, e) < (t2, e2):
                if abs(self._edges[t][e] + self._edges[t2][e2]) > TOL_GLUING * s:
                    metric.append(
                        f"glued edges {(t, e)} and {(t2, e2)} are not opposite")
        if self.area() <= 0:
            metric.append("total area is not positive")

        if sig is not None and not metric:
            angles = self.vertex_angles()
            orders = []
            for v, a in enumerate(angles):
                m = round(a / TWO_PI) - 1
                if m < 0 or abs(a - TWO_PI * (m + 1)) > TOL_ANGLE:
                    metric.append(
                        f"vertex {v} has cone angle {a:.12g}, "
                        "not a positive multiple of 2*pi")
                else:
                    orders.append(m)
            if not metric and sorted(orders) != sorted(sig.zero_orders):
                metric.append(
                    f"vertex orders {sorted(orders)} do not match "
                    f"stratum {sorted(sig.zero_orders)}")
        return ValidationReport(tuple(structural), tuple(metric))

    # -- serialization ------------------------------------------------------------

    def to_json(self) -> str:
        data = {
            "triangles": [[[z.real, z.imag] for z in t] for t in self._edges],
            "gluings": sorted(
                [list(k), list(v)] for k, v in self._gluings.items() if k < v
            ),
            "zeros": {str(v): m for v, m in enumerate(self.vertex_orders())},
        }
        return json.dumps(data, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "TranslationSurface":
        data = json.loads(text)
        tri = [[complex(re, im) for re, im in t] for t in data["triangles"]]
        gluings = {}
        for (a, b) in data["gluings"]:
            ka, kb = (a[0], a[1]), (b[0], b[1])
            gluings[ka] = kb
            gluings[kb] = ka
        return cls(tri, gluings)


def validate_surface(surface: TranslationSurface,
                     sig: StratumSignature | None = None) -> ValidationReport:
    return surface.validate(sig)


def area(surface: TranslationSurface) -> float:
    return surface.area()


# -- polygon ingestion -----------------------------------------------------------


def shoelace_area(vertices) -> float:
    n = len(vertices)
    return 0.5 * sum(
        _cross(vertices[i], vertices[(i + 1) % n]) for i in range(n)
    )


def _point_in_triangle(p, a, b, c, eps):
    d1 = _cross(b - a, p - a)
    d2 = _cross(c - b, p - b)
    d3 = _cross(a - c, p - c)
    return d1 >= -eps and d2 >= -eps and d3 >= -eps


def ear_clip(vertices) -> list[tuple[int, int, int]]:
    """Triangulate a simple positively oriented polygon by ear clipping.

    Returns triangles as triples of indices into the input vertex list.
    """
    n = len(vertices)
    if n < 3:
        raise SurfaceError("polygon needs at least 3 vertices")
    scale = max(abs(v) for v in vertices)
    eps = 1e-12 * scale * scale
    idx = list(range(n))
    out = []
    guard = 0
    while len(idx) > 3:
        guard += 1
        if guard > 4 * n * n:
            raise SurfaceError("ear clipping failed; polygon may be degenerate")
        clipped = False
        for k in range(len(idx)):
            i_prev = idx[k - 1]
            i_cur = idx[k]
            i_next = idx[(k + 1) % len(idx)]
            a, b, c = vertices[i_prev], vertices[i_cur], vertices[i_next]
            if _cross(b - a, c - b) <= eps:
                continue
            ok = True
            for j in idx:
                if j in (i_prev, i_cur, i_next):
                    continue
                if _point_in_triangle(vertices[j], a, b, c, eps):
                    ok = False
                    break
            if ok:
                out.append((i_prev, i_cur, i_next))
                del idx[k]
                clipped = True
                break
        if not clipped:
            raise SurfaceError("no ear found; polygon not simple enough")
    out.append((idx[0], idx[1], idx[2]))
    return out


def polygon_simple_mask(verts: np.ndarray, rel_eps=1e-12) -> np.ndarray:
    """Vectorized strict simplicity test for a batch of polygons.

    ``verts`` has shape (batch, m), complex.  Rejects degenerate edges,
    improper contacts between non-adjacent edges, and reversal at a joint.
    """
    verts = np.atleast_2d(np.asarray(verts, dtype=complex))
    _, m = verts.shape
    e = np.roll(verts, -1, axis=1) - verts
    scale = np.abs(verts).max(axis=1) + np.abs(e).max(axis=1)
    ok = scale > 0
    safe = np.where(scale > 0, scale, 1.0)
    eps = rel_eps * safe * safe
    ok &= (np.abs(e) > (rel_eps * safe)[:, None]).all(axis=1)

    def cross(a, b):
        return a.real * b.imag - a.imag * b.real

    for i in range(m):
        for j in range(i + 2, m):
            if i == 0 and j == m - 1:
                continue  # adjacent around the wrap
            p1, ei = verts[:, i], e[:, i]
            q1, ej = verts[:, j], e[:, j]
            d1 = cross(ei, q1 - p1)
            d2 = cross(ei, q1 + ej - p1)
            d3 = cross(ej, p1 - q1)
            d4 = cross(ej, p1 + ei - q1)
            sep_i = (np.maximum(d1, d2) < -eps) | (np.minimum(d1, d2) > eps)
            sep_j = (np.maximum(d3, d4) < -eps) | (np.minimum(d3, d4) > eps)
            ok &= sep_i | sep_j
    prev = np.roll(e, 1, axis=1)
    dot = prev.real * e.real + prev.imag * e.imag
    folded = (np.abs(cross(prev, e)) <= eps[:, None]) & (dot < 0)
    ok &= ~folded.any(axis=1)
    return ok


def polygon_is_simple(vertices, rel_eps=1e-12) -> bool:
    """Strict simplicity: nondegenerate edges, no improper contacts."""
    row = np.asarray([complex(v) for v in vertices])
    return bool(polygon_simple_mask(row[None, :], rel_eps)[0])


def surface_from_symmetric_polygon(sides, coeffs=None) -> TranslationSurface:
    """Build a surface from a centrally symmetric 2n-gon with sides glued in
    opposite pairs.

    ``sides`` lists the first n side vectors z_1..z_n; the polygon has side
    sequence z_1, ..., z_n, -z_1, ..., -z_n.  Side k is glued to side k+n.
    ``coeffs`` optionally gives an integer row per side expressing it in
    chart parameters.
    """
    n = len(sides)
    full = list(sides) + [-z for z in sides]
    verts = [0j]
    for z in full[:-1]:
        verts.append(verts[-1] + z)
    if not polygon_is_simple(verts):
        raise SurfaceError("polygon is not simple")
    if shoelace_area(verts) <= 0:
        raise SurfaceError("polygon is not positively oriented")
    tris = ear_clip(verts)

    vrows = None
    if coeffs is not None:
        dim = len(coeffs[0])
        rows = [tuple(int(x) for x in r) for r in coeffs]
        rows = rows + [tuple(-x for x in r) for r in rows]
        vrows = [tuple([0] * dim)]
        for r in rows[:-1]:
            vrows.append(tuple(a + b for a, b in zip(vrows[-1], r)))

    m = 2 * n
    edge_lookup = {}
    tri_edges = []
    tri_coords = [] if coeffs is not None else None
    for t, (a, b, c) in enumerate(tris):
        vs = (a, b, c)
        tri_edges.append([verts[vs[(k + 1) % 3]] - verts[vs[k]] for k in range(3)])
        if tri_coords is not None:
            tri_coords.append([
                tuple(x - y for x, y in zip(vrows[vs[(k + 1) % 3]], vrows[vs[k]]))
                for k in range(3)
            ])
        for k in range(3):
            edge_lookup[(vs[k], vs[(k + 1) % 3])] = (t, k)

    gluings = {}
    for (a, b), (t, k) in edge_lookup.items():
        if (b, a) in edge_lookup:  # interior diagonal
            gluings[(t, k)] = edge_lookup[(b, a)]
        else:  # boundary side (a, a+1): partner is the opposite side
            pa, pb = (a + n) % m, (b + n) % m
            gluings[(t, k)] = edge_lookup[(pa, pb)]
    return TranslationSurface(tri_edges, gluings, tri_coords)
