"""Saddle connection enumeration by breadth-first geodesic unfolding.

From every corner at a cone point we develop chains of triangles into the
plane, keeping the wedge of directions that remain visible from the corner
through the chain of crossed edges.  A cone point landing strictly inside
the wedge within radius L is a saddle connection; it also blocks the ray
beyond it, so the wedge is split there with open boundaries.  Each oriented
connection is found exactly once: its direction lies in exactly one corner
wedge when wedges are taken half open.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .surface import TranslationSurface

WEDGE_EPS = 1e-9  # relative angular tolerance for boundary coincidence
PAIR_EPS = 1e-12  # relative tolerance for the horizontal-direction tiebreak


class UnfoldingBudgetError(RuntimeError):
    """The chain frontier exceeded the node budget; L is too large for the mesh."""


@dataclass(frozen=True)
class SaddleConnection:
    """Oriented flat geodesic between cone points.

    holonomy       complex displacement, one representative per +- pair
    start_zero     vertex id of the initial cone point
    end_zero       vertex id of the final cone point
    segment_chain  (triangle, entry edge) records of the crossed triangles,
                   or None when chains were not requested
    class_vector   integral homology class in the chart parameter basis,
                   or None when the surface carries no chart coordinates
    """

    holonomy: complex
    start_zero: int
    end_zero: int
    segment_chain: tuple[tuple[int, int], ...] | None = None
    class_vector: tuple[int, ...] | None = None

    @property
    def length(self) -> float:
        return abs(self.holonomy)


def _seg_dist2(a: complex, b: complex) -> float:
    # squared distance from the origin to segment [a, b]
    ab = b - a
    denom = ab.real * ab.real + ab.imag * ab.imag
    if denom == 0.0:
        return a.real * a.real + a.imag * a.imag
    t = -(a.real * ab.real + a.imag * ab.imag) / denom
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    px = a.real + t * ab.real
    py = a.imag + t * ab.imag
    return px * px + py * py


def enumerate_saddle_connections(
    surface: TranslationSurface,
    length_bound: float,
    budget: int = 1_000_000,
    record_chains: bool = False,
    keep_orientations: bool = False,
):
    """All saddle connections of length at most ``length_bound``.

    Returns one representative per unordered +- pair (holonomy in the upper
    half plane, or positive real), unless ``keep_orientations`` is set.
    Raises :class:`UnfoldingBudgetError` when the search frontier exceeds
    ``budget`` expanded chain nodes.
    """
    if length_bound <= 0:
        raise ValueError("length bound must be positive")
    E = surface._edges
    nbr = surface._neighbor
    vert = surface._corner_vertex
    coeffs = surface._coeffs
    L2 = length_bound * length_bound
    eps = WEDGE_EPS

    found = {}
    nodes = 0

    for t0 in range(surface.n_triangles):
        for c0 in range(3):
            v0 = vert[t0][c0]
            ea = E[t0][c0]
            eb = -E[t0][(c0 + 2) % 3]
            ca = coeffs[t0][c0] if coeffs else None

            # The outgoing edge at this corner is itself a geodesic to the
            # next cone point; it is the closed low boundary of the wedge.
            la2 = ea.real * ea.real + ea.imag * ea.imag
            if la2 <= L2:
                _emit(found, ea, v0, vert[t0][(c0 + 1) % 3], ((t0, c0),) if record_chains else None, ca)

            # Continue through the far edge with both boundaries open.
            far = (c0 + 1) % 3
            nx = nbr[t0][far]
            if nx is None:
                continue
            mla = math.sqrt(la2)
            mlb = abs(eb)
            lo = complex(ea.real / mla, ea.imag / mla)
            hi = complex(eb.real / mlb, eb.imag / mlb)
            if lo.real * hi.imag - lo.imag * hi.real <= eps:
                continue
            if _seg_dist2(ea, eb) > L2:
                continue
            chain0 = ((t0, c0),) if record_chains else None
            # state: (tri, entry_edge, pos_cornerE, pos_cornerE1, coeffE, coeffE1, lo, hi, chain)
            t1, e1 = nx
            cb = coeffs[t0][(c0 + 2) % 3] if coeffs else None
            # positions in the neighbor's frame: corner e1 at eb, corner e1+1 at ea
            queue = deque()
            queue.append((t1, e1, eb,
                          tuple(-x for x in cb) if coeffs else None,
                          ea, ca, lo, hi, chain0))
            while queue:
                st = queue.popleft()
                nodes += 1
                if nodes > budget:
                    raise UnfoldingBudgetError(
                        f"unfolding exceeded budget of {budget} nodes")
                t, e, pa, cpa, pb, cpb, lo, hi, chain = st
                e1i = (e + 1) % 3
                e2i = (e + 2) % 3
                apex = pb + E[t][e1i]
                if coeffs:
                    capex = tuple(x + y for x, y in zip(cpb, coeffs[t][e1i]))
                else:
                    capex = None
                r2 = apex.real * apex.real + apex.imag * apex.imag
                rm = math.sqrt(r2)
                cl = lo.real * apex.imag - lo.imag * apex.real
                ch = apex.real * hi.imag - apex.imag * hi.real
                thr = eps * rm
                newchain = chain + ((t, e),) if record_chains else None

                interior = cl > thr and ch > thr
                if interior and r2 <= L2:
                    _emit(found, apex, v0, vert[t][e2i], newchain, capex)

                # Far edge e+1 runs from corner e+1 (pb) to the apex; edge e+2
                # from the apex to corner e (pa).  Split the wedge at the apex
                # direction with open boundaries.
                if interior:
                    ap = complex(apex.real / rm, apex.imag / rm)
                    sub1 = (lo, ap)
                    sub2 = (ap, hi)
                elif cl <= thr:
                    sub1 = None      # apex at or before lo: nothing through e+1
                    sub2 = (lo, hi)
                else:
                    sub1 = (lo, hi)  # apex at or beyond hi
                    sub2 = None

                if sub1 is not None and _seg_dist2(pb, apex) <= L2:
                    nx1 = nbr[t][e1i]
                    if nx1 is not None:
                        l1, h1 = sub1
                        if l1.real * h1.imag - l1.imag * h1.real > eps:
                            tn, en = nx1
                            queue.append((tn, en, apex, capex, pb, cpb,
                                          l1, h1, newchain))
                if sub2 is not None and _seg_dist2(apex, pa) <= L2:
                    nx2 = nbr[t][e2i]
                    if nx2 is not None:
                        l2, h2 = sub2
                        if l2.real * h2.imag - l2.imag * h2.real > eps:
                            tn, en = nx2
                            queue.append((tn, en, pa, cpa, apex, capex,
                                          l2, h2, newchain))

    return _canonicalize(found.values(), keep_orientations)


def _emit(found, hol, v0, v1, chain, coeff):
    m = abs(hol)
    if m == 0.0:
        return
    q = 10.0 ** (9 - math.floor(math.log10(m)))
    key = (v0, v1, round(hol.real * q), round(hol.imag * q))
    if key not in found:
        found[key] = SaddleConnection(hol, v0, v1, chain, coeff)


def _canonicalize(connections, keep_orientations: bool):
    out = []
    for sc in connections:
        h = sc.holonomy
        if not keep_orientations:
            if h.imag < -PAIR_EPS * abs(h):
                continue
            if abs(h.imag) <= PAIR_EPS * abs(h) and h.real < 0:
                continue
        out.append(sc)
    out.sort(key=lambda s: (abs(s.holonomy),
                            math.atan2(s.holonomy.imag, s.holonomy.real),
                            s.start_zero, s.end_zero))
    return out


def primitive_lattice_vectors(length_bound: float):
    """Primitive integer vectors (p, q) with 0 < p^2+q^2 <= L^2, both signs.

    Independent oracle for the square torus: its saddle connections are
    exactly the primitive lattice vectors.
    """
    out = []
    n = int(math.floor(length_bound))
    L2 = length_bound * length_bound
    for p in range(-n, n + 1):
        for q in range(-n, n + 1):
            if p == 0 and q == 0:
                continue
            if p * p + q * q > L2:
                continue
            if math.gcd(abs(p), abs(q)) == 1:
                out.append((p, q))
    return out
