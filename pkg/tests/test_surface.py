import math

import numpy as np
import pytest

from flatscale.surface import (
    StratumSignature,
    SurfaceError,
    TranslationSurface,
    ear_clip,
    polygon_is_simple,
    shoelace_area,
    surface_from_symmetric_polygon,
)


def square_torus():
    return surface_from_symmetric_polygon([1 + 0j, 1j], [(1, 0), (0, 1)])


def torus(u, v):
    return surface_from_symmetric_polygon([u, v], [(1, 0), (0, 1)])


OCTAGON_Z = [1 + 0j, 1 + 1j, 1j, -1 + 1j]


def octagon_surface(z=None):
    z = list(OCTAGON_Z) if z is None else list(z)
    coeffs = [tuple(1 if j == i else 0 for j in range(4)) for i in range(4)]
    return surface_from_symmetric_polygon(z, coeffs)


class TestStratumSignature:
    def test_torus_marked_point(self):
        sig = StratumSignature((0,))
        assert sig.genus == 1
        assert sig.dimension == 2

    def test_h2(self):
        sig = StratumSignature((2,))
        assert sig.genus == 2
        assert sig.dimension == 4

    def test_h31(self):
        sig = StratumSignature((3, 1))
        assert sig.genus == 3
        assert sig.dimension == 7

    def test_odd_sum_rejected(self):
        with pytest.raises(SurfaceError):
            StratumSignature((1,))


class TestValidation:
    def test_square_torus_valid(self):
        X = square_torus()
        report = X.validate(StratumSignature((0,)))
        assert report.ok, str(report)
        assert X.n_vertices == 1
        assert abs(X.area() - 1.0) < 1e-15

    def test_octagon_in_h2(self):
        X = octagon_surface()
        report = X.validate(StratumSignature((2,)))
        assert report.ok, str(report)
        # independent area oracle: shoelace on the explicit octagon
        verts = [0j]
        for w in OCTAGON_Z + [-w for w in OCTAGON_Z]:
            verts.append(verts[-1] + w)
        assert abs(X.area() - shoelace_area(verts[:-1])) < 1e-12

    def test_perturbed_edge_reports_closure(self):
        X = square_torus()
        tri = [[X.edge(t, e) for e in range(3)] for t in range(X.n_triangles)]
        tri[0][0] = 1.1 + 0j
        bad = TranslationSurface(tri, X.gluings)
        report = bad.validate()
        assert not report.ok
        assert any("close up" in e or "opposite" in e for e in report.metric_errors)

    def test_dangling_gluing_is_structural(self):
        X = square_torus()
        gl = X.gluings
        k = next(iter(gl))
        del gl[k]
        bad = TranslationSurface(
            [[X.edge(t, e) for e in range(3)] for t in range(X.n_triangles)], gl)
        report = bad.validate()
        assert report.structural_errors
        assert not report.metric_errors

    def test_wrong_stratum_detected(self):
        X = square_torus()
        report = X.validate(StratumSignature((2,)))
        assert not report.ok


class TestArea:
    def test_unit_square(self):
        assert abs(square_torus().area() - 1.0) < 1e-15

    def test_lattice_area_is_im_tau(self):
        tau = 0.3 + 1.7j
        X = torus(1 + 0j, tau)
        assert abs(X.area() - tau.imag) < 1e-12

    def test_regular_octagon_circumradius_one(self):
        pts = [complex(math.cos(2 * math.pi * k / 8 + math.pi / 8),
                       math.sin(2 * math.pi * k / 8 + math.pi / 8))
               for k in range(8)]
        z = [pts[k + 1] - pts[k] for k in range(4)]
        X = octagon_surface(z)
        assert X.validate(StratumSignature((2,))).ok
        assert abs(X.area() - 2 * math.sqrt(2)) < 1e-12

    def test_scaling_is_quadratic(self):
        X = octagon_surface()
        s = 0.37
        assert abs(X.rescaled(s).area() - s * s * X.area()) < 1e-12


class TestPolygons:
    def test_simplicity_rejects_selfintersecting(self):
        z = [1 + 0j, -1 + 0j, 1 + 0j, -1 + 0j]
        with pytest.raises(SurfaceError):
            octagon_surface(z)

    def test_ear_clip_covers_area(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            z = [complex(*rng.uniform(-2, 2, 2)) for _ in range(4)]
            verts = [0j]
            for w in z + [-w for w in z]:
                verts.append(verts[-1] + w)
            verts = verts[:-1]
            if not (polygon_is_simple(verts) and shoelace_area(verts) > 0):
                continue
            tris = ear_clip(verts)
            assert len(tris) == 6
            total = sum(
                shoelace_area([verts[a], verts[b], verts[c]])
                for a, b, c in tris)
            assert abs(total - shoelace_area(verts)) < 1e-9

    def test_degenerate_lattice_inadmissible(self):
        with pytest.raises(SurfaceError):
            torus(1 + 0j, 1 + 0j)


class TestJsonRoundTrip:
    def test_bit_exact(self):
        X = octagon_surface()
        text = X.to_json()
        Y = TranslationSurface.from_json(text)
        assert Y.to_json() == text
        for t in range(X.n_triangles):
            for e in range(3):
                assert Y.edge(t, e) == X.edge(t, e)
        assert Y.gluings == X.gluings
