import math

import numpy as np
import pytest

from flatscale.torus_oracle import (
    HERMITE_SHORTEST,
    bezout_complement,
    circle_polygon_area,
    cone_volume_quadrature,
    torus_exact_oracle,
)


class TestCirclePolygonArea:
    def test_disc_inside_polygon(self):
        poly = [(-2, -2), (2, -2), (2, 2), (-2, 2)]
        assert circle_polygon_area(0.1, -0.2, 1.0, poly) == pytest.approx(math.pi)

    def test_polygon_inside_disc(self):
        poly = [(0, 0), (1, 0), (1, 1), (0, 1)]
        assert circle_polygon_area(0.5, 0.5, 10.0, poly) == pytest.approx(1.0)

    def test_half_overlap(self):
        poly = [(0, -5), (5, -5), (5, 5), (0, 5)]
        assert circle_polygon_area(0.0, 0.0, 1.0, poly) == pytest.approx(math.pi / 2)

    def test_against_rasterization(self):
        rng = np.random.default_rng(9)
        for _ in range(40):
            cx, cy = rng.uniform(-1, 1, 2)
            R = rng.uniform(0.2, 1.5)
            x0, x1 = sorted(rng.uniform(-2, 2, 2))
            y0, y1 = sorted(rng.uniform(-2, 2, 2))
            poly = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
            got = circle_polygon_area(cx, cy, R, poly)
            n = 500
            xs = np.linspace(x0, x1, n)
            ys = np.linspace(y0, y1, n)
            X, Y = np.meshgrid(xs, ys)
            ref = (((X - cx) ** 2 + (Y - cy) ** 2) <= R * R).mean() \
                * (x1 - x0) * (y1 - y0)
            assert abs(got - ref) < 0.012 * max(ref, 0.05)


class TestBezout:
    def test_determinant(self):
        for p in range(-8, 9):
            for q in range(0, 9):
                if math.gcd(abs(p), q) != 1 or (q == 0 and p != 1):
                    continue
                r, s = bezout_complement(p, q)
                assert p * s - q * r == 1


class TestOracle:
    def test_monotone_in_eps(self):
        vals = [torus_exact_oracle([e], grid_resolution=32, pq_max=12)
                for e in (0.05, 0.1, 0.2, 0.4)]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_saturated_equals_cone_volume(self):
        assert torus_exact_oracle([2.0]) == pytest.approx(
            cone_volume_quadrature(), rel=1e-6)

    def test_unsupported_window(self):
        with pytest.raises(ValueError):
            torus_exact_oracle([1.01])
        assert HERMITE_SHORTEST == pytest.approx((4 / 3) ** 0.25)

    def test_k2_empty_below_covolume_bound(self):
        # covolume of the unit-area lattice forces |w1||w2| >= 1
        assert torus_exact_oracle([0.2, 0.2]) == 0.0
        assert torus_exact_oracle([0.9, 0.9]) == 0.0
        with pytest.raises(ValueError):
            torus_exact_oracle([2.0, 2.0])

    def test_grid_convergence(self):
        a = torus_exact_oracle([0.2], grid_resolution=32)
        b = torus_exact_oracle([0.2], grid_resolution=64)
        assert abs(a - b) < 0.01 * b

    def test_matches_direct_simulation(self):
        # independent brute-force check of the disjoint-sum construction
        rng = np.random.default_rng(77)
        N = 1_500_000
        u = rng.uniform(-2, 2, N) + 1j * rng.uniform(-2, 2, N)
        v = rng.uniform(-2, 2, N) + 1j * rng.uniform(-2, 2, N)
        A = (np.conj(u) * v).imag
        mask = (A > 0) & (A <= 1)
        uu, vv, aa = u[mask], v[mask], A[mask]
        short = np.zeros(uu.size, dtype=bool)
        for p in range(-12, 13):
            for q in range(0, 13):
                if math.gcd(abs(p), q) != 1 or (q == 0 and p != 1):
                    continue
                w2 = np.abs(p * uu + q * vv) ** 2
                short |= w2 <= 0.04 * aa
        mc = short.sum() / N * 256.0
        se = 256.0 * math.sqrt(short.sum()) / N
        ex = torus_exact_oracle([0.2])
        assert abs(ex - mc) < 4 * se
