import math

import numpy as np
import pytest

from flatscale.charts import get_chart
from flatscale.surface import StratumSignature, SurfaceError
from flatscale.unfolding import enumerate_saddle_connections


class TestTorusChart:
    chart = get_chart("torus")

    def test_unit_square(self):
        X = self.chart.build([1, 1j])
        assert X.validate(StratumSignature((0,))).ok
        assert abs(X.area() - 1) < 1e-15

    def test_area_two(self):
        z = [1, 0.5 + 2j]
        assert self.chart.admissible(z)
        assert abs(self.chart.area(z) - 2.0) < 1e-12
        assert abs(self.chart.build(z).area() - 2.0) < 1e-12

    def test_degenerate_inadmissible(self):
        assert not self.chart.admissible([1, 1])
        with pytest.raises(SurfaceError):
            self.chart.build([1, 1])

    def test_periods_equal_parameters(self):
        z = [1.3 - 0.2j, 0.1 + 0.9j]
        X = self.chart.build(z)
        for sc in enumerate_saddle_connections(X, 2.0):
            p, q = sc.class_vector
            assert abs(sc.holonomy - (p * z[0] + q * z[1])) < 1e-12

    def test_box_volume(self):
        assert self.chart.box_volume == pytest.approx(256.0)


class TestOctagonChart:
    chart = get_chart("h2-octagon")

    def test_reference_octagon(self):
        z = [1, 1 + 1j, 1j, -1 + 1j]
        assert self.chart.admissible(z)
        X = self.chart.build(z)
        assert X.validate(StratumSignature((2,))).ok

    def test_regular_octagon_area(self):
        pts = [complex(math.cos(2 * math.pi * k / 8), math.sin(2 * math.pi * k / 8))
               for k in range(8)]
        z = [pts[k + 1] - pts[k] for k in range(4)]
        assert self.chart.admissible(z)
        assert abs(self.chart.area(z) - 2 * math.sqrt(2)) < 1e-12

    def test_antiparallel_sides_inadmissible(self):
        assert not self.chart.admissible([1, -1, 1, -1])

    def test_periods_equal_parameters(self):
        z = [1, 1 + 1j, 1j, -1 + 1j]
        X = self.chart.build(z)
        for sc in enumerate_saddle_connections(X, 2.5):
            hol = sum(c * w for c, w in zip(sc.class_vector, z))
            assert abs(sc.holonomy - hol) < 1e-12

    def test_dim(self):
        sig = StratumSignature((2,))
        assert self.chart.dim == sig.dimension == 4
