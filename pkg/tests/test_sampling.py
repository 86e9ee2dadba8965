import math

import numpy as np
import pytest

from flatscale.homology import LinearSubspace
from flatscale.sampling import ConingEstimate, estimate_coned_measure, scan_chart
from flatscale.torus_oracle import cone_volume_quadrature, torus_exact_oracle

N_FAST = 60_000
SEED = 1234


class TestEstimatorBasics:
    def test_matches_oracle_moderate_eps(self):
        est = estimate_coned_measure("torus", None, (0.3,), 150_000, SEED)
        oracle = torus_exact_oracle([0.3])
        assert abs(est.value - oracle) < 3 * est.standard_error
        assert est.accepted > 50

    def test_stderr_formula(self):
        est = estimate_coned_measure("torus", None, (0.3,), N_FAST, SEED)
        p = est.accepted / est.samples
        want = est.box_volume * math.sqrt(p * (1 - p) / est.samples)
        assert est.standard_error == pytest.approx(want)

    def test_tiny_eps_rejects_everything(self):
        # below the shortest connection over the sampled cone: measure ~ 0
        est = estimate_coned_measure("torus", None, (0.004,), N_FAST, SEED)
        assert est.accepted == 0

    def test_cone_volume_sanity(self):
        est = estimate_coned_measure("torus", None, None, 200_000, SEED)
        want = cone_volume_quadrature()
        assert abs(est.value - want) < 3 * est.standard_error

    def test_k2_torus_is_empty(self):
        est = estimate_coned_measure("torus", None, (0.2, 0.2), N_FAST, SEED)
        assert est.accepted == 0

    def test_monotone_in_eps_shared_samples(self):
        res = scan_chart("torus", None, [(0.15,), (0.3,), (0.45,)],
                         N_FAST, SEED)
        vals = [e.accepted for e in res.estimates]
        assert vals[0] <= vals[1] <= vals[2]

    def test_requires_enough_samples(self):
        with pytest.raises(ValueError):
            estimate_coned_measure("torus", None, (0.1,), 10, SEED)


class TestDeterminism:
    def test_same_seed_same_result(self):
        a = scan_chart("torus", None, [(0.3,)], N_FAST, SEED)
        b = scan_chart("torus", None, [(0.3,)], N_FAST, SEED)
        assert a.estimates[0].value == b.estimates[0].value

    def test_worker_count_invariance(self):
        a = scan_chart("torus", None, [(0.3,), None], N_FAST, SEED, threads=1)
        b = scan_chart("torus", None, [(0.3,), None], N_FAST, SEED, threads=4)
        for x, y in zip(a.estimates, b.estimates):
            assert x.value == y.value
            assert x.accepted == y.accepted

    def test_different_seeds_differ(self):
        a = estimate_coned_measure("torus", None, (0.3,), N_FAST, 1)
        b = estimate_coned_measure("torus", None, (0.3,), N_FAST, 2)
        assert a.accepted != b.accepted


class TestSubspaceSampling:
    def test_full_rank_subspace_on_octagon(self):
        rng = np.random.default_rng(4)
        basis = rng.normal(size=(4, 2))
        W = LinearSubspace(4, basis.astype(complex), "real")
        est = estimate_coned_measure("h2-octagon", W, (0.5,), 30_000, SEED)
        assert est.value >= 0
        assert est.box_volume == pytest.approx(256.0)


class TestOctagonSmoke:
    def test_octagon_scan_runs(self):
        res = scan_chart("h2-octagon", None, [(0.4,), (0.4, 0.4)], 40_000, SEED)
        one, two = res.estimates
        assert one.accepted >= two.accepted
