"""Monte Carlo estimation of coned short-saddle-connection loci.

Samples are drawn uniformly from the chart's parameter box (or from a
linear subspace's intrinsic box) with counter-based Philox streams: chunk
c always uses the generator keyed by (seed, c), so results are bit
identical for any worker count.  A sample is accepted for the cell with
radii (eps_1 <= ... <= eps_k) when it is admissible, has area <= 1, and
the unit-area rescale carries saddle connections s_1, ..., s_k with
|s_i| <= eps_i whose classes restrict to rank k on W; by Rado's criterion
for the nested length-filtration this holds iff the classes of connections
shorter than eps_i have rank >= i for every i.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .charts import ChartModel, get_chart
from .homology import LinearSubspace, independence_rank
from .surface import SurfaceError, polygon_simple_mask
from .unfolding import enumerate_saddle_connections

DEFAULT_CHUNK = 16384
DEFAULT_BUDGET = 1_000_000


@dataclass(frozen=True)
class ConingEstimate:
    """Monte Carlo estimate of the cone-set measure for one radius vector."""

    value: float
    standard_error: float
    samples: int
    seed: int
    eps: tuple[float, ...] | None
    accepted: int
    admissible: int
    box_volume: float

    @property
    def relative_error(self) -> float:
        return self.standard_error / self.value if self.value > 0 else math.inf


@dataclass(frozen=True)
class ScanResult:
    chart: str
    estimates: tuple[ConingEstimate, ...]
    admissible_fraction: float


def _chunk_generator(seed: int, chunk_index: int) -> np.random.Generator:
    bits = np.random.Philox(key=seed, counter=[0, 0, 0, chunk_index])
    return np.random.Generator(bits)


def _sample_params(rng, size: int, dim: int, half_width: float) -> np.ndarray:
    flat = rng.uniform(-half_width, half_width, size=(size, 2 * dim))
    return flat[:, 0::2] + 1j * flat[:, 1::2]


def _prefix_ranks(classes: np.ndarray, subspace: LinearSubspace) -> list[int]:
    ranks = []
    for j in range(1, classes.shape[0] + 1):
        ranks.append(independence_rank(classes[:j], subspace))
    return ranks


def _cell_accepts(lengths, ranks, eps_sorted) -> bool:
    # rank of {connections with length <= eps_i} must be at least i+1
    for i, e in enumerate(eps_sorted):
        j = int(np.searchsorted(lengths, e, side="right"))
        if j == 0 or ranks[j - 1] < i + 1:
            return False
    return True


def _process_chunk(args) -> tuple[np.ndarray, int, int, int]:
    (chart_name, half_width, basis, seed, chunk_index, size,
     cells, l_max, budget) = args
    chart = get_chart(chart_name, half_width)
    rng = _chunk_generator(seed, chunk_index)
    dim = chart.dim if basis is None else basis.shape[1]
    w = _sample_params(rng, size, dim, half_width)
    x = w if basis is None else w @ basis.T
    subspace = LinearSubspace(chart.dim, basis)

    # vertices of the symmetric polygon, vectorized over the chunk
    sides = np.concatenate([x, -x], axis=1)
    verts = np.cumsum(sides, axis=1)
    verts = np.concatenate([np.zeros((size, 1), dtype=complex),
                            verts[:, :-1]], axis=1)
    nxt = np.roll(verts, -1, axis=1)
    area2 = (verts.real * nxt.imag - verts.imag * nxt.real).sum(axis=1)
    area = 0.5 * area2
    admissible = (area > 0) & polygon_simple_mask(verts)
    cone = admissible & (area <= 1.0)

    counts = np.zeros(len(cells), dtype=np.int64)
    plain_cells = [i for i, c in enumerate(cells) if c is None]
    eps_cells = [(i, np.asarray(c)) for i, c in enumerate(cells) if c is not None]
    if plain_cells:
        counts[plain_cells] = int(cone.sum())

    if eps_cells and l_max > 0:
        for idx in np.nonzero(cone)[0]:
            scale = 1.0 / math.sqrt(area[idx])
            try:
                surf = chart.build([z * scale for z in x[idx]])
            except SurfaceError:
                continue  # borderline simplicity at the rescale
            scs = enumerate_saddle_connections(surf, l_max, budget=budget)
            if not scs:
                continue
            lengths = np.asarray([abs(s.holonomy) for s in scs])
            classes = np.asarray([s.class_vector for s in scs], dtype=complex)
            ranks = _prefix_ranks(classes, subspace)
            for i, eps_sorted in eps_cells:
                if _cell_accepts(lengths, ranks, eps_sorted):
                    counts[i] += 1
    return counts, int(admissible.sum()), int(cone.sum()), size


def scan_chart(
    chart: ChartModel | str,
    subspace: LinearSubspace | None,
    eps_cells,
    samples: int,
    seed: int,
    threads: int = 1,
    chunk_size: int = DEFAULT_CHUNK,
    budget: int = DEFAULT_BUDGET,
) -> ScanResult:
    """Estimate the cone-set measure for every radius vector in ``eps_cells``.

    Cells share one sample stream and one enumeration per sample (at the
    largest radius), so a grid scan costs one pass.  A cell of None
    estimates the plain cone volume (admissible, area <= 1).
    """
    if isinstance(chart, str):
        chart = get_chart(chart)
    name = chart.name
    half_width = chart.param_box[0][1]
    basis = None
    if subspace is not None and subspace.basis is not None:
        if subspace.ambient_dim != chart.dim:
            raise ValueError("subspace ambient dimension does not match chart")
        basis = np.asarray(subspace.basis)
    if samples < 1000:
        raise ValueError("need at least 10^3 samples")
    norm_cells = []
    for c in eps_cells:
        if c is None:
            norm_cells.append(None)
        else:
            e = tuple(sorted(float(v) for v in (c if hasattr(c, "__len__") else [c])))
            if any(v <= 0 for v in e):
                raise ValueError("radii must be positive")
            norm_cells.append(e)
    l_max = max((e[-1] for e in norm_cells if e is not None), default=0.0)

    n_chunks = (samples + chunk_size - 1) // chunk_size
    tasks = []
    for c in range(n_chunks):
        size = min(chunk_size, samples - c * chunk_size)
        tasks.append((name, half_width, basis, seed, c, size,
                      norm_cells, l_max, budget))

    counts = np.zeros(len(norm_cells), dtype=np.int64)
    n_adm = 0
    n_cone = 0
    if threads <= 1:
        results = map(_process_chunk, tasks)
    else:
        pool = ProcessPoolExecutor(max_workers=threads)
        results = pool.map(_process_chunk, tasks)
    for cts, adm, cone, _ in results:
        counts += cts
        n_adm += adm
        n_cone += cone
    if threads > 1:
        pool.shutdown()

    # intrinsic box volume: one box per sampled coordinate
    dim = chart.dim if basis is None else basis.shape[1]
    vol = 1.0
    for i in range(dim):
        rl, rh, il, ih = chart.param_box[min(i, chart.dim - 1)]
        vol *= (rh - rl) * (ih - il)

    adm_fraction = n_adm / samples
    if adm_fraction < 0.01:
        warnings.warn(
            f"admissibility rejection above 99% on chart {name}; "
            "the parameter box is poorly chosen", RuntimeWarning)

    out = []
    for cell, k in zip(norm_cells, counts):
        p = k / samples
        stderr = vol * math.sqrt(p * (1.0 - p) / samples)
        out.append(ConingEstimate(
            value=p * vol, standard_error=stderr, samples=samples, seed=seed,
            eps=cell, accepted=int(k), admissible=n_adm, box_volume=vol))
    return ScanResult(name, tuple(out), adm_fraction)


def estimate_coned_measure(
    chart: ChartModel | str,
    subspace: LinearSubspace | None,
    eps,
    samples: int,
    seed: int,
    threads: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> ConingEstimate:
    """Single-cell version of :func:`scan_chart`.

    ``eps`` may be None to estimate the plain cone volume.
    """
    res = scan_chart(chart, subspace, [eps], samples, seed,
                     threads=threads, budget=budget)
    return res.estimates[0]
