"""Landscape-topography metrics.

Six quantities per landscape: random-walk autocorrelation (smoothness),
loss assortativity (local clustering of performance), mean neutrality and
per-node neutral ratios, neutrality-distance correlation (flattening near
the global optimum), number of local optima, and mean basin size. Metrics
that are undefined on degenerate landscapes (constant losses, isolated
nodes) report ``None`` instead of failing, and the bundled report always
echoes the parameters it was computed with.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._parallel import deterministic_map
from .landscape import Landscape, global_optima
from .localopt import _successors, find_local_optima, mean_basin_size
from .space import CATEGORICAL

DEFAULT_EPSILON = 1e-3
#: Absolute scale floor guarding the relative neutrality tolerance when a
#: loss sits at exactly zero.
NEUTRALITY_FLOOR = 1e-12


@dataclass(frozen=True)
class WalkConfig:
    """Random-walk sampling parameters (defaults: 100 walks of length 100, lag 1)."""

    n_walks: int = 100
    walk_length: int = 100
    lag: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.n_walks <= 0 or self.walk_length <= 0 or self.lag <= 0:
            raise ValueError("walk counts, lengths and lag must be positive")
        if self.walk_length <= self.lag:
            raise ValueError("walk_length must exceed the lag")


@dataclass
class FlaReport:
    """Bundle of the six topography metrics plus the parameters used."""

    autocorrelation: float | None
    assortativity: float | None
    mean_neutrality: float | None
    ndc: float | None
    ndc_direct: float | None
    n_local_optima: int
    mean_basin_size: float
    unimodal: bool
    parameters: dict

    def to_json_dict(self) -> dict:
        return {
            "autocorrelation": self.autocorrelation,
            "assortativity": self.assortativity,
            "mean_neutrality": self.mean_neutrality,
            "ndc": self.ndc,
            "ndc_direct": self.ndc_direct,
            "n_local_optima": self.n_local_optima,
            "mean_basin_size": self.mean_basin_size,
            "unimodal": self.unimodal,
            "parameters": self.parameters,
        }

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.to_json_dict(), indent=2) + "\n", encoding="utf-8"
        )


def _pearson(x: np.ndarray, y: np.ndarray) -> float | None:
    """Pearson correlation; None when either series has zero variance."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    xc = x - x.mean()
    yc = y - y.mean()
    denom = np.sqrt(np.dot(xc, xc) * np.dot(yc, yc))
    if denom == 0.0 or not np.isfinite(denom):
        return None
    return float(np.clip(np.dot(xc, yc) / denom, -1.0, 1.0))


def _series_autocorrelation(series: np.ndarray, lag: int) -> float | None:
    """Lag-k sample autocorrelation of one walk's loss series."""
    x = np.asarray(series, dtype=np.float64)
    if len(x) <= lag:
        return None
    if x.min() == x.max():  # constant series; mean() roundoff must not leak in
        return None
    xc = x - x.mean()
    denom = np.dot(xc, xc)
    if denom == 0.0:
        return None
    return float(np.dot(xc[:-lag], xc[lag:]) / denom)


def autocorrelation(l: Landscape, w: WalkConfig, threads: int = 1) -> float | None:
    """Mean lag-k autocorrelation of losses along seeded random walks.

    Each walk starts at a uniformly drawn node and repeatedly steps to a
    uniformly drawn present neighbor. Walks with zero loss variance (or
    stuck on isolated nodes) are skipped; the result is None when every
    walk degenerates.
    """
    adj = l.adjacency()
    losses = l.losses
    streams = np.random.SeedSequence(w.seed).spawn(w.n_walks)

    def one_walk(stream) -> float | None:
        rng = np.random.default_rng(stream)
        node = int(rng.integers(l.n_nodes))
        series = [losses[node]]
        for _ in range(w.walk_length - 1):
            nbrs = adj[node]
            if len(nbrs) == 0:
                break
            node = int(nbrs[rng.integers(len(nbrs))])
            series.append(losses[node])
        return _series_autocorrelation(np.array(series), w.lag)

    estimates = [r for r in deterministic_map(one_walk, streams, threads) if r is not None]
    if not estimates:
        return None
    return float(np.clip(np.mean(estimates), -1.0, 1.0))


def _linked_pairs(l: Landscape) -> np.ndarray:
    """All distance-1 adjacencies (strict edges plus neutral pairs)."""
    return np.vstack([l.edges, l.neutral]) if l.n_linked_pairs else np.empty((0, 2), np.int64)


def loss_assortativity(l: Landscape) -> float | None:
    """Pearson correlation of losses over linked endpoint pairs.

    Every adjacency contributes both orientations, which recovers the
    discrete mixing-matrix assortativity exactly when losses are discrete.
    None when the endpoint marginal variance is zero (constant losses).
    """
    pairs = _linked_pairs(l)
    if len(pairs) == 0:
        return None
    lu = l.losses[pairs[:, 0]]
    lv = l.losses[pairs[:, 1]]
    return _pearson(np.concatenate([lu, lv]), np.concatenate([lv, lu]))


def _neutral_flags(l: Landscape, epsilon: float) -> np.ndarray:
    pairs = _linked_pairs(l)
    lu = l.losses[pairs[:, 0]]
    lv = l.losses[pairs[:, 1]]
    scale = np.maximum(np.maximum(np.abs(lu), np.abs(lv)), NEUTRALITY_FLOOR)
    return np.abs(lu - lv) <= epsilon * scale


def _neutral_ratios(l: Landscape, epsilon: float) -> np.ndarray:
    """Per-node neutral-neighbor fraction; NaN for isolated nodes."""
    pairs = _linked_pairs(l)
    flags = _neutral_flags(l, epsilon)
    deg = np.zeros(l.n_nodes, dtype=np.float64)
    neu = np.zeros(l.n_nodes, dtype=np.float64)
    for col in (0, 1):
        np.add.at(deg, pairs[:, col], 1.0)
        np.add.at(neu, pairs[:, col], flags.astype(np.float64))
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(deg > 0, neu / np.maximum(deg, 1.0), np.nan)


def neutrality_of(l: Landscape, node, epsilon: float = DEFAULT_EPSILON) -> float | None:
    """Fraction of present neighbors whose loss ties within the relative
    tolerance ``epsilon`` (absolute floor guards losses at exactly 0).
    None for isolated nodes."""
    node = node if isinstance(node, (int, np.integer)) else l.id_of(node)
    ratio = _neutral_ratios(l, epsilon)[node]
    return None if np.isnan(ratio) else float(ratio)


def mean_neutrality(l: Landscape, epsilon: float = DEFAULT_EPSILON) -> float | None:
    """Mean neutral ratio over all nodes that have at least one neighbor."""
    ratios = _neutral_ratios(l, epsilon)
    defined = ratios[~np.isnan(ratios)]
    if len(defined) == 0:
        return None
    return float(np.clip(np.mean(defined), 0.0, 1.0))


def _distance_to_set(l: Landscape, targets: np.ndarray) -> np.ndarray:
    """Per-node grid distance to the nearest target node."""
    n_hps = l.space.n_hps
    idx = np.array(l.configs, dtype=np.int64).reshape(l.n_nodes, n_hps)
    categorical = np.array([hp.kind == CATEGORICAL for hp in l.space.hps])
    best = np.full(l.n_nodes, np.iinfo(np.int64).max, dtype=np.int64)
    for t in targets:
        diff = np.abs(idx - idx[t])
        if categorical.any():
            diff[:, categorical] = (diff[:, categorical] != 0).astype(np.int64)
        np.minimum(best, diff.sum(axis=1), out=best)
    return best


@dataclass
class NdcResult:
    """Walk-based NDC (primary: positive = flatter near the optimum) and the
    direct neutrality-vs-distance variant (its own sign: negative = flatter
    near the optimum)."""

    walk: float | None
    direct: float | None


def ndc(l: Landscape, epsilon: float = DEFAULT_EPSILON) -> NdcResult:
    """Neutrality-distance correlation in both published readings.

    Walk-based: every best-improvement walk that ends in the global-optimum
    set contributes, per step, the pair (loss improvement, distance of the
    post-step configuration to the nearest global optimum); the value is
    the Pearson correlation over all collected pairs. Positive values mean
    improvements shrink while closing in on the optimum (flattening
    terrain). Undefined (None) when fewer than 3 distinct distances are
    represented or a series is constant.

    Direct: Pearson correlation between per-node neutral ratios and
    distances to the nearest global optimum.
    """
    succ = _successors(l)
    _, basins = find_local_optima(l)
    gopt = global_optima(l)
    gset = set(int(g) for g in gopt)
    dstar = _distance_to_set(l, gopt)
    losses = l.losses

    # Accumulate (improvement, distance) sums along every qualifying walk.
    # S[u] aggregates the pairs of the whole path from u; successors have
    # strictly better losses, so processing nodes best-to-worst resolves
    # each successor before its predecessors.
    key = l.direction_key()
    order = np.lexsort((np.arange(l.n_nodes), key))
    stats = np.zeros((l.n_nodes, 6), dtype=np.float64)  # n, sx, sy, sxy, sxx, syy
    for u in order:
        s = succ[u]
        if s < 0:
            continue
        x = abs(losses[u] - losses[s])
        y = float(dstar[s])
        stats[u] = stats[s] + (1.0, x, y, x * y, x * x, y * y)
    qualifying = np.array(
        [int(basins.optimum_of[u]) in gset for u in range(l.n_nodes)], dtype=bool
    )
    agg = stats[qualifying].sum(axis=0)
    walk = _pearson_from_sums(agg)
    if walk is not None:
        distinct = {int(dstar[succ[u]]) for u in np.flatnonzero(qualifying) if succ[u] >= 0}
        if len(distinct) < 3:
            walk = None

    ratios = _neutral_ratios(l, epsilon)
    defined = ~np.isnan(ratios)
    direct = None
    if defined.sum() >= 2:
        ys = dstar[defined].astype(np.float64)
        if len(np.unique(ys)) >= 3:
            direct = _pearson(ratios[defined], ys)
    return NdcResult(walk=walk, direct=direct)


def _pearson_from_sums(agg: np.ndarray) -> float | None:
    n, sx, sy, sxy, sxx, syy = agg
    if n < 2:
        return None
    cov = n * sxy - sx * sy
    varx = n * sxx - sx * sx
    vary = n * syy - sy * sy
    if varx <= 0 or vary <= 0:
        return None
    return float(np.clip(cov / np.sqrt(varx * vary), -1.0, 1.0))


def fla_report(
    l: Landscape,
    w: WalkConfig | None = None,
    epsilon: float = DEFAULT_EPSILON,
    threads: int = 1,
) -> FlaReport:
    """Compute all six topography metrics; undefined metrics become None."""
    w = w or WalkConfig()
    optima, basins = find_local_optima(l)
    ndc_result = ndc(l, epsilon)
    return FlaReport(
        autocorrelation=autocorrelation(l, w, threads),
        assortativity=loss_assortativity(l),
        mean_neutrality=mean_neutrality(l, epsilon),
        ndc=ndc_result.walk,
        ndc_direct=ndc_result.direct,
        n_local_optima=int(len(optima)),
        mean_basin_size=mean_basin_size(basins, l),
        unimodal=len(optima) == 1,
        parameters={
            "epsilon": epsilon,
            "n_walks": w.n_walks,
            "walk_length": w.walk_length,
            "lag": w.lag,
            "seed": w.seed,
        },
    )
