"""Neighbor-preserving 2-D projection of node embeddings.

UMAP-style pipeline: a k-nearest-neighbor graph over the embedding
vectors is converted to fuzzy edge weights, the layout starts from a PCA
initialization, and batched attraction/repulsion epochs pull linked nodes
together while pushing sampled non-neighbors apart. ``min_dist`` shapes
the attraction curve (points closer than it feel no pull), ``n_neighbors``
trades local against global structure. Fully deterministic for a fixed
seed: fixed edge order, batched updates, one RNG stream.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import curve_fit
from scipy.spatial import cKDTree

from .embed import EmbeddingConfig

_EPOCHS = 200
_NEGATIVES_PER_EDGE = 5
_INITIAL_LR = 1.0


def _fit_attraction_curve(min_dist: float, spread: float = 1.0) -> tuple[float, float]:
    """Fit 1/(1 + a*d^(2b)) to the plateau-then-decay target curve."""
    xs = np.linspace(0.0, 3.0 * spread, 300)
    ys = np.where(xs < min_dist, 1.0, np.exp(-(xs - min_dist) / spread))
    (a, b), _ = curve_fit(
        lambda x, a, b: 1.0 / (1.0 + a * x ** (2.0 * b)), xs, ys, p0=(1.0, 1.0),
        maxfev=10_000,
    )
    return float(a), float(b)


def _knn_edges(embeddings: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Symmetrized kNN edge list with fuzzy weights in (0, 1]."""
    tree = cKDTree(embeddings)
    dist, idx = tree.query(embeddings, k=k + 1)
    dist, idx = dist[:, 1:], idx[:, 1:]  # drop self matches
    rho = dist[:, :1]
    sigma = np.maximum(dist.mean(axis=1, keepdims=True) - rho, 1e-12)
    w = np.exp(-np.maximum(dist - rho, 0.0) / sigma)
    n = embeddings.shape[0]
    weights: dict[tuple[int, int], float] = {}
    for i in range(n):
        for j, wij in zip(idx[i], w[i]):
            key = (i, int(j)) if i < j else (int(j), i)
            prev = weights.get(key, 0.0)
            weights[key] = prev + wij - prev * wij  # fuzzy union
    pairs = np.array(sorted(weights), dtype=np.int64).reshape(-1, 2)
    vals = np.array([weights[tuple(p)] for p in pairs], dtype=np.float64)
    return pairs, vals


def _pca_init(embeddings: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    centered = embeddings - embeddings.mean(axis=0)
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    comps = vt[:2]
    # deterministic sign: largest-magnitude loading positive
    for r in range(2):
        if comps[r, np.argmax(np.abs(comps[r]))] < 0:
            comps[r] = -comps[r]
    coords = centered @ comps.T
    scale = np.abs(coords).max()
    if scale > 0:
        coords = coords / scale * 10.0
    return coords + rng.normal(scale=1e-3, size=coords.shape)


def project_2d(embeddings: np.ndarray, cfg: EmbeddingConfig) -> np.ndarray:
    """One 2-D point per node; deterministic for a fixed config and seed."""
    embeddings = np.asarray(embeddings, dtype=np.float64)
    n = embeddings.shape[0]
    k = cfg.n_neighbors
    if k is None:
        raise ValueError("n_neighbors must be resolved before projecting")
    if k < 1:
        raise ValueError("n_neighbors must be positive")
    if n < k + 1:
        raise ValueError(f"projection needs at least n_neighbors+1={k + 1} nodes, got {n}")

    rng = np.random.default_rng(cfg.seed)
    a, b = _fit_attraction_curve(cfg.min_dist)
    pairs, weights = _knn_edges(embeddings, k)
    coords = _pca_init(embeddings, rng)

    src, dst = pairs[:, 0], pairs[:, 1]
    for epoch in range(_EPOCHS):
        lr = _INITIAL_LR * (1.0 - epoch / _EPOCHS)
        delta = coords[src] - coords[dst]
        d2 = (delta**2).sum(axis=1) + 1e-12
        # attraction along kNN edges
        coef = (-2.0 * a * b * d2 ** (b - 1.0)) / (1.0 + a * d2**b)
        grad = np.clip((coef * weights)[:, None] * delta, -4.0, 4.0)
        update = np.zeros_like(coords)
        np.add.at(update, src, lr * grad)
        np.add.at(update, dst, -lr * grad)
        # repulsion against sampled non-neighbors
        neg = rng.integers(0, n, size=(len(pairs), _NEGATIVES_PER_EDGE))
        for col in range(_NEGATIVES_PER_EDGE):
            tgt = neg[:, col]
            delta_n = coords[src] - coords[tgt]
            d2n = (delta_n**2).sum(axis=1) + 1e-12
            coef_n = (2.0 * b) / ((0.001 + d2n) * (1.0 + a * d2n**b))
            coef_n[tgt == src] = 0.0
            grad_n = np.clip(coef_n[:, None] * delta_n, -4.0, 4.0)
            np.add.at(update, src, lr * grad_n)
        coords = coords + update
    return coords
