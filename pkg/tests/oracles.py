"""Independent brute-force implementations used to verify the library.

Everything here recomputes results from first principles (pairwise
distance matrices, exhaustive neighbor scans, unmemoized searches) and
never calls into the library's graph/successor machinery, so agreement is
meaningful. Sizes are expected to stay at or below ~1024 nodes.
"""

from __future__ import annotations

import numpy as np
import scipy.stats


def distance(space, a, b) -> int:
    d = 0
    for hp, ia, ib in zip(space.hps, a, b):
        if hp.kind == "categorical":
            d += 1 if ia != ib else 0
        else:
            d += abs(ia - ib)
    return d


def distance_matrix(space, configs) -> np.ndarray:
    """All-pairs grid distances, one numpy reduction per hyperparameter."""
    idx = np.array(configs, dtype=np.int64)
    n = len(configs)
    dm = np.zeros((n, n), dtype=np.int64)
    for j, hp in enumerate(space.hps):
        col = idx[:, j]
        diff = np.abs(col[:, None] - col[None, :])
        if hp.kind == "categorical":
            diff = (diff != 0).astype(np.int64)
        dm += diff
    return dm


def neighbor_lists(space, configs) -> list[list[int]]:
    dm = distance_matrix(space, configs)
    return [sorted(np.flatnonzero(dm[i] == 1).tolist()) for i in range(len(configs))]


def d2_lists(space, configs) -> list[list[int]]:
    dm = distance_matrix(space, configs)
    return [sorted(np.flatnonzero(dm[i] == 2).tolist()) for i in range(len(configs))]


def better(direction: str, a: float, b: float) -> bool:
    return a < b if direction == "minimize" else a > b


def local_search(direction, losses, nbrs, start) -> tuple[int, int, list[int]]:
    """Unmemoized best-improvement search; canonical-order tie break."""
    path = [start]
    current = start
    while True:
        best = None
        for v in nbrs[current]:  # ascending ids: first strict winner kept
            if better(direction, losses[v], losses[current]):
                if best is None or better(direction, losses[v], losses[best]):
                    best = v
        if best is None:
            return current, len(path) - 1, path
        current = best
        path.append(current)


def optima_and_basins(direction, losses, nbrs):
    n = len(losses)
    optimum_of = np.empty(n, dtype=np.int64)
    steps = np.empty(n, dtype=np.int64)
    for u in range(n):
        o, s, _ = local_search(direction, losses, nbrs, u)
        optimum_of[u] = o
        steps[u] = s
    optima = sorted(set(optimum_of.tolist()))
    sizes = {o: int((optimum_of == o).sum()) for o in optima}
    radii = {o: float(np.mean(steps[optimum_of == o])) for o in optima}
    return optima, optimum_of, steps, sizes, radii


def lon_edges(direction, losses, nbrs, d2, optima, optimum_of):
    """Algorithm-3 style construction from each optimum's d=2 neighborhood."""
    edges: dict[tuple[int, int], int] = {}
    n2_size = {}
    for o in optima:
        n2_size[o] = len(d2[o])
        for v in d2[o]:
            t = int(optimum_of[v])
            if better(direction, losses[t], losses[o]):
                edges[(o, t)] = edges.get((o, t), 0) + 1
    return edges, n2_size


def escape_counts(direction, losses, d2, optima, optimum_of, global_best):
    """Exhaustive (member, d=2 perturbation) pairs per non-global optimum."""
    out = {}
    for o in optima:
        if not better(direction, global_best, losses[o]):
            continue  # optimum ties the global best: excluded
        members = np.flatnonzero(optimum_of == o)
        esc = imp = total = 0
        for m in members:
            for v in d2[int(m)]:
                total += 1
                t = int(optimum_of[v])
                if t != o:
                    esc += 1
                    if better(direction, losses[t], losses[o]):
                        imp += 1
        out[int(o)] = (esc, imp, total)
    return out


def ranks(losses, direction) -> np.ndarray:
    x = np.asarray(losses, dtype=np.float64)
    return scipy.stats.rankdata(x if direction == "minimize" else -x, method="average")


def pearson(x, y) -> float:
    return float(scipy.stats.pearsonr(np.asarray(x), np.asarray(y)).statistic)


def series_lag_autocorr(series, lag) -> float | None:
    """Textbook sample autocorrelation, written as explicit loops."""
    xs = list(series)
    n = len(xs)
    if n <= lag:
        return None
    mean = sum(xs) / n
    denom = sum((v - mean) ** 2 for v in xs)
    if denom == 0:
        return None
    num = sum((xs[i] - mean) * (xs[i + lag] - mean) for i in range(n - lag))
    return num / denom


def mixing_matrix_assortativity(losses, linked_pairs) -> float | None:
    """Appendix-style discrete mixing-matrix form for numeric attributes.

    ``linked_pairs`` are unordered adjacencies; both orientations enter the
    matrix so the marginals coincide with the symmetrized endpoint lists.
    """
    values = sorted(set(losses))
    index = {v: i for i, v in enumerate(values)}
    m = len(values)
    e = np.zeros((m, m), dtype=np.float64)
    for u, v in linked_pairs:
        e[index[losses[u]], index[losses[v]]] += 1
        e[index[losses[v]], index[losses[u]]] += 1
    e /= e.sum()
    a = e.sum(axis=1)
    b = e.sum(axis=0)
    vals = np.array(values)
    mu_a = (vals * a).sum()
    mu_b = (vals * b).sum()
    sd_a = np.sqrt((vals**2 * a).sum() - mu_a**2)
    sd_b = np.sqrt((vals**2 * b).sum() - mu_b**2)
    if sd_a == 0 or sd_b == 0:
        return None
    cov = (np.outer(vals - mu_a, vals - mu_b) * e).sum()
    return float(cov / (sd_a * sd_b))


def ndc_walk_pairs(space, direction, losses, nbrs, configs):
    """Pooled (improvement, distance-to-global) pairs over qualifying walks."""
    n = len(losses)
    key = np.asarray(losses) if direction == "minimize" else -np.asarray(losses)
    gopt = np.flatnonzero(key == key.min())
    pairs = []
    for start in range(n):
        o, _, path = local_search(direction, losses, nbrs, start)
        if key[o] != key.min():
            continue
        for prev, cur in zip(path, path[1:]):
            x = abs(losses[prev] - losses[cur])
            y = min(distance(space, configs[cur], configs[g]) for g in gopt)
            pairs.append((x, y))
    return pairs
