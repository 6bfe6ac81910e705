"""Best-improvement local search, basins of attraction, local optima networks.

The best-improvement move from a node is a pure function of the landscape
(ties among equally good improving neighbors are broken by canonical node
order), so the whole search dynamics is captured by one successor pointer
per node. Every derived quantity here (basins, step counts, LON edges,
escape statistics) is computed from those pointers and is therefore
deterministic and invariant under strictly monotone loss transforms.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .landscape import Landscape
from .space import Config, configs_at_distance_two


@dataclass
class BasinMap:
    """Assignment of every node to the local optimum its search reaches."""

    optimum_of: np.ndarray  # per node: id of the reached local optimum
    steps: np.ndarray  # per node: local-search steps to that optimum
    optima: np.ndarray  # sorted ids of all local optima
    basin_size: dict[int, int] = field(default_factory=dict)
    basin_radius: dict[int, float] = field(default_factory=dict)

    def members(self, optimum: int) -> np.ndarray:
        return np.flatnonzero(self.optimum_of == optimum)


@dataclass
class LocalOptimaNetwork:
    """Weighted directed graph over local optima (strictly improving edges)."""

    vertices: np.ndarray  # sorted optimum ids
    losses: dict[int, float]
    basin_size: dict[int, int]
    basin_radius: dict[int, float]
    edges: dict[tuple[int, int], int]  # (src, dst) -> escape-transition count
    n2_size: dict[int, int]  # per optimum: |present configs at distance 2|

    def edge_probabilities(self) -> dict[tuple[int, int], float]:
        """Edge weights normalized by the source optimum's d=2 neighborhood size."""
        return {
            (u, v): w / self.n2_size[u] for (u, v), w in self.edges.items() if self.n2_size[u]
        }

    def to_json_dict(self) -> dict:
        return {
            "vertices": [
                {
                    "id": int(v),
                    "loss": float(self.losses[v]),
                    "basin_size": int(self.basin_size[v]),
                    "basin_radius": float(self.basin_radius[v]),
                }
                for v in self.vertices
            ],
            "edges": [
                {"src": int(u), "dst": int(v), "weight": int(w)}
                for (u, v), w in sorted(self.edges.items())
            ],
        }

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.to_json_dict(), indent=2) + "\n", encoding="utf-8"
        )


@dataclass
class EscapeStats:
    """Per-optimum escape and improve rates under d=2 perturbation of basin members."""

    escape_rate: dict[int, float]
    improve_rate: dict[int, float]
    n_pairs: dict[int, int]
    exact: dict[int, bool]


def _successors(l: Landscape) -> np.ndarray:
    """Best-improvement move per node; -1 marks local optima.

    For node u the candidates are exactly the heads of its strict edges;
    the winner has the best loss, canonical id as tie-break.
    """
    if l._succ is not None:
        return l._succ
    succ = np.full(l.n_nodes, -1, dtype=np.int64)
    if l.n_edges:
        key = l.direction_key()
        src = l.edges[:, 0]
        dst = l.edges[:, 1]
        # lexsort: last key is primary. Order by (src, loss(dst), dst) and
        # keep each src's first entry.
        order = np.lexsort((dst, key[dst], src))
        srcs = src[order]
        first = np.ones(len(srcs), dtype=bool)
        first[1:] = srcs[1:] != srcs[:-1]
        succ[srcs[first]] = dst[order][first]
    succ.setflags(write=False)
    l._succ = succ
    return succ


def local_search(l: Landscape, start: Config | int) -> tuple[int, int, list[int]]:
    """Best-improvement local search from ``start``.

    Returns ``(optimum_id, steps, path)`` where ``path`` lists the visited
    node ids, start first. Each step moves to the strictly best present
    neighbor, so the search always terminates.
    """
    node = start if isinstance(start, (int, np.integer)) else l.id_of(start)
    succ = _successors(l)
    path = [int(node)]
    while succ[path[-1]] >= 0:
        path.append(int(succ[path[-1]]))
    return path[-1], len(path) - 1, path


def find_local_optima(l: Landscape) -> tuple[np.ndarray, BasinMap]:
    """Run local search from every node; collect optima and their basins.

    A node is a local optimum iff it has no strictly better present
    neighbor, so members of exact-tie plateaus are all optima.
    """
    if l._basins is not None:
        return l._basins[0], l._basins[1]
    succ = _successors(l)
    n = l.n_nodes
    optimum_of = np.empty(n, dtype=np.int64)
    steps = np.empty(n, dtype=np.int64)
    # Nodes in best-to-worst order: a successor always has strictly better
    # loss, so it is resolved before any of its predecessors.
    key = l.direction_key()
    order = np.lexsort((np.arange(n), key))
    for u in order:
        s = succ[u]
        if s < 0:
            optimum_of[u] = u
            steps[u] = 0
        else:
            optimum_of[u] = optimum_of[s]
            steps[u] = steps[s] + 1
    optima = np.flatnonzero(succ < 0)
    basin_size = {}
    basin_radius = {}
    for o in optima:
        members = np.flatnonzero(optimum_of == o)
        basin_size[int(o)] = int(len(members))
        basin_radius[int(o)] = float(np.mean(steps[members]))
    basins = BasinMap(
        optimum_of=optimum_of,
        steps=steps,
        optima=optima,
        basin_size=basin_size,
        basin_radius=basin_radius,
    )
    l._basins = (optima, basins)
    return optima, basins


def _non_global_optima(l: Landscape, basins: BasinMap) -> np.ndarray:
    """Optima whose loss is strictly worse than the global best."""
    key = l.direction_key()
    best = key.min()
    return basins.optima[key[basins.optima] > best]


def mean_basin_size(basins: BasinMap, l: Landscape) -> float:
    """Mean basin size over non-global local optima; 0.0 when there are none."""
    non_global = _non_global_optima(l, basins)
    if len(non_global) == 0:
        return 0.0
    return float(np.mean([basins.basin_size[int(o)] for o in non_global]))


def _present_distance_two(l: Landscape, c: Config) -> list[int]:
    """Ids of present configurations at grid distance exactly 2 from ``c``."""
    out = [l._id_of[x] for x in configs_at_distance_two(l.space, c) if x in l._id_of]
    out.sort()
    return out


def build_lon(l: Landscape, basins: BasinMap) -> LocalOptimaNetwork:
    """Construct the local optima network by d=2 perturbation of each optimum.

    For every present configuration at distance exactly 2 from an optimum,
    local search is applied; landing on a strictly better optimum adds one
    count to that transition edge. Absent grid points are skipped and
    excluded from the perturbation-neighborhood size.
    """
    optimum_of = basins.optimum_of
    key = l.direction_key()
    edges: dict[tuple[int, int], int] = {}
    n2_size: dict[int, int] = {}
    for o in basins.optima:
        o = int(o)
        d2 = _present_distance_two(l, l.configs[o])
        n2_size[o] = len(d2)
        for v in d2:
            target = int(optimum_of[v])
            if key[target] < key[o]:
                edges[(o, target)] = edges.get((o, target), 0) + 1
    return LocalOptimaNetwork(
        vertices=basins.optima,
        losses={int(o): float(l.losses[o]) for o in basins.optima},
        basin_size=dict(basins.basin_size),
        basin_radius=dict(basins.basin_radius),
        edges=edges,
        n2_size=n2_size,
    )


def escape_improve_rates(
    l: Landscape,
    basins: BasinMap,
    seed: int = 0,
    enumeration_limit: int = 10**6,
    sample_size: int = 100_000,
) -> EscapeStats:
    """Escape and improve rates for every non-global local optimum.

    A pair is (basin member, present configuration at distance 2 from that
    member). The escape rate is the fraction of pairs whose perturbed
    search converges to a different optimum; the improve rate additionally
    requires a strictly better one. All pairs are enumerated exactly when
    their count stays below ``enumeration_limit``; beyond that, pairs are
    sampled uniformly from a per-optimum seeded substream and the sample
    size is recorded.
    """
    optimum_of = basins.optimum_of
    key = l.direction_key()
    escape_rate: dict[int, float] = {}
    improve_rate: dict[int, float] = {}
    n_pairs: dict[int, int] = {}
    exact: dict[int, bool] = {}
    targets = _non_global_optima(l, basins)
    streams = np.random.SeedSequence(seed).spawn(len(targets))
    for o, stream in zip(targets, streams):
        o = int(o)
        members = basins.members(o)
        perts = [_present_distance_two(l, l.configs[int(m)]) for m in members]
        counts = np.array([len(p) for p in perts], dtype=np.int64)
        total = int(counts.sum())
        if total == 0:
            escape_rate[o] = 0.0
            improve_rate[o] = 0.0
            n_pairs[o] = 0
            exact[o] = True
            continue
        if total <= enumeration_limit:
            esc = imp = 0
            for p in perts:
                for v in p:
                    t = int(optimum_of[v])
                    if t != o:
                        esc += 1
                        if key[t] < key[o]:
                            imp += 1
            n = total
            exact[o] = True
        else:
            rng = np.random.default_rng(stream)
            member_idx = rng.choice(len(members), size=sample_size, p=counts / total)
            esc = imp = 0
            for mi in member_idx:
                p = perts[mi]
                v = p[rng.integers(len(p))]
                t = int(optimum_of[v])
                if t != o:
                    esc += 1
                    if key[t] < key[o]:
                        imp += 1
            n = sample_size
            exact[o] = False
        escape_rate[o] = esc / n
        improve_rate[o] = imp / n
        n_pairs[o] = n
    return EscapeStats(
        escape_rate=escape_rate, improve_rate=improve_rate, n_pairs=n_pairs, exact=exact
    )


def write_basin_csv(l: Landscape, basins: BasinMap, path: str | Path) -> None:
    """Export the basin map as CSV (config_id, optimum_id, steps)."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["config_id", "optimum_id", "steps"])
        for i in range(l.n_nodes):
            writer.writerow([i, int(basins.optimum_of[i]), int(basins.steps[i])])
