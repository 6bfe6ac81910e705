"""Rank-based similarity between two landscapes over shared configurations.

All three metrics (Spearman correlation of performance ranks, Shake-up
rank displacement, top-set intersection over union) are computed on the
intersection of the two configuration sets, with fractional ranks and
rank 1 = best under each landscape's own direction. They are therefore
invariant under strictly monotone direction-preserving loss transforms.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .landscape import Landscape, fractional_ranks
from .landscape import MINIMIZE
from .space import Config

logger = logging.getLogger(__name__)

DEFAULT_GAMMA = 0.10


@dataclass
class SimilarityReport:
    spearman: float | None
    shakeup: float
    gamma_set: float
    gamma: float
    n_shared: int
    n_l1: int
    n_l2: int

    def to_json_dict(self) -> dict:
        return {
            "spearman": self.spearman,
            "shakeup": self.shakeup,
            "gamma_set": self.gamma_set,
            "gamma": self.gamma,
            "n_shared": self.n_shared,
            "n_l1": self.n_l1,
            "n_l2": self.n_l2,
        }

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.to_json_dict(), indent=2) + "\n", encoding="utf-8"
        )


def _shared_ranks(l1: Landscape, l2: Landscape):
    """Shared configs (canonical order) and both fractional rank vectors."""
    shared: list[Config] = sorted(set(l1.configs) & set(l2.configs))
    if not shared:
        raise ValueError("the two landscapes share no configurations")
    x1 = np.array([l1.losses[l1.id_of(c)] for c in shared])
    x2 = np.array([l2.losses[l2.id_of(c)] for c in shared])
    r1 = fractional_ranks(x1, minimize=l1.scenario.direction == MINIMIZE)
    r2 = fractional_ranks(x2, minimize=l2.scenario.direction == MINIMIZE)
    return shared, r1, r2


def spearman(l1: Landscape, l2: Landscape) -> float | None:
    """Pearson correlation of the two rank vectors; None when either is
    constant or fewer than 3 configurations are shared."""
    _, r1, r2 = _shared_ranks(l1, l2)
    if len(r1) < 3:
        return None
    c1 = r1 - r1.mean()
    c2 = r2 - r2.mean()
    denom = np.sqrt(np.dot(c1, c1) * np.dot(c2, c2))
    if denom == 0.0:
        return None
    return float(np.clip(np.dot(c1, c2) / denom, -1.0, 1.0))


def shakeup(l1: Landscape, l2: Landscape) -> float:
    """Mean absolute rank displacement between the landscapes, divided by n."""
    _, r1, r2 = _shared_ranks(l1, l2)
    n = len(r1)
    return float(np.mean(np.abs(r1 - r2)) / n)


def _top_set(shared: list[Config], ranks: np.ndarray, m: int) -> set[Config]:
    """Best m configurations by rank; cut-boundary ties broken by canonical order."""
    order = np.lexsort((np.arange(len(shared)), ranks))
    return {shared[i] for i in order[:m]}


def gamma_set(l1: Landscape, l2: Landscape, gamma: float = DEFAULT_GAMMA) -> float:
    """Intersection-over-union of the two top-gamma configuration sets.

    Top sets hold the best max(1, floor(gamma*n)) configurations, so with
    gamma*n < 1 the metric degenerates to comparing the two argmins.
    """
    if not (0.0 < gamma < 1.0):
        raise ValueError("gamma must lie in (0, 1)")
    shared, r1, r2 = _shared_ranks(l1, l2)
    m = max(1, int(np.floor(gamma * len(shared))))
    t1 = _top_set(shared, r1, m)
    t2 = _top_set(shared, r2, m)
    return len(t1 & t2) / len(t1 | t2)


def write_pairwise_csv(
    landscapes: dict[str, Landscape],
    path: str | Path,
    gamma: float = DEFAULT_GAMMA,
) -> int:
    """Long-format CSV of all three metrics for every landscape pair.

    Rows are (landscape_a, landscape_b, metric, value) over unordered
    pairs in name order; feeds box-plot style summaries. Returns the
    number of pairs written.
    """
    import csv

    names = sorted(landscapes)
    n_pairs = 0
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["landscape_a", "landscape_b", "metric", "value"])
        for i, a in enumerate(names):
            for b in names[i + 1 :]:
                rep = compare_report(landscapes[a], landscapes[b], gamma)
                for metric, value in (
                    ("spearman", rep.spearman),
                    ("shakeup", rep.shakeup),
                    ("gamma_set", rep.gamma_set),
                ):
                    writer.writerow([a, b, metric, "" if value is None else repr(value)])
                n_pairs += 1
    return n_pairs


def compare_report(
    l1: Landscape, l2: Landscape, gamma: float = DEFAULT_GAMMA
) -> SimilarityReport:
    """All three similarity metrics over the shared configuration set.

    Warns (without failing) when the shared set is smaller than either
    landscape, which happens with partial logs.
    """
    shared, r1, r2 = _shared_ranks(l1, l2)
    n = len(shared)
    if n < l1.n_nodes or n < l2.n_nodes:
        logger.warning(
            "landscapes only share %d configurations (sizes %d and %d); "
            "metrics cover the intersection",
            n,
            l1.n_nodes,
            l2.n_nodes,
        )
    return SimilarityReport(
        spearman=spearman(l1, l2),
        shakeup=shakeup(l1, l2),
        gamma_set=gamma_set(l1, l2, gamma),
        gamma=gamma,
        n_shared=n,
        n_l1=l1.n_nodes,
        n_l2=l2.n_nodes,
    )
