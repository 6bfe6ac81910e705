"""Reader for landscape graph-export JSON files.

The viz pipeline consumes only this file format; it never imports the
producing library. Only node losses, strict directed edges and the
scenario direction are needed here.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np


@dataclass
class GraphExport:
    losses: np.ndarray
    edges: np.ndarray  # (m, 2) directed worse -> better
    neutral: np.ndarray  # (k, 2) exact-tie adjacencies
    direction: str
    input_digest: str

    @property
    def n_nodes(self) -> int:
        return len(self.losses)

    def mean_neighbor_count(self) -> float:
        """Average number of distance-1 neighbors per node (edges + ties)."""
        if self.n_nodes == 0:
            return 0.0
        return 2.0 * (len(self.edges) + len(self.neutral)) / self.n_nodes


def load_graph(path: str | Path) -> GraphExport:
    path = Path(path)
    raw = path.read_bytes()
    obj = json.loads(raw.decode("utf-8"))
    for key in ("nodes", "edges", "scenario"):
        if key not in obj:
            raise ValueError(f"graph export is missing {key!r}")
    losses = np.array([node["loss"] for node in obj["nodes"]], dtype=np.float64)
    edges = np.array(obj["edges"], dtype=np.int64).reshape(-1, 2)
    neutral = np.array(obj.get("neutral", []), dtype=np.int64).reshape(-1, 2)
    direction = obj["scenario"].get("direction", "minimize")
    return GraphExport(
        losses=losses,
        edges=edges,
        neutral=neutral,
        direction=direction,
        input_digest=hashlib.sha256(raw).hexdigest(),
    )


def performance_ranks(losses: np.ndarray, direction: str) -> np.ndarray:
    """Fractional ranks, 1 = best; ties get the mean of covered positions."""
    key = np.asarray(losses, dtype=np.float64)
    if direction == "maximize":
        key = -key
    n = len(key)
    order = np.argsort(key, kind="stable")
    ranks = np.empty(n, dtype=np.float64)
    i = 0
    while i < n:
        j = i
        while j + 1 < n and key[order[j + 1]] == key[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks
