"""Directed-graph model of an evaluated hyperparameter loss landscape.

Nodes are evaluated configurations, each carrying a finite loss. Every
distance-1 pair among present nodes is linked: by a directed edge pointing
at the strictly fitter endpoint, or recorded as a neutral pair when the
losses tie exactly. Node ids are positions in the canonical ordering
(lexicographic index vectors), which makes every export bit-reproducible.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import EvaluationsError, GraphFormatError
from .space import (
    CATEGORICAL,
    NONE_MARKER,
    Config,
    SearchSpace,
    _single_moves,
)

MINIMIZE = "minimize"
MAXIMIZE = "maximize"

#: CSV spellings accepted for the none-marker of a numerical grid.
_NONE_SPELLINGS = {"None", ""}


@dataclass(frozen=True)
class Scenario:
    """Labels describing how the losses in a landscape were obtained.

    ``direction`` decides edge orientation and ranking; the fidelity
    fields (training-data fraction, epoch budget) and ``split`` are
    metadata only and never enter any metric.
    """

    loss_column: str
    direction: str = MINIMIZE
    fidelity_alpha: float | None = None
    fidelity_epochs: int | None = None
    split: str = "test"

    def __post_init__(self):
        if self.direction not in (MINIMIZE, MAXIMIZE):
            raise ValueError(f"direction must be minimize or maximize, got {self.direction!r}")
        if self.fidelity_alpha is not None and not (0.0 < self.fidelity_alpha <= 1.0):
            raise ValueError("fidelity_alpha must lie in (0, 1]")
        if self.fidelity_epochs is not None and self.fidelity_epochs <= 0:
            raise ValueError("fidelity_epochs must be positive")

    def to_json_dict(self) -> dict:
        return {
            "loss_column": self.loss_column,
            "direction": self.direction,
            "fidelity_alpha": self.fidelity_alpha,
            "fidelity_epochs": self.fidelity_epochs,
            "split": self.split,
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "Scenario":
        return cls(
            loss_column=obj["loss_column"],
            direction=obj.get("direction", MINIMIZE),
            fidelity_alpha=obj.get("fidelity_alpha"),
            fidelity_epochs=obj.get("fidelity_epochs"),
            split=obj.get("split", "test"),
        )


class Landscape:
    """Immutable directed-graph landscape over evaluated configurations."""

    def __init__(
        self,
        space: SearchSpace,
        scenario: Scenario,
        configs: list[Config],
        losses,
        edges,
        neutral,
    ):
        self.space = space
        self.scenario = scenario
        self.configs = configs
        self.losses = np.asarray(losses, dtype=np.float64)
        self.losses.setflags(write=False)
        self.edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        self.edges.setflags(write=False)
        self.neutral = np.asarray(neutral, dtype=np.int64).reshape(-1, 2)
        self.neutral.setflags(write=False)
        self._id_of = {c: i for i, c in enumerate(configs)}
        self._adjacency = None
        self._succ = None
        self._basins = None

    # -- basic accessors ------------------------------------------------

    @property
    def n_nodes(self) -> int:
        return len(self.configs)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_neutral(self) -> int:
        return len(self.neutral)

    @property
    def n_linked_pairs(self) -> int:
        """Distance-1 adjacencies among present nodes (edges plus neutral pairs)."""
        return self.n_edges + self.n_neutral

    def id_of(self, c: Config) -> int:
        return self._id_of[c]

    def has_config(self, c: Config) -> bool:
        return c in self._id_of

    def direction_key(self):
        """Losses transformed so that smaller is always better."""
        if self.scenario.direction == MINIMIZE:
            return self.losses
        return -self.losses

    def better(self, loss_a: float, loss_b: float) -> bool:
        """True when loss_a is strictly fitter than loss_b."""
        if self.scenario.direction == MINIMIZE:
            return loss_a < loss_b
        return loss_a > loss_b

    def adjacency(self) -> list[np.ndarray]:
        """Per-node sorted neighbor ids; covers edges and neutral pairs."""
        if self._adjacency is None:
            lists: list[list[int]] = [[] for _ in range(self.n_nodes)]
            for u, v in np.vstack([self.edges, self.neutral]):
                lists[u].append(int(v))
                lists[v].append(int(u))
            self._adjacency = [np.array(sorted(l), dtype=np.int64) for l in lists]
        return self._adjacency

    def degrees(self) -> np.ndarray:
        adj = self.adjacency()
        return np.array([len(a) for a in adj], dtype=np.int64)

    # -- serialization ---------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "nodes": [
                {"id": i, "config": list(c), "loss": float(l)}
                for i, (c, l) in enumerate(zip(self.configs, self.losses))
            ],
            "edges": [[int(u), int(v)] for u, v in self.edges],
            "neutral": [[int(a), int(b)] for a, b in self.neutral],
            "scenario": self.scenario.to_json_dict(),
            "space": self.space.to_json_dict(),
        }

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.to_json_dict(), indent=2) + "\n", encoding="utf-8"
        )

    @classmethod
    def from_json_dict(cls, obj: dict) -> "Landscape":
        for key in ("nodes", "edges", "neutral", "scenario", "space"):
            if key not in obj:
                raise GraphFormatError(f"graph export is missing {key!r}")
        space = SearchSpace.from_json_dict(obj["space"])
        scenario = Scenario.from_json_dict(obj["scenario"])
        configs: list[Config] = []
        losses: list[float] = []
        for i, node in enumerate(obj["nodes"]):
            if node.get("id") != i:
                raise GraphFormatError(f"nodes[{i}] has id {node.get('id')}, expected {i}")
            c = tuple(node["config"])
            if not space.contains(c):
                raise GraphFormatError(f"nodes[{i}] config {c} lies outside the space")
            loss = float(node["loss"])
            if not math.isfinite(loss):
                raise GraphFormatError(f"nodes[{i}] loss is not finite")
            configs.append(c)
            losses.append(loss)
        n = len(configs)
        for name in ("edges", "neutral"):
            for pair in obj[name]:
                if not (0 <= pair[0] < n and 0 <= pair[1] < n):
                    raise GraphFormatError(f"{name} pair {pair} references unknown node id")
        return cls(space, scenario, configs, losses, obj["edges"], obj["neutral"])

    @classmethod
    def load(cls, path: str | Path) -> "Landscape":
        try:
            obj = json.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as e:
            raise GraphFormatError(f"cannot read graph file {path}: {e}") from e
        except json.JSONDecodeError as e:
            raise GraphFormatError(f"graph file {path} is not valid JSON: {e}") from e
        return cls.from_json_dict(obj)


def build_landscape(
    space: SearchSpace, scenario: Scenario, evaluations: dict[Config, float]
) -> Landscape:
    """Assemble the directed landscape graph from evaluated configurations.

    Linking rule for every present distance-1 pair: the strictly fitter
    endpoint receives the edge head; exact loss ties become neutral pairs.
    Pairs whose other endpoint is absent are skipped (partial grids are
    fine). Node ids follow the canonical lexicographic config order.
    """
    if not evaluations:
        raise EvaluationsError("no evaluated configurations")
    configs = sorted(evaluations)
    for c in configs:
        space.validate_config(c)
        if not math.isfinite(evaluations[c]):
            raise EvaluationsError(f"configuration {c} has a non-finite loss")
    id_of = {c: i for i, c in enumerate(configs)}
    losses = np.array([evaluations[c] for c in configs], dtype=np.float64)
    minimize = scenario.direction == MINIMIZE

    edges: list[tuple[int, int]] = []
    neutral: list[tuple[int, int]] = []
    for u, c in enumerate(configs):
        # Generating only index-increasing moves visits each unordered
        # d=1 pair exactly once, and keeps v's id above u's.
        for pos, hp in enumerate(space.hps):
            for j in _single_moves(hp, c[pos]):
                if j < c[pos]:
                    continue
                cand = c[:pos] + (j,) + c[pos + 1 :]
                v = id_of.get(cand)
                if v is None:
                    continue
                lu, lv = losses[u], losses[v]
                if lu == lv:
                    neutral.append((u, v))
                elif (lv < lu) if minimize else (lv > lu):
                    edges.append((u, v))
                else:
                    edges.append((v, u))
    edges.sort()
    neutral.sort()
    return Landscape(space, scenario, configs, losses, edges, neutral)


def parse_evaluations(
    space: SearchSpace, table_file: str | Path, scenario: Scenario
) -> Landscape:
    """Ingest a CSV of evaluated configurations and build the landscape.

    The header must contain every hyperparameter name plus the scenario's
    loss column. Every row must sit exactly on the declared grids; rows
    are reported with 1-based file line numbers on error.
    """
    path = Path(table_file)
    lookups = []
    for hp in space.hps:
        if hp.kind == CATEGORICAL:
            lookups.append({v: i for i, v in enumerate(hp.values)})
        else:
            by_float = {
                float(v): i for i, v in enumerate(hp.values) if v is not NONE_MARKER
            }
            none_idx = hp.n_values - 1 if hp.has_none_marker else None
            lookups.append((by_float, none_idx))

    try:
        fh = path.open(newline="", encoding="utf-8")
    except OSError as e:
        raise EvaluationsError(f"cannot read evaluations file {path}: {e}") from e
    with fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [hp.name for hp in space.hps if hp.name not in header]
        if missing:
            raise EvaluationsError(f"evaluations header is missing HP columns {missing}")
        if scenario.loss_column not in header:
            raise EvaluationsError(
                f"evaluations header is missing loss column {scenario.loss_column!r}"
            )

        evaluations: dict[Config, float] = {}
        first_row: dict[Config, int] = {}
        for row_no, row in enumerate(reader, start=2):
            idxs = []
            for hp, lookup in zip(space.hps, lookups):
                cell = (row.get(hp.name) or "").strip()
                if hp.kind == CATEGORICAL:
                    idx = lookup.get(cell)
                else:
                    by_float, none_idx = lookup
                    if cell in _NONE_SPELLINGS:
                        idx = none_idx
                    else:
                        try:
                            idx = by_float.get(float(cell))
                        except ValueError:
                            idx = None
                if idx is None:
                    raise EvaluationsError(
                        f"row {row_no}, column {hp.name!r}: value {cell!r} is not on the declared grid"
                    )
                idxs.append(idx)
            config = tuple(idxs)
            cell = (row.get(scenario.loss_column) or "").strip()
            if not cell:
                raise EvaluationsError(
                    f"row {row_no}, column {scenario.loss_column!r}: missing loss value"
                )
            try:
                loss = float(cell)
            except ValueError:
                loss = math.nan
            if not math.isfinite(loss):
                raise EvaluationsError(
                    f"row {row_no}, column {scenario.loss_column!r}: loss {cell!r} is not finite"
                )
            if config in evaluations:
                raise EvaluationsError(
                    f"row {row_no}: duplicate configuration "
                    f"(first seen at row {first_row[config]})"
                )
            evaluations[config] = loss
            first_row[config] = row_no
        if not evaluations:
            raise EvaluationsError(f"evaluations file {path} contains no data rows")
    return build_landscape(space, scenario, evaluations)


def fractional_ranks(values, minimize: bool = True) -> np.ndarray:
    """1-based ranks; tied values receive the mean of their covered positions."""
    key = np.asarray(values, dtype=np.float64)
    if not minimize:
        key = -key
    n = len(key)
    order = np.argsort(key, kind="stable")
    ranks = np.empty(n, dtype=np.float64)
    i = 0
    while i < n:
        j = i
        while j + 1 < n and key[order[j + 1]] == key[order[i]]:
            j += 1
        # positions i..j (0-based) share the mean of ranks i+1..j+1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def rank_losses(l: Landscape) -> np.ndarray:
    """Per-node performance ranks (1 = best under the scenario direction)."""
    if l.n_nodes == 0:
        raise ValueError("cannot rank an empty landscape")
    return fractional_ranks(l.losses, minimize=l.scenario.direction == MINIMIZE)


def global_optima(l: Landscape) -> np.ndarray:
    """Node ids attaining the best loss (ties included), ascending."""
    key = l.direction_key()
    best = key.min()
    return np.flatnonzero(key == best)


def write_schema(space: SearchSpace, path: str | Path) -> None:
    """Write a search space as a standard schema JSON file."""
    Path(path).write_text(
        json.dumps(space.to_json_dict(), indent=2) + "\n", encoding="utf-8"
    )


def _cell_text(value) -> str:
    if value is NONE_MARKER:
        return "None"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_evaluations(l: Landscape, path: str | Path) -> None:
    """Write a landscape's nodes as a standard evaluations CSV.

    Float cells use ``repr`` so a reparse reproduces the losses bit-exactly.
    """
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([hp.name for hp in l.space.hps] + [l.scenario.loss_column])
        for c, loss in zip(l.configs, l.losses):
            cells = [_cell_text(v) for v in l.space.values_of(c)]
            writer.writerow(cells + [repr(float(loss))])
