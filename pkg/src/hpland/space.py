"""Search-space declarations, configuration identity, distances, neighborhoods.

A configuration is identified by its index vector: one grid index per
hyperparameter, in declaration order. All distances are index-based:
categorical hyperparameters contribute 0/1 (Hamming), numerical ones the
absolute difference of grid indices (Manhattan steps on the grid). A
trailing none-marker on a numerical grid occupies the last index and is
therefore one step beyond the largest numeric value.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

from .errors import SchemaError

CATEGORICAL = "categorical"
NUMERICAL = "numerical"

#: Sentinel used in value tuples for the none-marker (JSON null).
NONE_MARKER = None

Config = tuple[int, ...]


@dataclass(frozen=True)
class HyperparameterDecl:
    """One hyperparameter: a name plus its ordered grid of admissible values.

    ``values`` holds strings for categorical HPs and floats for numerical
    ones; a numerical grid may end with ``None`` (the none-marker, e.g. an
    unbounded ``max_depth``).
    """

    name: str
    kind: str
    values: tuple

    def __post_init__(self):
        if not self.name:
            raise SchemaError("hyperparameter name must be non-empty")
        if self.kind not in (CATEGORICAL, NUMERICAL):
            raise SchemaError(f"hyperparameter {self.name!r}: unknown kind {self.kind!r}")
        if len(self.values) == 0:
            raise SchemaError(f"hyperparameter {self.name!r}: empty value list")
        if self.kind == CATEGORICAL:
            for i, v in enumerate(self.values):
                if not isinstance(v, str):
                    raise SchemaError(
                        f"hyperparameter {self.name!r}: values[{i}] is not a string"
                    )
            if len(set(self.values)) != len(self.values):
                raise SchemaError(f"hyperparameter {self.name!r}: duplicate values")
        else:
            numeric = self.values[:-1] if self.values[-1] is NONE_MARKER else self.values
            for i, v in enumerate(numeric):
                if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                    raise SchemaError(
                        f"hyperparameter {self.name!r}: values[{i}] is not a finite number"
                        " (none-marker may only occupy the last grid position)"
                    )
            for i in range(1, len(numeric)):
                if not numeric[i] > numeric[i - 1]:
                    raise SchemaError(
                        f"hyperparameter {self.name!r}: values[{i}] breaks the strictly"
                        f" increasing grid order"
                    )

    @property
    def n_values(self) -> int:
        return len(self.values)

    @property
    def has_none_marker(self) -> bool:
        return self.kind == NUMERICAL and self.values[-1] is NONE_MARKER


@dataclass(frozen=True)
class SearchSpace:
    """Ordered collection of hyperparameter declarations."""

    hps: tuple[HyperparameterDecl, ...]

    def __post_init__(self):
        names = [hp.name for hp in self.hps]
        for i, name in enumerate(names):
            if name in names[:i]:
                raise SchemaError(f"duplicate hyperparameter name {name!r} (hps[{i}])")

    @property
    def n_hps(self) -> int:
        return len(self.hps)

    def cardinality(self) -> int:
        size = 1
        for hp in self.hps:
            size *= hp.n_values
        return size

    def contains(self, c: Config) -> bool:
        return len(c) == len(self.hps) and all(
            0 <= idx < hp.n_values for idx, hp in zip(c, self.hps)
        )

    def validate_config(self, c: Config) -> None:
        if not self.contains(c):
            raise ValueError(f"configuration {c} is not in the search space")

    def iter_configs(self) -> Iterator[Config]:
        """All grid configurations in canonical (lexicographic) order."""
        def rec(prefix: tuple, rest: tuple):
            if not rest:
                yield prefix
                return
            for i in range(rest[0].n_values):
                yield from rec(prefix + (i,), rest[1:])

        yield from rec((), self.hps)

    def values_of(self, c: Config) -> tuple:
        """Concrete grid values for an index vector."""
        return tuple(hp.values[i] for hp, i in zip(self.hps, c))

    def to_json_dict(self) -> dict:
        return {
            "hps": [
                {"name": hp.name, "kind": hp.kind, "values": list(hp.values)}
                for hp in self.hps
            ]
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "SearchSpace":
        return _space_from_obj(obj)


def parse_space(schema_file: str | Path) -> SearchSpace:
    """Load a search-space schema from a UTF-8 JSON file.

    Expected shape: ``{"hps": [{"name": ..., "kind": "categorical"|"numerical",
    "values": [...]}, ...]}`` with the none-marker spelled ``null``.
    """
    path = Path(schema_file)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise SchemaError(f"cannot read schema file {path}: {e}") from e
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"schema file {path} is not valid JSON: {e}") from e
    return _space_from_obj(obj)


def _space_from_obj(obj) -> SearchSpace:
    if not isinstance(obj, dict) or "hps" not in obj:
        raise SchemaError('schema must be an object with an "hps" list')
    raw_hps = obj["hps"]
    if not isinstance(raw_hps, list) or not raw_hps:
        raise SchemaError('"hps" must be a non-empty list')
    hps = []
    for i, raw in enumerate(raw_hps):
        if not isinstance(raw, dict):
            raise SchemaError(f"hps[{i}] must be an object")
        for key in ("name", "kind", "values"):
            if key not in raw:
                raise SchemaError(f"hps[{i}] is missing {key!r}")
        values = raw["values"]
        if not isinstance(values, list):
            raise SchemaError(f"hps[{i}].values must be a list")
        kind = raw["kind"]
        if kind == NUMERICAL:
            converted = []
            for j, v in enumerate(values):
                if v is None:
                    if j != len(values) - 1:
                        raise SchemaError(
                            f"hps[{i}].values[{j}]: none-marker must be the last grid entry"
                        )
                    converted.append(NONE_MARKER)
                elif isinstance(v, bool) or not isinstance(v, (int, float)):
                    raise SchemaError(f"hps[{i}].values[{j}] is not a number")
                else:
                    converted.append(float(v))
            values = converted
        hps.append(HyperparameterDecl(name=raw["name"], kind=kind, values=tuple(values)))
    return SearchSpace(hps=tuple(hps))


def config_distance(space: SearchSpace, a: Config, b: Config) -> int:
    """Grid distance between two configurations.

    Hamming contribution (0/1) per categorical HP, absolute index
    difference per numerical HP; the total is their sum.
    """
    space.validate_config(a)
    space.validate_config(b)
    d = 0
    for hp, ia, ib in zip(space.hps, a, b):
        if hp.kind == CATEGORICAL:
            d += int(ia != ib)
        else:
            d += abs(ia - ib)
    return d


def _single_moves(hp: HyperparameterDecl, idx: int) -> list[int]:
    """Grid indices reachable from ``idx`` with a single d=1 change of this HP."""
    if hp.kind == CATEGORICAL:
        return [j for j in range(hp.n_values) if j != idx]
    moves = []
    if idx - 1 >= 0:
        moves.append(idx - 1)
    if idx + 1 < hp.n_values:
        moves.append(idx + 1)
    return moves


def neighbors(space: SearchSpace, c: Config) -> set[Config]:
    """All grid configurations at distance exactly 1 from ``c``."""
    space.validate_config(c)
    out = set()
    for pos, hp in enumerate(space.hps):
        for j in _single_moves(hp, c[pos]):
            out.add(c[:pos] + (j,) + c[pos + 1 :])
    return out


def configs_at_distance_two(space: SearchSpace, c: Config) -> set[Config]:
    """All grid configurations at distance exactly 2 from ``c``.

    Either one numerical HP moved two grid steps, or two distinct HPs each
    changed by a single d=1 move.
    """
    space.validate_config(c)
    out = set()
    for pos, hp in enumerate(space.hps):
        if hp.kind == NUMERICAL:
            for j in (c[pos] - 2, c[pos] + 2):
                if 0 <= j < hp.n_values:
                    out.add(c[:pos] + (j,) + c[pos + 1 :])
    moves = [_single_moves(hp, c[pos]) for pos, hp in enumerate(space.hps)]
    for i in range(len(space.hps)):
        for j in range(i + 1, len(space.hps)):
            for a in moves[i]:
                for b in moves[j]:
                    cand = list(c)
                    cand[i] = a
                    cand[j] = b
                    out.add(tuple(cand))
    return out


def n_grid_neighbors(space: SearchSpace, c: Config) -> int:
    """Closed-form |N(c)| on the full grid (boundary-aware)."""
    total = 0
    for pos, hp in enumerate(space.hps):
        total += len(_single_moves(hp, c[pos]))
    return total
