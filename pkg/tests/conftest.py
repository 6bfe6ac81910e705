"""Shared builders for test landscapes."""

from __future__ import annotations

import numpy as np
import pytest

from hpland import (
    HyperparameterDecl,
    Landscape,
    Scenario,
    SearchSpace,
    build_landscape,
)


def line_space(n: int) -> SearchSpace:
    return SearchSpace(
        hps=(
            HyperparameterDecl(
                name="x", kind="numerical", values=tuple(float(i) for i in range(n))
            ),
        )
    )


def line_landscape(losses, direction="minimize") -> Landscape:
    """1-D numerical landscape with the given per-index losses."""
    losses = list(losses)
    space = line_space(len(losses))
    scenario = Scenario(loss_column="loss", direction=direction)
    return build_landscape(space, scenario, {(i,): float(v) for i, v in enumerate(losses)})


def grid_landscape(loss_grid, direction="minimize") -> Landscape:
    """2-D numerical landscape from a matrix of losses."""
    arr = np.asarray(loss_grid, dtype=float)
    space = SearchSpace(
        hps=(
            HyperparameterDecl(
                name="x", kind="numerical", values=tuple(float(i) for i in range(arr.shape[0]))
            ),
            HyperparameterDecl(
                name="y", kind="numerical", values=tuple(float(i) for i in range(arr.shape[1]))
            ),
        )
    )
    scenario = Scenario(loss_column="loss", direction=direction)
    evals = {(i, j): float(arr[i, j]) for i in range(arr.shape[0]) for j in range(arr.shape[1])}
    return build_landscape(space, scenario, evals)


def random_space(rng: np.random.Generator, max_hps=4, max_values=5) -> SearchSpace:
    n_hps = int(rng.integers(1, max_hps + 1))
    hps = []
    for i in range(n_hps):
        n_vals = int(rng.integers(2, max_values + 1))
        if rng.random() < 0.5:
            hps.append(
                HyperparameterDecl(
                    name=f"c{i}",
                    kind="categorical",
                    values=tuple(f"v{j}" for j in range(n_vals)),
                )
            )
        else:
            values = tuple(float(v) for v in np.sort(rng.uniform(-10, 10, size=n_vals)))
            hps.append(HyperparameterDecl(name=f"n{i}", kind="numerical", values=values))
    return SearchSpace(hps=tuple(hps))


def random_landscape(
    rng: np.random.Generator,
    max_hps=4,
    max_values=5,
    keep_fraction=1.0,
    tie_prone=False,
    direction=None,
) -> Landscape:
    """Random landscape; optionally a partial grid or with frequent loss ties."""
    space = random_space(rng, max_hps=max_hps, max_values=max_values)
    configs = list(space.iter_configs())
    if keep_fraction < 1.0:
        keep = max(1, int(round(keep_fraction * len(configs))))
        chosen = rng.choice(len(configs), size=keep, replace=False)
        configs = [configs[i] for i in sorted(chosen)]
    if tie_prone:
        losses = np.round(rng.uniform(0, 1, size=len(configs)), 1)
    else:
        losses = rng.uniform(0, 1, size=len(configs))
    direction = direction or ("minimize" if rng.random() < 0.5 else "maximize")
    scenario = Scenario(loss_column="loss", direction=direction)
    return build_landscape(space, scenario, dict(zip(configs, losses.tolist())))


def monotone_transform(l: Landscape, rng: np.random.Generator) -> Landscape:
    """Replace losses via a random strictly increasing map (ties preserved)."""
    unique = np.unique(l.losses)
    gaps = rng.uniform(0.1, 1.0, size=len(unique))
    new_vals = rng.uniform(-5, 5) + np.cumsum(gaps)
    mapping = dict(zip(unique.tolist(), new_vals.tolist()))
    evals = {c: mapping[float(x)] for c, x in zip(l.configs, l.losses)}
    return build_landscape(l.space, l.scenario, evals)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
