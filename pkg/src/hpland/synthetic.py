"""Seedable ground-truth landscape generators.

Kauffman NK bit-string landscapes (tunable ruggedness via the coupling
degree k) and grid-sampled test functions (convex sphere, multimodal
rastrigin). Both produce ordinary landscapes through the standard build
path, so they exercise the full pipeline and serve as validation oracles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .landscape import Landscape, Scenario, build_landscape
from .space import CATEGORICAL, NUMERICAL, HyperparameterDecl, SearchSpace

ADJACENT = "adjacent"
RANDOM = "random"

SPHERE = "sphere"
RASTRIGIN = "rastrigin"


@dataclass(frozen=True)
class NkSpec:
    """NK model: n binary loci, each coupled to k others.

    ``adjacent`` couples locus i to the next k loci cyclically; ``random``
    draws k distinct partners per locus from the seeded stream. The same
    spec always yields a bit-identical landscape.
    """

    n: int
    k: int
    seed: int = 0
    neighbor_model: str = ADJACENT

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if not (0 <= self.k <= self.n - 1):
            raise ValueError(f"k must lie in [0, n-1]; n={self.n} admits k<={self.n - 1}")
        if self.neighbor_model not in (ADJACENT, RANDOM):
            raise ValueError(f"unknown neighbor model {self.neighbor_model!r}")


def _nk_space(n: int) -> SearchSpace:
    return SearchSpace(
        hps=tuple(
            HyperparameterDecl(name=f"locus_{i}", kind=CATEGORICAL, values=("0", "1"))
            for i in range(n)
        )
    )


def gen_nk(spec: NkSpec) -> Landscape:
    """Generate the full 2^n NK landscape (loss = -fitness, minimized).

    Fitness of a bit string is the mean of per-locus table lookups; each
    locus table has 2^(k+1) uniform entries in [0, 1).
    """
    n, k = spec.n, spec.k
    rng = np.random.default_rng(np.random.SeedSequence(spec.seed))
    if spec.neighbor_model == ADJACENT:
        partners = np.array([[(i + j) % n for j in range(1, k + 1)] for i in range(n)],
                            dtype=np.int64).reshape(n, k)
    else:
        partners = np.empty((n, k), dtype=np.int64)
        for i in range(n):
            others = np.array([j for j in range(n) if j != i])
            partners[i] = rng.choice(others, size=k, replace=False)
    tables = rng.random((n, 2 ** (k + 1)))

    bits = ((np.arange(2**n)[:, None] >> np.arange(n - 1, -1, -1)) & 1).astype(np.int64)
    fitness = np.zeros(2**n, dtype=np.float64)
    weights = 2 ** np.arange(k - 1, -1, -1, dtype=np.int64) if k else np.empty(0, np.int64)
    for i in range(n):
        idx = bits[:, i] * 2**k
        if k:
            idx = idx + bits[:, partners[i]] @ weights
        fitness += tables[i, idx]
    fitness /= n

    space = _nk_space(n)
    scenario = Scenario(loss_column="loss", direction="minimize")
    evaluations = {tuple(row): -f for row, f in zip(bits.tolist(), fitness)}
    return build_landscape(space, scenario, evaluations)


@dataclass(frozen=True)
class GridFunctionSpec:
    """Test function sampled exactly on a rectangular grid.

    ``grids`` holds one (min, max, points) triple per dimension. With
    ``shift=True`` the function is translated by a seeded offset drawn
    uniformly inside each dimension's range.
    """

    function: str
    grids: tuple[tuple[float, float, int], ...]
    seed: int = 0
    shift: bool = False

    def __post_init__(self):
        if self.function not in (SPHERE, RASTRIGIN):
            raise ValueError(f"unknown function {self.function!r}")
        if not self.grids:
            raise ValueError("at least one grid dimension is required")
        for lo, hi, points in self.grids:
            if points < 1:
                raise ValueError("each dimension needs at least one grid point")
            if points > 1 and not hi > lo:
                raise ValueError("grid max must exceed min")

    @property
    def dims(self) -> int:
        return len(self.grids)


def _sphere(x: np.ndarray) -> np.ndarray:
    return (x**2).sum(axis=1)


def _rastrigin(x: np.ndarray) -> np.ndarray:
    return 10.0 * x.shape[1] + (x**2 - 10.0 * np.cos(2.0 * np.pi * x)).sum(axis=1)


_FUNCTIONS = {SPHERE: _sphere, RASTRIGIN: _rastrigin}


def gen_grid_function(spec: GridFunctionSpec) -> Landscape:
    """Evaluate the chosen function at every grid point and build the landscape."""
    axes = [np.linspace(lo, hi, points) for lo, hi, points in spec.grids]
    space = SearchSpace(
        hps=tuple(
            HyperparameterDecl(
                name=f"x{i}", kind=NUMERICAL, values=tuple(float(v) for v in axis)
            )
            for i, axis in enumerate(axes)
        )
    )
    mesh = np.meshgrid(*axes, indexing="ij")
    points = np.stack([m.ravel() for m in mesh], axis=1)
    if spec.shift:
        rng = np.random.default_rng(np.random.SeedSequence(spec.seed))
        offset = np.array([rng.uniform(lo, hi) for lo, hi, _ in spec.grids])
        points = points - offset
    losses = _FUNCTIONS[spec.function](points)

    scenario = Scenario(loss_column="loss", direction="minimize")
    evaluations = {}
    for flat, loss in zip(np.ndindex(*[len(a) for a in axes]), losses):
        evaluations[tuple(int(i) for i in flat)] = float(loss)
    return build_landscape(space, scenario, evaluations)
