"""Rank-colored landscape surfaces from 2-D layouts.

Linear interpolation over a Delaunay triangulation of the layout, colored
by performance rank (rank 1 = best = the bright end of the scale). Ranks,
not raw losses, drive the colors, so the image is invariant under any
monotone loss transform. Degenerate layouts (fewer than 3 non-collinear
points) fall back to a plain scatter with a warning.
"""

from __future__ import annotations

import json
import warnings
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import matplotlib.tri as mtri
import numpy as np

_CMAP = "viridis_r"  # low rank (best) maps to the bright end
_CONTOUR_LEVELS = 24


def _non_collinear(coords: np.ndarray) -> bool:
    if len(coords) < 3:
        return False
    base = coords - coords[0]
    return np.linalg.matrix_rank(base, tol=1e-9) >= 2


def render_surface(
    coords: np.ndarray,
    ranks: np.ndarray,
    out_image: str | Path,
    sidecar: dict | None = None,
) -> Path:
    """Write the PNG and its parameter sidecar; returns the image path."""
    coords = np.asarray(coords, dtype=np.float64)
    ranks = np.asarray(ranks, dtype=np.float64)
    if coords.shape[0] != ranks.shape[0]:
        raise ValueError("coords and ranks must be aligned")
    out_image = Path(out_image)

    fig, ax = plt.subplots(figsize=(6, 5), dpi=150)
    surface = False
    if _non_collinear(coords):
        try:
            triang = mtri.Triangulation(coords[:, 0], coords[:, 1])
            filled = ax.tricontourf(triang, ranks, levels=_CONTOUR_LEVELS, cmap=_CMAP)
            fig.colorbar(filled, ax=ax, label="performance rank (1 = best)")
            surface = True
        except (ValueError, RuntimeError) as e:
            warnings.warn(f"triangulation failed ({e}); falling back to scatter")
    else:
        warnings.warn("fewer than 3 non-collinear points; falling back to scatter")
    if not surface:
        sc = ax.scatter(coords[:, 0], coords[:, 1], c=ranks, cmap=_CMAP, s=24)
        fig.colorbar(sc, ax=ax, label="performance rank (1 = best)")
    ax.set_xticks([])
    ax.set_yticks([])
    fig.tight_layout()
    fig.savefig(out_image)
    plt.close(fig)

    params = dict(sidecar or {})
    params["render"] = {
        "surface": surface,
        "levels": _CONTOUR_LEVELS,
        "colormap": _CMAP,
        "n_points": int(len(coords)),
    }
    sidecar_path = out_image.with_suffix(".params.json")
    sidecar_path.write_text(json.dumps(params, indent=2) + "\n", encoding="utf-8")
    return out_image
