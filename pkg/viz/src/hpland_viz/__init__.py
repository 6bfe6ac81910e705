"""2-D landscape views from graph exports."""

__version__ = "0.1.0"

from .embed import (
    PROXIMITIES,
    EmbeddingConfig,
    hope_embed,
    hope_embed_with_error,
    proximity_matrix,
)
from .graphio import GraphExport, load_graph, performance_ranks
from .project import project_2d
from .render import render_surface

__all__ = [
    "__version__",
    "EmbeddingConfig",
    "PROXIMITIES",
    "GraphExport",
    "load_graph",
    "performance_ranks",
    "proximity_matrix",
    "hope_embed",
    "hope_embed_with_error",
    "project_2d",
    "render_surface",
]
