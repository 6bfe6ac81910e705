"""viz: render a 2-D landscape view from a graph-export JSON file."""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from .embed import PROXIMITIES, EmbeddingConfig, hope_embed
from .graphio import load_graph, performance_ranks
from .project import project_2d
from .render import render_surface


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="viz",
        description="Render a rank-colored 2-D surface of a landscape graph export",
    )
    parser.add_argument("--graph", required=True, help="landscape graph-export JSON")
    parser.add_argument("--out", required=True, help="output PNG path")
    parser.add_argument("--dim", type=int, default=32, help="embedding dimension (even)")
    parser.add_argument("--proximity", choices=PROXIMITIES, default="katz")
    parser.add_argument("--neighbors", type=int, default=None,
                        help="projection neighbors (default: mean node degree + 1)")
    parser.add_argument("--min-dist", type=float, default=0.6)
    parser.add_argument("--seed", type=int, default=0)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        graph = load_graph(args.graph)
        neighbors = args.neighbors
        if neighbors is None:
            neighbors = max(2, int(math.floor(graph.mean_neighbor_count())) + 1)
            neighbors = min(neighbors, max(1, graph.n_nodes - 1))
        cfg = EmbeddingConfig(
            dimension=args.dim,
            proximity=args.proximity,
            n_neighbors=neighbors,
            min_dist=args.min_dist,
            seed=args.seed,
        )
        embeddings = hope_embed(graph, cfg)
        coords = project_2d(embeddings, cfg)
        ranks = performance_ranks(graph.losses, graph.direction)
        sidecar = {
            "input_digest": graph.input_digest,
            "cfg": cfg.to_json_dict(),
            "seed": args.seed,
        }
        out = render_surface(coords, ranks, Path(args.out), sidecar)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # pragma: no cover - internal failure path
        print(f"internal error: {e}", file=sys.stderr)
        return 3
    print(f"wrote {out} ({graph.n_nodes} nodes)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
