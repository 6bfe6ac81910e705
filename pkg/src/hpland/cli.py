"""Command-line front end for reproducible batch runs.

Subcommands: ``build`` (ingest schema + evaluations into a graph export),
``metrics`` (topography report), ``lon`` (local optima network + basin
map), ``compare`` (similarity report for two graphs), ``synth`` (generate
schema/evaluations files from the synthetic models). Every command writes
its outputs plus a ``manifest.json`` pairing each output file with its
digest; reruns with an identical manifest produce byte-identical outputs.

Exit codes: 0 success (undefined metrics serialize as null), 2 input
error, 3 internal error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .errors import InputError
from .fla import DEFAULT_EPSILON, WalkConfig, fla_report
from .landscape import (
    Landscape,
    Scenario,
    parse_evaluations,
    write_evaluations,
    write_schema,
)
from .localopt import build_lon, find_local_optima, write_basin_csv
from .similarity import DEFAULT_GAMMA, compare_report, write_pairwise_csv
from .space import parse_space
from .synthetic import GridFunctionSpec, NkSpec, gen_grid_function, gen_nk

GRAPH_FILE = "graph.json"
FLA_FILE = "fla_report.json"
LON_FILE = "lon.json"
BASINS_FILE = "basins.csv"
SIMILARITY_FILE = "similarity_report.json"
PAIRWISE_FILE = "pairwise_similarity.csv"
SCHEMA_FILE = "schema.json"
EVALS_FILE = "evaluations.csv"
MANIFEST_FILE = "manifest.json"


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    with path.open("rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def _write_manifest(out_dir: Path, command: str, inputs: dict, parameters: dict,
                    outputs: list[str]) -> None:
    manifest = {
        "command": command,
        "tool_version": __version__,
        "inputs": {
            name: {"path": str(p), "sha256": _sha256(Path(p))} for name, p in inputs.items()
        },
        "parameters": parameters,
        "outputs": {name: _sha256(out_dir / name) for name in outputs},
    }
    (out_dir / MANIFEST_FILE).write_text(
        json.dumps(manifest, indent=2) + "\n", encoding="utf-8"
    )


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _scenario_from_args(args) -> Scenario:
    return Scenario(
        loss_column=args.loss_col,
        direction=args.direction,
        fidelity_alpha=args.alpha,
        fidelity_epochs=args.epochs,
        split=args.split,
    )


def cmd_build(args) -> int:
    space = parse_space(args.schema)
    scenario = _scenario_from_args(args)
    landscape = parse_evaluations(space, args.evals, scenario)
    out = _out_dir(args)
    landscape.save(out / GRAPH_FILE)
    _write_manifest(
        out,
        "build",
        {"schema": args.schema, "evals": args.evals},
        {
            "loss_col": args.loss_col,
            "direction": args.direction,
            "alpha": args.alpha,
            "epochs": args.epochs,
            "split": args.split,
        },
        [GRAPH_FILE],
    )
    print(f"{landscape.n_nodes} nodes, {landscape.n_linked_pairs} adjacencies")
    return 0


def cmd_metrics(args) -> int:
    landscape = Landscape.load(args.graph)
    w = WalkConfig(n_walks=args.walks, walk_length=args.walk_len, seed=args.seed)
    report = fla_report(landscape, w, epsilon=args.epsilon, threads=args.threads)
    out = _out_dir(args)
    report.save(out / FLA_FILE)
    _write_manifest(
        out,
        "metrics",
        {"graph": args.graph},
        dict(report.parameters, threads=args.threads),
        [FLA_FILE],
    )
    for name, value in report.to_json_dict().items():
        if name != "parameters":
            print(f"{name} = {value}")
    return 0


def cmd_lon(args) -> int:
    landscape = Landscape.load(args.graph)
    optima, basins = find_local_optima(landscape)
    lon = build_lon(landscape, basins)
    out = _out_dir(args)
    lon.save(out / LON_FILE)
    write_basin_csv(landscape, basins, out / BASINS_FILE)
    _write_manifest(out, "lon", {"graph": args.graph}, {"threads": args.threads},
                    [LON_FILE, BASINS_FILE])
    print(f"{len(optima)} local optima, {len(lon.edges)} LON edges")
    return 0


def cmd_compare(args) -> int:
    l1 = Landscape.load(args.graph_a)
    l2 = Landscape.load(args.graph_b)
    report = compare_report(l1, l2, gamma=args.gamma)
    if report.n_shared < report.n_l1 or report.n_shared < report.n_l2:
        print(
            f"warning: only {report.n_shared} shared configurations "
            f"(landscapes have {report.n_l1} and {report.n_l2})",
            file=sys.stderr,
        )
    out = _out_dir(args)
    report.save(out / SIMILARITY_FILE)
    _write_manifest(
        out,
        "compare",
        {"graph_a": args.graph_a, "graph_b": args.graph_b},
        {"gamma": args.gamma},
        [SIMILARITY_FILE],
    )
    for name in ("spearman", "shakeup", "gamma_set"):
        print(f"{name} = {getattr(report, name)}")
    return 0


def cmd_compare_batch(args) -> int:
    landscapes = {str(g): Landscape.load(g) for g in args.graphs}
    if len(landscapes) < 2:
        raise InputError("compare-batch needs at least two distinct graphs")
    out = _out_dir(args)
    n_pairs = write_pairwise_csv(landscapes, out / PAIRWISE_FILE, gamma=args.gamma)
    _write_manifest(
        out,
        "compare-batch",
        {f"graph_{i}": g for i, g in enumerate(args.graphs)},
        {"gamma": args.gamma},
        [PAIRWISE_FILE],
    )
    print(f"{n_pairs} pairs written")
    return 0


def cmd_synth(args) -> int:
    if args.kind == "nk":
        spec = NkSpec(n=args.n, k=args.k, seed=args.seed, neighbor_model=args.neighbor_model)
        landscape = gen_nk(spec)
        parameters = {
            "kind": "nk",
            "n": args.n,
            "k": args.k,
            "seed": args.seed,
            "neighbor_model": args.neighbor_model,
        }
    else:
        grids = tuple((args.grid_min, args.grid_max, args.points) for _ in range(args.dims))
        spec = GridFunctionSpec(function=args.kind, grids=grids, seed=args.seed,
                                shift=args.shift)
        landscape = gen_grid_function(spec)
        parameters = {
            "kind": args.kind,
            "dims": args.dims,
            "grid_min": args.grid_min,
            "grid_max": args.grid_max,
            "points": args.points,
            "seed": args.seed,
            "shift": args.shift,
        }
    out = _out_dir(args)
    write_schema(landscape.space, out / SCHEMA_FILE)
    write_evaluations(landscape, out / EVALS_FILE)
    _write_manifest(out, "synth", {}, parameters, [SCHEMA_FILE, EVALS_FILE])
    print(f"{landscape.n_nodes} configurations written")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hpland",
        description="Hyperparameter loss landscape construction and analysis",
    )
    parser.add_argument("--version", action="version", version=f"hpland {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="ingest schema + evaluations into a graph export")
    p.add_argument("--schema", required=True, help="search-space schema JSON")
    p.add_argument("--evals", required=True, help="evaluations CSV")
    p.add_argument("--loss-col", required=True, help="loss column to read")
    p.add_argument("--direction", choices=["minimize", "maximize"], default="minimize")
    p.add_argument("--alpha", type=float, default=None, help="fidelity label: data fraction")
    p.add_argument("--epochs", type=int, default=None, help="fidelity label: epoch budget")
    p.add_argument("--split", default="test", help="split label (train/test/...)")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("metrics", help="compute the topography report for a graph")
    p.add_argument("--graph", required=True, help="graph export JSON")
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON,
                   help="relative neutrality tolerance")
    p.add_argument("--walks", type=int, default=100, help="number of random walks")
    p.add_argument("--walk-len", type=int, default=100, help="random walk length")
    p.add_argument("--seed", type=int, default=0, help="walk RNG seed")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("lon", help="local optima network and basin map for a graph")
    p.add_argument("--graph", required=True, help="graph export JSON")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_lon)

    p = sub.add_parser("compare", help="rank-similarity report for two graphs")
    p.add_argument("--graph-a", required=True)
    p.add_argument("--graph-b", required=True)
    p.add_argument("--gamma", type=float, default=DEFAULT_GAMMA,
                   help="top-set fraction")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("compare-batch",
                       help="long-format pairwise similarity CSV for many graphs")
    p.add_argument("--graphs", required=True, nargs="+", help="graph export JSON files")
    p.add_argument("--gamma", type=float, default=DEFAULT_GAMMA)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_compare_batch)

    p = sub.add_parser("synth", help="generate synthetic schema + evaluations files")
    p.add_argument("kind", choices=["nk", "sphere", "rastrigin"])
    p.add_argument("--n", type=int, default=10, help="nk: number of loci")
    p.add_argument("--k", type=int, default=0, help="nk: coupling degree")
    p.add_argument("--neighbor-model", choices=["adjacent", "random"], default="adjacent")
    p.add_argument("--dims", type=int, default=2, help="grid function: dimensions")
    p.add_argument("--grid-min", type=float, default=-5.0)
    p.add_argument("--grid-max", type=float, default=5.0)
    p.add_argument("--points", type=int, default=21, help="grid points per dimension")
    p.add_argument("--shift", action="store_true", help="apply a seeded random shift")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_synth)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # pragma: no cover - internal failure path
        print(f"internal error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
