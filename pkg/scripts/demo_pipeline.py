#!/usr/bin/env python3
"""End-to-end walkthrough on synthetic data.

Generates two NK landscapes that differ only in seed (a stand-in for the
same model under two scenarios), pushes both through the CLI surface
(synth -> build -> metrics -> lon -> compare) and prints where every
artifact landed.
"""

import argparse
import sys
from pathlib import Path

from hpland.cli import main as hpland


def run(args: list) -> None:
    code = hpland([str(a) for a in args])
    if code != 0:
        raise SystemExit(code)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--workdir", default="demo_out")
    ap.add_argument("--n", type=int, default=8)
    ap.add_argument("--k", type=int, default=2)
    args = ap.parse_args()

    work = Path(args.workdir)
    graphs = []
    for seed in (0, 1):
        synth = work / f"nk_seed{seed}"
        run(["synth", "nk", "--n", args.n, "--k", args.k, "--seed", seed, "--out", synth])
        built = work / f"graph_seed{seed}"
        run(["build", "--schema", synth / "schema.json",
             "--evals", synth / "evaluations.csv", "--loss-col", "loss", "--out", built])
        graphs.append(built / "graph.json")
        run(["metrics", "--graph", graphs[-1], "--seed", seed,
             "--out", work / f"metrics_seed{seed}"])
        run(["lon", "--graph", graphs[-1], "--out", work / f"lon_seed{seed}"])

    run(["compare", "--graph-a", graphs[0], "--graph-b", graphs[1],
         "--out", work / "comparison"])
    print(f"\nartifacts under {work}/")
    for p in sorted(work.rglob("*")):
        if p.is_file():
            print(f"  {p}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
