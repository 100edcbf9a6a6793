#!/usr/bin/env python3
"""Run the three evaluation sweeps and drop CSVs into results/.

  probability  CNOT probability 0.1..0.9, 16 qubits, 950 gates, linear:16
  gates        gate count 200..1000, p_cx 0.5, linear:16
  topology     linear:16 vs ladder:16 vs square:4x4 at 950 gates, p_cx 0.5

Use --quick for a fast smoke run (fewer repeats, smaller circuits).
"""

import argparse
import sys
from pathlib import Path

from bqaroute.cli import main as cli_main


def run(outdir: Path, repeats: int, gates: int) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    common = ["--qubits", "16", "--gates", str(gates), "--repeats", str(repeats), "--seed0", "0"]
    sweeps = {
        "probability.csv": ["--axis", "p_cx", "--values", "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9",
                            "--chip", "linear:16"],
        "gates.csv": ["--axis", "gates", "--values", "200,400,600,800,1000",
                      "--p-cx", "0.5", "--chip", "linear:16"],
        "topology.csv": ["--axis", "topology", "--values", "linear:16,ladder:16,square:4x4",
                         "--p-cx", "0.5", "--chip", "linear:16"],
    }
    for name, flags in sweeps.items():
        out = outdir / name
        code = cli_main(["sweep", *flags, *common, "--out", str(out)])
        if code != 0:
            sys.exit(code)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="results", type=Path)
    ap.add_argument("--repeats", type=int, default=20)
    ap.add_argument("--quick", action="store_true", help="fast smoke run")
    args = ap.parse_args()
    if args.quick:
        run(args.outdir, repeats=2, gates=120)
    else:
        run(args.outdir, repeats=args.repeats, gates=950)
