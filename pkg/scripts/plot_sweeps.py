#!/usr/bin/env python3
"""Plot the sweep CSVs produced by run_sweeps.py (one PNG per CSV)."""

import argparse
from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def plot_csv(path: Path, outdir: Path) -> None:
    df = pd.read_csv(path)
    fig, ax = plt.subplots(figsize=(6, 4))
    grouped = defaultdict(list)
    for strategy, sub in df.groupby("strategy"):
        agg = sub.groupby("value", sort=False)["makespan_us"].mean()
        grouped[strategy] = agg
        ax.plot(range(len(agg)), agg.values, marker="o", label=strategy)
        ax.set_xticks(range(len(agg)))
        ax.set_xticklabels([str(v) for v in agg.index], rotation=20)
    ax.set_xlabel(df["axis"].iloc[0])
    ax.set_ylabel("mean makespan (us)")
    ax.legend()
    fig.tight_layout()
    out = outdir / (path.stem + ".png")
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--indir", default="results", type=Path)
    args = ap.parse_args()
    for csv_path in sorted(args.indir.glob("*.csv")):
        plot_csv(csv_path, args.indir)
