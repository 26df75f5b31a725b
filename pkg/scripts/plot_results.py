#!/usr/bin/env python3
"""Plot an aggregate CSV produced by `simulate`: one curve per architecture.

Example:
    python scripts/plot_results.py results/fig4.csv --metric rate -o fig4.png
"""

import argparse
import csv
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

METRICS = {
    "rate": ("mean_sum_rate_bpshz", "mean sum rate (bps/Hz)"),
    "ee": ("mean_ee_bpshz_per_watt", "mean energy efficiency (bps/Hz/W)"),
}

LABELS = {
    "dynamic": "dynamic subarray (greedy)",
    "fixed_adjacent": "fixed subarray (adjacent)",
    "fixed_interlaced": "fixed subarray (interlaced)",
    "fully_connected": "fully connected",
    "exhaustive": "dynamic subarray (exhaustive)",
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv_path")
    ap.add_argument("--metric", choices=sorted(METRICS), default="rate")
    ap.add_argument("-o", "--out", default=None,
                    help="output image (default: <csv stem>.png)")
    args = ap.parse_args()

    column, ylabel = METRICS[args.metric]
    curves = defaultdict(list)
    sweep_name = "sweep"
    with open(args.csv_path) as fh:
        for row in csv.DictReader(fh):
            sweep_name = row["sweep_name"]
            curves[row["architecture"]].append(
                (float(row["sweep_value"]), float(row[column])))

    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    for arch, points in curves.items():
        points.sort()
        ax.plot([x for x, _ in points], [y for _, y in points],
                marker="o", label=LABELS.get(arch, arch))
    ax.set_xlabel(sweep_name)
    ax.set_ylabel(ylabel)
    ax.grid(True, ls="--", alpha=0.5)
    ax.legend()
    fig.tight_layout()
    out = args.out or args.csv_path.rsplit(".", 1)[0] + ".png"
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
