#!/usr/bin/env python3
"""Plot a trajectory CSV written by `hartree evolve|blowup|concentrate`.

Usage: plot_trajectory.py RUN_DIR [--out FIGURE.png]

Panels: H(t) on a log scale, Gamma(t), M and E drift, and any concentration
columns. Requires matplotlib; the CSV itself has no plotting dependency.
"""
import argparse
import csv
import json
import pathlib
import sys


def read_csv(path):
    with open(path, newline="") as f:
        rows = list(csv.DictReader(f))
    return {key: [float(r[key]) for r in rows] for key in rows[0]} if rows else {}


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("run_dir", type=pathlib.Path)
    parser.add_argument("--out", type=pathlib.Path, default=None)
    args = parser.parse_args()

    data = read_csv(args.run_dir / "trajectory.csv")
    if not data:
        sys.exit("trajectory.csv has no rows")
    sidecar = args.run_dir / "trajectory.json"
    meta = json.loads(sidecar.read_text()) if sidecar.exists() else {}

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        sys.exit("matplotlib is not installed")

    t = data["t"]
    conc = [k for k in data if k.startswith("conc@")]
    fig, axes = plt.subplots(2, 2, figsize=(10, 7))
    axes[0, 0].semilogy(t, data["H"])
    axes[0, 0].set_title("H(t)")
    axes[0, 1].plot(t, data["Gamma"])
    axes[0, 1].set_title("Gamma(t)")
    m0, e0 = data["M"][0], data["E"][0]
    axes[1, 0].plot(t, [m / m0 - 1 for m in data["M"]], label="M/M0 - 1")
    axes[1, 0].plot(t, [e / e0 - 1 for e in data["E"]], label="E/E0 - 1")
    axes[1, 0].legend()
    axes[1, 0].set_title("relative drift")
    for k in conc:
        axes[1, 1].plot(t, data[k], label=k)
    if conc:
        axes[1, 1].legend()
    axes[1, 1].set_title("concentration")
    for ax in axes.flat:
        ax.set_xlabel("t")
    title = ", ".join(f"{k}={meta[k]}" for k in ("d", "a", "n", "dt", "stop_reason") if k in meta)
    fig.suptitle(title)
    fig.tight_layout()
    out = args.out or args.run_dir / "trajectory.png"
    fig.savefig(out, dpi=120)
    print(out)


if __name__ == "__main__":
    main()
