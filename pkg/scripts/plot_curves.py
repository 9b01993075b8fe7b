#!/usr/bin/env python3
"""Render one or more curve.csv files to PNG with matplotlib.

The CLI already writes a gnuplot script next to each CSV; this is the
matplotlib alternative for environments without gnuplot.
"""

import argparse
import csv
import sys
from pathlib import Path


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv_files", nargs="+", help="curve.csv paths")
    args = ap.parse_args()

    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    for name in args.csv_files:
        path = Path(name)
        with path.open() as fh:
            rows = list(csv.DictReader(fh))
        x = [float(r["sweep_value"]) for r in rows]
        tp = [float(r["T_plus"]) for r in rows]
        tm = [float(r["T_minus"]) for r in rows]
        fig, ax = plt.subplots(figsize=(5, 3.5))
        ax.plot(x, tp, "r-", lw=1.5, label="T(+k)")
        ax.plot(x, tm, "b--", lw=1.5, label="T(-k)")
        ax.set_xlabel("sweep value")
        ax.set_ylabel("T")
        ax.set_ylim(-0.05, 1.05)
        ax.legend()
        fig.tight_layout()
        png = path.with_suffix(".png")
        fig.savefig(png, dpi=150)
        plt.close(fig)
        print(f"wrote {png}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
