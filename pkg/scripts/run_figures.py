#!/usr/bin/env python3
"""Run every shipped scenario preset and collect the outputs.

Each preset lands in <out>/<name>/ with curve.csv, summary.txt and
plot.gp; pass --cross-check to also verify every propagating sample
against the mode-matching solver (slower).
"""

import argparse
import sys
from pathlib import Path

from mobius_transport import preset_names
from mobius_transport.cli import main as cli_main


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="out/figures", help="output root directory")
    ap.add_argument("--cross-check", action="store_true")
    args = ap.parse_args()

    failures = []
    for name in preset_names():
        argv = ["--preset", name, "--out", str(Path(args.out) / name)]
        if args.cross_check:
            argv.append("--cross-check")
        code = cli_main(argv)
        status = "ok" if code == 0 else f"exit {code}"
        print(f"{name:<12} {status}")
        if code != 0:
            failures.append(name)
    if failures:
        print(f"failed: {', '.join(failures)}", file=sys.stderr)
        return 1
    print(f"all presets written under {args.out}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
