"""Write every figure preset to ``<outdir>/<name>.csv`` (or .json)."""
import argparse
import sys
import time
from pathlib import Path

from magnonics.cli import main
from magnonics.sweep import FIGURES


def run(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", type=Path)
    ap.add_argument("--format", choices=("csv", "json"), default="csv")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--count", type=int, help="override grid resolution for a quick pass")
    ap.add_argument("--only", nargs="*", choices=FIGURES, default=list(FIGURES))
    args = ap.parse_args(argv)
    args.outdir.mkdir(parents=True, exist_ok=True)
    for name in args.only:
        target = args.outdir / f"{name}.{args.format}"
        cmd = ["figure", name, "--format", args.format, "--threads", str(args.threads), "--out", str(target)]
        if args.count:
            cmd += ["--count", str(args.count)]
        t0 = time.perf_counter()
        code = main(cmd)
        if code not in (0, 2):
            return code
        print(f"{name:6s} -> {target}  ({time.perf_counter() - t0:.1f} s)")
    return 0


if __name__ == "__main__":
    sys.exit(run())
