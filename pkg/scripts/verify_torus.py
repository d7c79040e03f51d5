"""Check R = M.N and R = N.E in the quantum torus for a few quivers and report timings."""

import argparse
import time

from quivercount.cli import load_quiver
from quivercount.torus import verify_factorizations

DEFAULT = ["jordan:6", "2-loop:3", "a2:4", "kronecker:4"]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("cases", nargs="*", default=DEFAULT, help="quiver:maxdeg, quiver a file or builtin name")
    args = ap.parse_args()
    failed = 0
    for case in args.cases:
        name, d = case.rsplit(":", 1)
        start = time.perf_counter()
        report = verify_factorizations(load_quiver(name), int(d))
        dt = time.perf_counter() - start
        failed += not report.passed
        base = "" if report.base_report is None else f", base quiver {report.base_report.passed}"
        print(f"{name:>10} D={d}: {'pass' if report.passed else 'FAIL'} "
              f"({len(report.checked)} coefficients{base}) {dt:.2f}s")
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
