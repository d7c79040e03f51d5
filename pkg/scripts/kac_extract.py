"""Fit conservative counts by interpolation and extract s(v, q) and a(v, q)."""

import argparse
import json
import time

from quivercount.cli import load_quiver
from quivercount.conservative import build_count_table
from quivercount.ffrep import DEFAULT_BUDGET
from quivercount.plethystic import a_roundtrip_residual, s_roundtrip_residual, solve_a, solve_s


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--quiver", default="2-loop")
    ap.add_argument("--maxdeg", type=int, default=2)
    ap.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    start = time.perf_counter()
    table = build_count_table(load_quiver(args.quiver), args.maxdeg, budget=args.budget)
    fit_time = time.perf_counter() - start
    s = solve_s(table, args.maxdeg)
    a = solve_a(table, args.maxdeg)
    s_res = s_roundtrip_residual(table, args.maxdeg, {v: r.value for v, r in s.items()})
    a_res = a_roundtrip_residual(table, args.maxdeg, {v: r.value for v, r in a.items()})
    rows = []
    for v in sorted(s, key=lambda v: (sum(v), v)):
        fit = table.fits[v]
        rows.append({"dim": list(v), "c": fit.poly.format("q"), "validated": fit.validated,
                     "s": s[v].value.format("q"), "a": a[v].value.format("q")})
    if args.json:
        print(json.dumps({"rows": rows, "s_residual_zero": s_res.is_zero(), "a_residual_zero": a_res.is_zero()}, indent=2))
        return
    for r in rows:
        print(f"v={tuple(r['dim'])}  c = {r['c']}  (validated: {r['validated']})")
        print(f"    s = {r['s']}")
        print(f"    a = {r['a']}")
    print(f"round trips: s {'ok' if s_res.is_zero() else 'NONZERO'}, a {'ok' if a_res.is_zero() else 'NONZERO'}; "
          f"fitting took {fit_time:.1f}s")


if __name__ == "__main__":
    main()
