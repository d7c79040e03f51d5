"""Command line entry point: ``quivercount {counts,verify,enumerate,kac}``.

Output is JSON (stdout, or ``--out``); ``--table`` prints a plain-text table
instead. Exit status: 0 when every requested check passed, 1 when a check
failed, 2 on bad input or an exhausted enumeration budget.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import fp
from .conservative import InsufficientPrimes, build_count_table
from .counts import CountKind, count_poly, prepare
from .exact import eval_at
from .ffrep import DEFAULT_BUDGET, BudgetExceeded, enumerate_and_classify, iter_reps, verify_unique_factorization
from .plethystic import a_roundtrip_residual, s_roundtrip_residual, solve_a, solve_s
from .quiver import Quiver, QuiverParseError, dim_vectors
from .torus import verify_factorizations

BUILTIN = {
    "jordan": Quiver.jordan,
    "2-loop": lambda: Quiver.loops(2),
    "a2": Quiver.a2,
    "kronecker": Quiver.kronecker,
}

KINDS = [CountKind.ALL, CountKind.NILPOTENT, CountKind.MONOMORPHIC, CountKind.EPIMORPHIC]


@dataclass
class RunConfig:
    command: str
    quiver: Quiver
    dims: list[tuple[int, ...]] = field(default_factory=list)
    maxdeg: Optional[int] = None
    primes: list[int] = field(default_factory=list)
    budget: int = DEFAULT_BUDGET
    lemmas: bool = False
    out: Optional[Path] = None
    table: bool = False

    def require(self, *names):
        missing = [n for n in names if not getattr(self, n)]
        if missing:
            raise ValueError(f"'{self.command}' needs --{' --'.join(missing)}")


def load_quiver(spec: str) -> Quiver:
    path = Path(spec)
    if path.exists():
        return Quiver.load(path)
    if spec in BUILTIN:
        return BUILTIN[spec]()
    raise ValueError(f"no quiver file {spec!r} (builtins: {', '.join(BUILTIN)})")


def _csv_ints(text: str) -> list[int]:
    return [int(x) for x in text.replace(" ", "").split(",") if x]


def _dims_for(cfg: RunConfig) -> list[tuple[int, ...]]:
    if cfg.dims:
        return [cfg.quiver.check_dim(v) for v in cfg.dims]
    if cfg.maxdeg is not None:
        return list(dim_vectors(cfg.quiver.n, cfg.maxdeg))
    raise ValueError(f"'{cfg.command}' needs --dim or --maxdeg")


def cmd_counts(cfg: RunConfig) -> tuple[dict, bool]:
    rows = []
    for v in _dims_for(cfg):
        row = {"dim": list(v)}
        for kind in KINDS:
            poly = count_poly(cfg.quiver, v, kind)
            row[kind.value] = poly.to_json("q")
            row[kind.value + "_str"] = poly.format("q")
        rows.append(row)
    return {"command": "counts", "quiver": cfg.quiver.to_text(), "results": rows}, True


def cmd_verify(cfg: RunConfig) -> tuple[dict, bool]:
    if cfg.maxdeg is None:
        raise ValueError("'verify' needs --maxdeg")
    report = verify_factorizations(cfg.quiver, cfg.maxdeg)
    return {"command": "verify", **report.to_json()}, report.passed


def cmd_enumerate(cfg: RunConfig) -> tuple[dict, bool]:
    cfg.require("primes")
    rows = []
    ok = True
    for v in _dims_for(cfg):
        qq, vv = prepare(cfg.quiver, v)
        for p in cfg.primes:
            counts = enumerate_and_classify(qq, vv, p, cfg.budget)
            row = counts.to_json()
            row["dim"] = list(v)
            expected = {k.value: eval_at(count_poly(cfg.quiver, v, k), p) for k in KINDS}
            got = {"all": counts.total, "nilpotent": counts.nilpotent,
                   "monomorphic": counts.monomorphic, "epimorphic": counts.epimorphic}
            row["matches_closed_form"] = all(expected[k] == got[k] for k in got)
            ok &= row["matches_closed_form"]
            if cfg.lemmas:
                checked = passed = 0
                for rep in iter_reps(qq, vv, p, cfg.budget):
                    checked += 1
                    passed += verify_unique_factorization(rep).ok
                row["lemmas"] = {"checked": checked, "passed": passed}
                ok &= checked == passed
            rows.append(row)
    rows.sort(key=lambda r: (r["dim"], r["q"]))
    return {"command": "enumerate", "quiver": cfg.quiver.to_text(), "results": rows}, ok


def cmd_kac(cfg: RunConfig) -> tuple[dict, bool]:
    if cfg.maxdeg is None:
        raise ValueError("'kac' needs --maxdeg")
    d = cfg.maxdeg
    table = build_count_table(cfg.quiver, d, budget=cfg.budget)
    s_vals = solve_s(table, d)
    a_vals = solve_a(table, d)
    s_ok = s_roundtrip_residual(table, d, {v: r.value for v, r in s_vals.items()}).is_zero() if d else True
    a_ok = a_roundtrip_residual(table, d, {v: r.value for v, r in a_vals.items()}).is_zero() if d else True
    rows = []
    for v, fit in sorted(table.fits.items(), key=lambda kv: (sum(kv[0]), kv[0])):
        row = {"dim": list(v), "c": fit.poly.to_json("q"), "c_str": fit.poly.format("q"), "validated": fit.validated}
        if any(v):
            s, a = s_vals[v], a_vals[v]
            row["s"] = s.value.to_json("q") if not s.is_polynomial else s.poly().to_json("q")
            row["a"] = a.value.to_json("q") if not a.is_polynomial else a.poly().to_json("q")
            row["s_str"] = s.value.format("q")
            row["a_str"] = a.value.format("q")
            row["integer_coeffs"] = s.integer_coeffs and a.integer_coeffs
        row["roundtrip_residual_zero"] = s_ok and a_ok
        rows.append(row)
    ok = s_ok and a_ok and all(f.validated is not False for f in table.fits.values())
    return {"command": "kac", "quiver": table.quiver.to_text(), "maxdeg": d, "results": rows}, ok


COMMANDS = {"counts": cmd_counts, "verify": cmd_verify, "enumerate": cmd_enumerate, "kac": cmd_kac}


def _table(payload: dict) -> str:
    cmd = payload["command"]
    lines = []
    if cmd == "verify":
        lines.append(f"pass: {payload['pass']}")
        for v, r in payload["residual_mono_nil"].items():
            lines.append(f"  ({v})  R-M.N: {r}   R-N.E: {payload['residual_nil_epi'][v]}")
        if "base" in payload:
            lines.append(f"  restricted to original quiver: {payload['base']['pass']}")
        return "\n".join(lines)
    for row in payload["results"]:
        keys = [k for k in row if k.endswith("_str")] or [k for k in row if k not in ("dim", "q")]
        head = f"dim={tuple(row['dim'])}" + (f" q={row['q']}" if "q" in row else "")
        body = "  ".join(f"{k.removesuffix('_str')}={row[k]}" for k in keys)
        lines.append(f"{head}  {body}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quivercount", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--quiver", required=True, help="quiver file, or one of: " + ", ".join(BUILTIN))
    ap.add_argument("--dim", action="append", default=[], help="dimension vector as CSV; repeatable")
    ap.add_argument("--maxdeg", type=int)
    ap.add_argument("--primes", default="", help="CSV list of primes")
    ap.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    ap.add_argument("--lemmas", action="store_true", help="run the per-representation subrep checks too")
    ap.add_argument("--out", type=Path)
    ap.add_argument("--table", action="store_true", help="human-readable table instead of JSON")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            quiver=load_quiver(args.quiver),
            dims=[tuple(_csv_ints(d)) for d in args.dim],
            maxdeg=args.maxdeg,
            primes=_csv_ints(args.primes),
            budget=args.budget,
            lemmas=args.lemmas,
            out=args.out,
            table=args.table,
        )
        bad = [p for p in cfg.primes if not fp.is_prime(p)]
        if bad:
            raise ValueError(f"not prime: {bad}")
        payload, ok = COMMANDS[cfg.command](cfg)
    except (QuiverParseError, ValueError, BudgetExceeded, InsufficientPrimes) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = _table(payload) if cfg.table else json.dumps(payload, indent=2)
    if cfg.out:
        cfg.out.write_text(text + "\n")
    else:
        print(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
