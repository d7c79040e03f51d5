"""Print r, n, m, e for the m-loop quiver and check them by enumeration over small F_p."""

import argparse

from quivercount.counts import CountKind, count_poly
from quivercount.exact import eval_at
from quivercount.ffrep import enumerate_and_classify
from quivercount.quiver import Quiver

KINDS = [CountKind.ALL, CountKind.NILPOTENT, CountKind.MONOMORPHIC, CountKind.EPIMORPHIC]
LETTER = dict(zip(KINDS, "rnme"))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--loops", type=int, default=2)
    ap.add_argument("--maxdim", type=int, default=3)
    ap.add_argument("--check-primes", default="2,3", help="CSV; enumeration is skipped above 2^20 reps")
    args = ap.parse_args()
    q = Quiver.loops(args.loops)
    primes = [int(p) for p in args.check_primes.split(",") if p]
    for d in range(1, args.maxdim + 1):
        polys = {k: count_poly(q, (d,), k) for k in KINDS}
        for k, f in polys.items():
            print(f"{LETTER[k]}({d}) = {f.format('q')}")
        for p in primes:
            if p ** q.rep_dim((d,)) > 2**20:
                print(f"  q={p}: skipped")
                continue
            c = enumerate_and_classify(q, (d,), p)
            got = [c.total, c.nilpotent, c.monomorphic, c.epimorphic]
            ok = all(eval_at(polys[k], p) == g for k, g in zip(KINDS, got))
            print(f"  q={p}: counts {got} {'match' if ok else 'MISMATCH'}")


if __name__ == "__main__":
    main()
