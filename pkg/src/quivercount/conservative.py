"""Conservative counting polynomials recovered from exact counts at primes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import fp
from .counts import prepare
from .exact import LaurentPoly, eval_at, lagrange_interpolate
from .ffrep import DEFAULT_BUDGET, BudgetExceeded, count_conservative
from .quiver import DimVector, Quiver, dim_vectors


class InsufficientPrimes(ValueError):
    pass


def degree_bound(q: Quiver, v: Sequence[int]) -> int:
    """``v.v - <v,v>``: the dimension of the representation space."""
    q, v = prepare(q, v)
    return q.rep_dim(v)


@dataclass
class ConservativeFit:
    dims: DimVector
    points: list[tuple[int, int]]
    poly: LaurentPoly
    # None when no held-out prime was affordable
    validated: Optional[bool]
    skipped_primes: list[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "dim": list(self.dims),
            "points": [[p, c] for p, c in self.points],
            "poly": self.poly.to_json("q"),
            "poly_str": self.poly.format("q"),
            "validated": self.validated,
            "skipped_primes": self.skipped_primes,
        }


def conservative_fit(
    q: Quiver,
    v: Sequence[int],
    primes: Optional[Sequence[int]] = None,
    budget: int = DEFAULT_BUDGET,
    validate: bool = True,
) -> ConservativeFit:
    """Interpolate ``c(v, q)`` through exact counts at ``degree_bound + 1`` primes.

    Extra primes (given explicitly, or one held-out prime by default) check the
    fit; a mismatch sets ``validated=False`` rather than raising, since
    polynomiality is an assumption here.
    """
    qq, vv = prepare(q, v)
    v = q.check_dim(v)
    bound = qq.rep_dim(vv)
    need = bound + 1
    if primes is None:
        primes = fp.primes(need + (1 if validate else 0))
    primes = list(primes)
    if len(set(primes)) != len(primes) or not all(fp.is_prime(p) for p in primes):
        raise ValueError(f"primes must be distinct primes: {primes}")
    if len(primes) < need:
        raise InsufficientPrimes(f"c{v} needs {need} primes (degree bound {bound}), got {len(primes)}")
    points = [(p, count_conservative(qq, vv, p, budget)) for p in primes[:need]]
    poly = lagrange_interpolate(points, bound)
    validated = None
    skipped = []
    for p in primes[need:]:
        try:
            c = count_conservative(qq, vv, p, budget)
        except BudgetExceeded:
            skipped.append(p)
            continue
        points.append((p, c))
        ok = eval_at(poly, p) == c
        validated = ok if validated is None else (validated and ok)
    return ConservativeFit(v, points, poly, validated, skipped)


def conservative_poly(q: Quiver, v: Sequence[int], primes: Optional[Sequence[int]] = None,
                      budget: int = DEFAULT_BUDGET) -> LaurentPoly:
    return conservative_fit(q, v, primes, budget).poly


@dataclass
class CountTable:
    quiver: Quiver
    maxdeg: int
    fits: dict[DimVector, ConservativeFit]

    def __getitem__(self, v) -> LaurentPoly:
        return self.fits[tuple(v)].poly

    def covers(self, maxdeg: int) -> bool:
        return all(v in self.fits for v in dim_vectors(self.quiver.n, maxdeg))

    def to_json(self) -> dict:
        return {",".join(map(str, v)): f.to_json() for v, f in sorted(self.fits.items())}


def build_count_table(q: Quiver, maxdeg: int, budget: int = DEFAULT_BUDGET, validate: bool = True) -> CountTable:
    """Fit ``c(v, q)`` for every ``v`` of total degree ``<= maxdeg`` (on the extension if needed)."""
    qq = q.extend()
    fits = {}
    for v in dim_vectors(qq.n, maxdeg):
        fits[v] = conservative_fit(qq, v, budget=budget, validate=validate)
    return CountTable(qq, maxdeg, fits)
