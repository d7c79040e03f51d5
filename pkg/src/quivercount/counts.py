"""Closed-form counting polynomials for representations over F_q.

Every entry point taking a quiver with sources or sinks works on its extension
instead, with the caller's dimension vector padded by a trailing zero.
"""

from __future__ import annotations

import enum
from functools import lru_cache
from typing import Iterator, Sequence

from .exact import LaurentPoly
from .quiver import DimVector, Quiver, dot, leq, sub


class CountKind(str, enum.Enum):
    ALL = "all"
    NILPOTENT = "nilpotent"
    MONOMORPHIC = "monomorphic"
    EPIMORPHIC = "epimorphic"


def prepare(q: Quiver, v: Sequence[int]) -> tuple[Quiver, DimVector]:
    """Move ``(q, v)`` to the extended quiver when ``q`` has sources or sinks."""
    v = q.check_dim(v)
    if q.needs_extension():
        return q.extend(), v + (0,)
    return q, v


@lru_cache(maxsize=None)
def _gl1(s: int) -> LaurentPoly:
    out = LaurentPoly.one()
    for i in range(s):
        out = out * LaurentPoly.from_terms({s: 1, i: -1})
    return out


def gl_poly(v: Sequence[int]) -> LaurentPoly:
    """Order of ``prod_i GL(v_i, F_t)`` as a polynomial in ``t``."""
    out = LaurentPoly.one()
    for s in v:
        if s < 0:
            raise ValueError(f"negative entry in {tuple(v)}")
        out = out * _gl1(s)
    return out


def _gl_ratio(a: Sequence[int], b: Sequence[int]) -> LaurentPoly:
    # gl(a) / gl(a - b), polynomial whenever b <= a
    return gl_poly(a).exact_div(gl_poly(sub(a, b)))


def r_poly(q: Quiver, v: Sequence[int]) -> LaurentPoly:
    q, v = prepare(q, v)
    return LaurentPoly.monomial(dot(v, v) - q.euler(v, v))


def m_poly(q: Quiver, v: Sequence[int]) -> LaurentPoly:
    q, v = prepare(q, v)
    out = q.dot_out(v)
    if not leq(v, out):
        return LaurentPoly.zero()
    return _gl_ratio(out, v).shift(q.euler(v, v))


def e_poly(q: Quiver, v: Sequence[int]) -> LaurentPoly:
    q, v = prepare(q, v)
    inn = q.dot_in(v)
    if not leq(v, inn):
        return LaurentPoly.zero()
    return _gl_ratio(inn, v).shift(q.euler(v, v))


def _h(q: Quiver, v: DimVector, w: DimVector) -> LaurentPoly:
    a = q.dot_in(v)
    if not leq(w, a):
        raise ValueError(f"H needs in-sum {a} >= {w}")
    rest = sub(a, w)
    return _gl_ratio(a, w).shift(dot(rest, rest) - dot(a, a))


def h_func(q: Quiver, v: Sequence[int], w: Sequence[int]) -> LaurentPoly:
    """The factor ``H(v, w)`` of the nilpotent tuple sum; a Laurent polynomial."""
    qq, v = prepare(q, v)
    _, w = prepare(q, w)
    return _h(qq, v, w)


def enumerate_tuples(q: Quiver, v: Sequence[int]) -> Iterator[tuple[DimVector, ...]]:
    """Ordered tuples of nonzero vectors summing to ``v`` with ``in-sum(part_k) >= part_{k+1}``.

    ``v`` is taken on ``q`` as given (no extension).
    """
    v = q.check_dim(v)
    n = q.n

    def parts_below(bound: DimVector) -> Iterator[DimVector]:
        # nonzero vectors u with u <= bound componentwise
        def rec(i):
            if i == n:
                yield ()
                return
            for x in range(bound[i] + 1):
                for rest in rec(i + 1):
                    yield (x,) + rest
        for u in rec(0):
            if any(u):
                yield u

    def dfs(remaining: DimVector, cap: DimVector, acc: list):
        if not any(remaining):
            yield tuple(acc)
            return
        bound = tuple(min(a, b) for a, b in zip(remaining, cap))
        for u in parts_below(bound):
            acc.append(u)
            yield from dfs(sub(remaining, u), q.dot_in(u), acc)
            acc.pop()

    yield from dfs(v, v, [])


@lru_cache(maxsize=None)
def _n_poly(q: Quiver, v: DimVector) -> LaurentPoly:
    glv = gl_poly(v)
    zero = (0,) * q.n
    total = LaurentPoly.zero()
    for parts in enumerate_tuples(q, v):
        expo = 0
        for k in range(len(parts)):
            for l in range(k + 1, len(parts)):
                expo -= q.euler(parts[k], parts[l])
        term = LaurentPoly.monomial(expo)
        denom = LaurentPoly.one()
        for k, part in enumerate(parts):
            nxt = parts[k + 1] if k + 1 < len(parts) else zero
            term = term * _h(q, part, nxt)
            denom = denom * gl_poly(part)
        total = total + term * glv.exact_div(denom)
    if not total.is_polynomial():
        raise ArithmeticError(f"nilpotent count at {v} is not a polynomial: {total}")
    return total


def n_poly(q: Quiver, v: Sequence[int]) -> LaurentPoly:
    """Number of nilpotent representations of dimension ``v`` as a polynomial in ``t``."""
    q, v = prepare(q, v)
    return _n_poly(q, v)


_DISPATCH = {
    CountKind.ALL: r_poly,
    CountKind.NILPOTENT: n_poly,
    CountKind.MONOMORPHIC: m_poly,
    CountKind.EPIMORPHIC: e_poly,
}


def count_poly(q: Quiver, v: Sequence[int], kind) -> LaurentPoly:
    return _DISPATCH[CountKind(kind)](q, v)
