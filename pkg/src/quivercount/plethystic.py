"""Truncated power series over Q(q), Adams operations and plethystic Exp/Log.

``CommSeries`` is the commutative ring Q(q)[[X_1..X_n]] truncated at total
degree ``maxdeg``. ``series_exp``/``series_log`` only use the product of the
series they are given, so they also run on ``TorusSeries``; the plethystic
Exp/Log used for extraction are always the commutative ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Mapping, Optional

from .conservative import CountTable
from .counts import gl_poly
from .exact import LaurentPoly, RatFunc
from .quiver import DimVector, Quiver, add, dim_vectors
from .torus import TorusSeries, torus_inverse, _sum

Q = LaurentPoly.monomial(1)


@dataclass(frozen=True)
class CommSeries:
    nvars: int
    maxdeg: int
    coeffs: Mapping[DimVector, RatFunc] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for v, c in self.coeffs.items():
            v = tuple(v)
            if len(v) != self.nvars or any(x < 0 for x in v):
                raise ValueError(f"bad exponent {v} for {self.nvars} variables")
            if sum(v) > self.maxdeg:
                continue
            c = RatFunc.coerce(c)
            if not c.is_zero():
                clean[v] = c
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def one(cls, nvars: int, maxdeg: int) -> "CommSeries":
        return cls(nvars, maxdeg, {(0,) * nvars: RatFunc.one()})

    def like(self, coeffs) -> "CommSeries":
        return CommSeries(self.nvars, self.maxdeg, coeffs)

    def __getitem__(self, v) -> RatFunc:
        return self.coeffs.get(tuple(v), RatFunc.zero())

    def _check(self, other):
        if (self.nvars, self.maxdeg) != (other.nvars, other.maxdeg):
            raise ValueError("series shapes differ")

    def __add__(self, other: "CommSeries") -> "CommSeries":
        self._check(other)
        out = dict(self.coeffs)
        for v, c in other.coeffs.items():
            out[v] = out[v] + c if v in out else c
        return self.like(out)

    def __neg__(self):
        return self.like({v: -c for v, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "CommSeries":
        return self.like({v: x * c for v, x in self.coeffs.items()})

    def __mul__(self, other: "CommSeries") -> "CommSeries":
        self._check(other)
        acc: dict = {}
        for v, x in self.coeffs.items():
            dv = sum(v)
            for w, y in other.coeffs.items():
                if dv + sum(w) <= self.maxdeg:
                    acc.setdefault(add(v, w), []).append(x * y)
        return self.like({u: _sum(ts) for u, ts in acc.items()})

    def __eq__(self, other):
        if not isinstance(other, CommSeries):
            return NotImplemented
        return (self.nvars, self.maxdeg) == (other.nvars, other.maxdeg) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.nvars, self.maxdeg, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def format(self, var: str = "q") -> str:
        if not self.coeffs:
            return "0"
        items = sorted(self.coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        return " + ".join(f"[{c.format(var)}]X^{v}" for v, c in items)


def _one_like(s):
    if isinstance(s, TorusSeries):
        return TorusSeries.identity(s.quiver, s.maxdeg)
    return CommSeries.one(s.nvars, s.maxdeg)


def _rebuild(s, coeffs):
    if isinstance(s, TorusSeries):
        return TorusSeries(s.quiver, s.maxdeg, coeffs)
    return s.like(coeffs)


def _zero_key(s) -> DimVector:
    n = s.quiver.n if isinstance(s, TorusSeries) else s.nvars
    return (0,) * n


def adams(f, k: int):
    """``q -> q^k`` in every coefficient and ``X^v -> X^(k v)``."""
    if k < 1:
        raise ValueError("Adams operations need k >= 1")
    return _rebuild(f, {tuple(k * x for x in v): c.adams(k) for v, c in f.coeffs.items() if k * sum(v) <= f.maxdeg})


def series_exp(f):
    """``sum_k f^k / k!`` for ``f`` without constant term (product of ``f``'s own algebra)."""
    if not f[_zero_key(f)].is_zero():
        raise ValueError("exp needs a series with zero constant term")
    result = _one_like(f)
    term = result
    for k in range(1, f.maxdeg + 1):
        term = (term * f).scale(Fraction(1, k))
        if term.is_zero():
            break
        result = result + term
    return result


def series_log(g):
    """``sum_k (-1)^(k+1) (g-1)^k / k`` for ``g`` with constant term 1."""
    one = _one_like(g)
    if g[_zero_key(g)] != RatFunc.one():
        raise ValueError("log needs a series with constant term 1")
    u = g - one
    result = _rebuild(g, {})
    power = one
    for k in range(1, g.maxdeg + 1):
        power = power * u
        if power.is_zero():
            break
        result = result + power.scale(Fraction((-1) ** (k + 1), k))
    return result


def _mobius(n: int) -> int:
    m, k, out = n, 2, 1
    while k * k <= m:
        if m % k == 0:
            m //= k
            if m % k == 0:
                return 0
            out = -out
        k += 1
    if m > 1:
        out = -out
    return out


def _adams_sum(f, weights: Callable[[int], Fraction]):
    out = _rebuild(f, {})
    for k in range(1, f.maxdeg + 1):
        w = weights(k)
        if w:
            out = out + adams(f, k).scale(w)
    return out


def exp_pleth(f):
    """Plethystic exponential ``exp(sum_k adams(f, k) / k)``; ``f`` has zero constant term.

    Only ``k <= maxdeg`` contribute: ``adams(f, k)`` starts in degree ``k``.
    """
    if not f[_zero_key(f)].is_zero():
        raise ValueError("Exp needs a series with zero constant term")
    return series_exp(_adams_sum(f, lambda k: Fraction(1, k)))


def log_pleth(g):
    """Inverse of ``exp_pleth``: Moebius inversion of the ordinary logarithm."""
    if g[_zero_key(g)] != RatFunc.one():
        raise ValueError("Log needs a series with constant term 1")
    return _adams_sum(series_log(g), lambda k: Fraction(_mobius(k), k))


# -- extraction of s(v, q) and a(v, q) ------------------------------------------


@dataclass
class PolyResult:
    dims: DimVector
    value: RatFunc

    @property
    def is_polynomial(self) -> bool:
        return self.value.is_polynomial()

    @property
    def integer_coeffs(self) -> bool:
        return self.is_polynomial and self.value.num.has_integer_coeffs()

    def poly(self) -> LaurentPoly:
        return self.value.to_laurent()


def conservative_series(table: CountTable, maxdeg: int) -> TorusSeries:
    """``sum_v c(v, q) / gl(v, q) X^v`` in the quantum torus of the table's quiver."""
    if not table.covers(maxdeg):
        raise ValueError(f"count table does not cover total degree {maxdeg}")
    q = table.quiver
    return TorusSeries.from_function(q, maxdeg, lambda v: RatFunc(table[v], gl_poly(v)))


def torus_to_comm(s: TorusSeries) -> CommSeries:
    """Same coefficient table, read in the commutative ring."""
    return CommSeries(s.quiver.n, s.maxdeg, dict(s.coeffs))


def comm_to_torus(f: CommSeries, quiver: Quiver) -> TorusSeries:
    return TorusSeries(quiver, f.maxdeg, dict(f.coeffs))


def solve_s(table: CountTable, maxdeg: int) -> dict[DimVector, PolyResult]:
    """``s(v, q)`` from ``C o Exp(sum s/(1-q) X^v) = 1`` with ``C`` the conservative series.

    ``o`` is the twisted product; ``Exp`` is the commutative plethystic
    exponential of the coefficient table. So the table of ``C^{-1}`` (inverse
    in the torus) is read as a commutative series and its plethystic log taken.
    """
    c = conservative_series(table, maxdeg)
    if maxdeg == 0:
        return {}
    body = log_pleth(torus_to_comm(torus_inverse(c)))
    one_minus_q = RatFunc.coerce(LaurentPoly.one() - Q)
    return {v: PolyResult(v, body[v] * one_minus_q) for v in dim_vectors(c.quiver.n, maxdeg, mindeg=1)}


def s_roundtrip_residual(table: CountTable, maxdeg: int, s_values: Mapping[DimVector, object]) -> TorusSeries:
    """``C o Exp(sum s/(1-q) X^v) - 1``; zero when ``s`` solves the identity."""
    c = conservative_series(table, maxdeg)
    one_minus_q = RatFunc.coerce(LaurentPoly.one() - Q)
    body = CommSeries(c.quiver.n, maxdeg, {v: RatFunc.coerce(x) / one_minus_q for v, x in s_values.items() if any(v)})
    lhs = c * comm_to_torus(exp_pleth(body), c.quiver)
    return lhs - TorusSeries.identity(c.quiver, maxdeg)


def hua_tuples(n: int, maxdeg: int) -> Iterator[tuple[DimVector, ...]]:
    """Tuples ``(v^1..v^r)``, ``r >= 1``, ``v^r != 0``, with ``sum_s s |v^s| <= maxdeg``.

    Interior parts may be zero. ``v^r`` sits at position ``r`` so the degree is
    at least ``r``; hence ``r <= maxdeg`` and the enumeration is finite.
    """
    vecs = {d: list(dim_vectors(n, d, d)) for d in range(maxdeg + 1)}

    def rec(pos: int, budget: int, acc: list):
        # acc holds v^1..v^(pos-1); choose v^pos
        for d in range(0, budget // pos + 1):
            for u in vecs[d]:
                acc.append(u)
                if d > 0:
                    yield tuple(acc)
                rem = budget - pos * d
                if rem >= pos + 1:
                    yield from rec(pos + 1, rem, acc)
                acc.pop()

    yield from rec(1, maxdeg, [])


def build_hua_lhs(table: CountTable, maxdeg: int, max_parts: Optional[int] = None) -> CommSeries:
    """``1 + sum over tuples of prod_s q^(<v^s,v^s> - <b^s,b^s>) c(v^s)/gl(v^s) X^(s v^s)``.

    ``b^s`` is the tail sum ``v^s + v^(s+1) + ...``. ``max_parts`` caps the
    tuple length (default: no cap beyond the degree bound).
    """
    if not table.covers(maxdeg):
        raise ValueError(f"count table does not cover total degree {maxdeg}")
    quiver = table.quiver
    n = quiver.n
    acc: dict[DimVector, list] = {(0,) * n: [RatFunc.one()]}
    for parts in hua_tuples(n, maxdeg):
        if max_parts is not None and len(parts) > max_parts:
            continue
        tail = (0,) * n
        expo = 0
        num = LaurentPoly.one()
        den = LaurentPoly.one()
        mono = (0,) * n
        for s in range(len(parts), 0, -1):
            v = parts[s - 1]
            tail = add(tail, v)
            expo += quiver.euler(v, v) - quiver.euler(tail, tail)
            if any(v):
                num = num * table[v]
                den = den * gl_poly(v)
                mono = add(mono, tuple(s * x for x in v))
        if num.is_zero():
            continue
        acc.setdefault(mono, []).append(RatFunc(num.shift(expo), den))
    return CommSeries(n, maxdeg, {u: _sum(ts) for u, ts in acc.items()})


def solve_a(table: CountTable, maxdeg: int) -> dict[DimVector, PolyResult]:
    """``a(v, q) = (q - 1) [X^v] Log(hua_lhs)``, in the commutative ring."""
    lhs = build_hua_lhs(table, maxdeg)
    body = log_pleth(lhs)
    q_minus_1 = RatFunc.coerce(Q - 1)
    return {v: PolyResult(v, body[v] * q_minus_1) for v in dim_vectors(table.quiver.n, maxdeg, mindeg=1)}


def a_roundtrip_residual(table: CountTable, maxdeg: int, a_values: Mapping[DimVector, object]) -> CommSeries:
    """``hua_lhs - Exp(sum a/(q-1) X^v)``; zero when ``a`` solves the identity."""
    n = table.quiver.n
    q_minus_1 = RatFunc.coerce(Q - 1)
    body = CommSeries(n, maxdeg, {v: RatFunc.coerce(x) / q_minus_1 for v, x in a_values.items() if any(v)})
    return build_hua_lhs(table, maxdeg) - exp_pleth(body)
