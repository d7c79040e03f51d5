"""Exact univariate arithmetic over the rationals.

``LaurentPoly`` is a dense Laurent polynomial with ``Fraction`` (or plain ``int``)
coefficients; ``RatFunc`` is a reduced quotient of two polynomials with a monic
denominator, so that equality is structural.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


class NotDivisibleError(ArithmeticError):
    """Raised by exact division when the divisor does not divide the dividend."""

    def __init__(self, dividend, divisor, remainder):
        self.dividend = dividend
        self.divisor = divisor
        self.remainder = remainder
        super().__init__(f"({dividend}) is not divisible by ({divisor}); remainder {remainder}")


class PoleError(ZeroDivisionError):
    pass


class InterpolationError(ValueError):
    pass


def _norm(c: Number) -> Number:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _strip(coeffs: list) -> tuple[int, int]:
    """Index range [lo, hi) of the nonzero part of ``coeffs``."""
    lo, hi = 0, len(coeffs)
    while lo < hi and not coeffs[lo]:
        lo += 1
    while hi > lo and not coeffs[hi - 1]:
        hi -= 1
    return lo, hi


class LaurentPoly:
    """Immutable Laurent polynomial ``sum_i coeffs[i] * t**(low + i)``.

    The coefficient list never has zero first or last entries, so ``low`` is the
    true lowest exponent. The zero polynomial is ``low == 0, coeffs == ()``.
    """

    __slots__ = ("low", "coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Number] = (), low: int = 0):
        cs = [_norm(Fraction(c)) if not isinstance(c, int) else c for c in coeffs]
        lo, hi = _strip(cs)
        self.coeffs = tuple(cs[lo:hi])
        self.low = low + lo if self.coeffs else 0
        self._hash = None

    @classmethod
    def _raw(cls, low: int, coeffs: list) -> "LaurentPoly":
        lo, hi = _strip(coeffs)
        self = object.__new__(cls)
        self.coeffs = tuple(coeffs[lo:hi])
        self.low = low + lo if self.coeffs else 0
        self._hash = None
        return self

    @classmethod
    def monomial(cls, exponent: int, coeff: Number = 1) -> "LaurentPoly":
        return cls._raw(exponent, [_norm(coeff)])

    @classmethod
    def from_terms(cls, terms: dict[int, Number]) -> "LaurentPoly":
        if not terms:
            return cls.zero()
        lo, hi = min(terms), max(terms)
        cs = [0] * (hi - lo + 1)
        for e, c in terms.items():
            cs[e - lo] += c
        return cls._raw(lo, [_norm(Fraction(c)) if not isinstance(c, int) else c for c in cs])

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls._raw(0, [])

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls._raw(0, [1])

    # -- structure ----------------------------------------------------------

    @property
    def high(self) -> int:
        """Highest exponent; ``-1`` for the zero polynomial."""
        return self.low + len(self.coeffs) - 1

    degree = high

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_polynomial(self) -> bool:
        return self.low >= 0

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def leading(self) -> Number:
        return self.coeffs[-1]

    def terms(self) -> dict[int, Number]:
        return {self.low + i: c for i, c in enumerate(self.coeffs) if c}

    def coeff(self, e: int) -> Number:
        i = e - self.low
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def has_integer_coeffs(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``t**k``."""
        if not self.coeffs:
            return self
        return LaurentPoly._raw(self.low + k, list(self.coeffs))

    # -- ring operations ----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.low == other.low and self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            return self == LaurentPoly.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.low, self.coeffs))
        return self._hash

    @staticmethod
    def constant(c: Number) -> "LaurentPoly":
        return LaurentPoly._raw(0, [_norm(Fraction(c))])

    @staticmethod
    def _coerce(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return LaurentPoly.constant(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    def __add__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        b = LaurentPoly._coerce(other)
        a = self
        if not a.coeffs:
            return b
        if not b.coeffs:
            return a
        lo = min(a.low, b.low)
        hi = max(a.high, b.high)
        cs = [0] * (hi - lo + 1)
        off = a.low - lo
        for i, c in enumerate(a.coeffs):
            cs[off + i] = c
        off = b.low - lo
        for i, c in enumerate(b.coeffs):
            cs[off + i] += c
        return LaurentPoly._raw(lo, [_norm(c) for c in cs])

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.low, [-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        return self + (-LaurentPoly._coerce(other))

    def __rsub__(self, other):
        return LaurentPoly._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly.zero()
            return LaurentPoly._raw(self.low, [_norm(c * other) for c in self.coeffs])
        b = LaurentPoly._coerce(other)
        a = self
        if not a.coeffs or not b.coeffs:
            return LaurentPoly.zero()
        if len(b.coeffs) == 1:
            c0 = b.coeffs[0]
            return LaurentPoly._raw(a.low + b.low, [_norm(c * c0) for c in a.coeffs])
        if len(a.coeffs) == 1:
            c0 = a.coeffs[0]
            return LaurentPoly._raw(a.low + b.low, [_norm(c * c0) for c in b.coeffs])
        cs = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
        bc = b.coeffs
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(bc):
                    cs[i + j] += x * y
        return LaurentPoly._raw(a.low + b.low, [_norm(c) for c in cs])

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if self.is_monomial():
                return LaurentPoly.monomial(self.low * k, Fraction(1) / self.coeffs[0] ** (-k))
            raise ValueError("negative power of a non-monomial Laurent polynomial")
        result = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod_poly(self, other: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        """Euclidean division in Q[t]; both operands must be polynomials."""
        if not other.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        if self.low < 0 or other.low < 0:
            raise ValueError("divmod_poly needs ordinary polynomials")
        num = [0] * self.low + list(self.coeffs)
        den = [0] * other.low + list(other.coeffs)
        q, r = _poly_divmod(num, den)
        return LaurentPoly._raw(0, q), LaurentPoly._raw(0, r)

    def exact_div(self, other) -> "LaurentPoly":
        """Exact division in the Laurent ring; raises ``NotDivisibleError`` otherwise."""
        b = LaurentPoly._coerce(other)
        if not b.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        if not self.coeffs:
            return self
        # the lowest coefficients are nonzero, so divisibility reduces to Q[t]
        q, r = _poly_divmod(list(self.coeffs), list(b.coeffs))
        if any(r):
            rem = LaurentPoly._raw(self.low, r)
            raise NotDivisibleError(self, b, rem)
        return LaurentPoly._raw(self.low - b.low, q)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        return RatFunc(self) / other

    def __rtruediv__(self, other):
        return RatFunc(LaurentPoly._coerce(other)) / RatFunc(self)

    # -- evaluation and substitution ---------------------------------------

    def __call__(self, x) -> Number:
        return eval_at(self, x)

    def adams(self, k: int) -> "LaurentPoly":
        """Substitute ``t -> t**k``."""
        if k < 1:
            raise ValueError("Adams operations need k >= 1")
        if k == 1 or not self.coeffs:
            return self
        cs = [0] * ((len(self.coeffs) - 1) * k + 1)
        for i, c in enumerate(self.coeffs):
            cs[i * k] = c
        return LaurentPoly._raw(self.low * k, cs)

    def substitute_inverse(self) -> "LaurentPoly":
        """Substitute ``t -> 1/t``."""
        return LaurentPoly._raw(-self.high, list(reversed(self.coeffs)))

    # -- output -------------------------------------------------------------

    def to_json(self, var: str = "t") -> dict:
        return {"var": var, "terms": [[e, _frac_str(c)] for e, c in sorted(self.terms().items())]}

    @classmethod
    def from_json(cls, data: dict) -> "LaurentPoly":
        return cls.from_terms({int(e): Fraction(c) for e, c in data["terms"]})

    def format(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(self.high, self.low - 1, -1):
            c = self.coeff(e)
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = _frac_str(a)
            else:
                mono = var if e == 1 else f"{var}^{e}"
                body = mono if a == 1 else f"{_frac_str(a)}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"LaurentPoly({self.format()!r})"


def _frac_str(c: Number) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _poly_divmod(num: list, den: list) -> tuple[list, list]:
    """Dense division of coefficient lists (low to high)."""
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    if len(num) - 1 < dn:
        return [], num
    q = [0] * (len(num) - dn)
    unit = lead == 1
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if not c:
            continue
        c = c if unit else _norm(Fraction(c) / lead)
        q[i - dn] = c
        base = i - dn
        for j in range(dn + 1):
            num[base + j] -= c * den[j]
    return [_norm(c) for c in q], [_norm(c) for c in num[:dn]]


def _monic(cs: list) -> list:
    lead = cs[-1]
    if lead == 1:
        return cs
    return [_norm(Fraction(c) / lead) for c in cs]


def _poly_gcd(a: list, b: list) -> list:
    """Monic gcd of two coefficient lists (low to high, stripped)."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return _monic(a) if a else []
    a = _monic(a)
    b = _monic(b)
    while b:
        _, r = _poly_divmod(a, b)
        hi = len(r)
        while hi and not r[hi - 1]:
            hi -= 1
        r = r[:hi]
        a, b = b, (_monic(r) if r else [])
    return a


class RatFunc:
    """Reduced rational function ``num / den`` in one variable.

    ``num`` and ``den`` are ordinary polynomials (non-negative exponents),
    coprime, with ``den`` monic.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1, *, _reduced: bool = False):
        n = LaurentPoly._coerce(num) if not isinstance(num, LaurentPoly) else num
        d = LaurentPoly._coerce(den) if not isinstance(den, LaurentPoly) else den
        self._hash = None
        if _reduced:
            self.num, self.den = n, d
            return
        if d.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if n.is_zero():
            self.num, self.den = n, LaurentPoly.one()
            return
        # clear the powers of t so both are coprime to t-shifts
        shift = n.low - d.low
        nc, dc = list(n.coeffs), list(d.coeffs)
        if len(dc) > 1 and len(nc) > 0:
            g = _poly_gcd(nc, dc)
            if len(g) > 1:
                nc, r = _poly_divmod(nc, g)
                dc, r2 = _poly_divmod(dc, g)
        lead = dc[-1]
        if lead != 1:
            inv = Fraction(1) / lead
            nc = [_norm(c * inv) for c in nc]
            dc = [_norm(c * inv) for c in dc]
        if shift >= 0:
            self.num = LaurentPoly._raw(shift, nc)
            self.den = LaurentPoly._raw(0, dc)
        else:
            self.num = LaurentPoly._raw(0, nc)
            self.den = LaurentPoly._raw(-shift, dc)

    @classmethod
    def coerce(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, LaurentPoly):
            if x.low >= 0:
                return cls(x, LaurentPoly.one(), _reduced=True)
            return cls(x.shift(-x.low), LaurentPoly.monomial(-x.low), _reduced=True)
        if isinstance(x, (int, Fraction)):
            return cls(LaurentPoly.constant(x), LaurentPoly.one(), _reduced=True)
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFunc")

    @classmethod
    def zero(cls) -> "RatFunc":
        return cls.coerce(0)

    @classmethod
    def one(cls) -> "RatFunc":
        return cls.coerce(1)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        """True when the denominator is a monomial."""
        return self.den.is_monomial()

    def to_laurent(self) -> LaurentPoly:
        if not self.den.is_monomial():
            raise NotDivisibleError(self.num, self.den, self.num)
        return self.num.shift(-self.den.low)

    def is_polynomial(self) -> bool:
        return self.den == LaurentPoly.one()

    def __eq__(self, other):
        if isinstance(other, (LaurentPoly, int, Fraction)):
            other = RatFunc.coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __add__(self, other):
        b = RatFunc.coerce(other)
        a = self
        if a.num.is_zero():
            return b
        if b.num.is_zero():
            return a
        if a.den == b.den:
            return RatFunc(a.num + b.num, a.den)
        if b.den.is_monomial() and b.den.coeffs[0] == 1 and a.den.is_monomial():
            # both Laurent: stay Laurent
            return RatFunc.coerce(a.to_laurent() + b.to_laurent())
        return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other):
        return RatFunc.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return RatFunc.zero()
            return RatFunc(self.num * other, self.den, _reduced=True)
        b = RatFunc.coerce(other)
        a = self
        if a.num.is_zero() or b.num.is_zero():
            return RatFunc.zero()
        if a.den.is_monomial() and b.den.is_monomial():
            return RatFunc.coerce(a.to_laurent() * b.to_laurent())
        return RatFunc(a.num * b.num, a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        return self * RatFunc.coerce(other).inverse()

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, _reduced=True)

    def __call__(self, x) -> Number:
        return eval_at(self, x)

    def adams(self, k: int) -> "RatFunc":
        # t -> t^k keeps coprimality and monicity
        return RatFunc(self.num.adams(k), self.den.adams(k), _reduced=True)

    def format(self, var: str = "t") -> str:
        if self.den == LaurentPoly.one():
            return self.num.format(var)
        n = self.num.format(var)
        d = self.den.format(var)
        if len(self.num.coeffs) > 1:
            n = f"({n})"
        if len(self.den.coeffs) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    def to_json(self, var: str = "t") -> dict:
        return {"num": self.num.to_json(var), "den": self.den.to_json(var)}

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"RatFunc({self.format()!r})"


def eval_at(f, x) -> Number:
    """Evaluate a ``LaurentPoly`` or ``RatFunc`` exactly at the rational ``x``."""
    x = _norm(Fraction(x))
    if isinstance(f, RatFunc):
        d = eval_at(f.den, x)
        if d == 0:
            raise PoleError(f"{f} has a pole at {x}")
        return _norm(Fraction(eval_at(f.num, x)) / d)
    if not isinstance(f, LaurentPoly):
        return _norm(Fraction(f))
    if not f.coeffs:
        return 0
    acc = 0
    for c in reversed(f.coeffs):
        acc = acc * x + c
    if f.low > 0:
        acc *= x ** f.low
    elif f.low < 0:
        if x == 0:
            raise PoleError(f"{f} has negative exponents; cannot evaluate at 0")
        acc = Fraction(acc) / Fraction(x) ** (-f.low)
    return _norm(acc)


def adams_subst(f, k: int):
    """``t -> t**k`` on a ``LaurentPoly`` or ``RatFunc``."""
    return f.adams(k)


T = LaurentPoly.monomial(1)


def lagrange_interpolate(points: Sequence[tuple[Number, Number]], degree_bound: int) -> LaurentPoly:
    """Polynomial of degree <= ``degree_bound`` through ``points``.

    The first ``degree_bound + 1`` points determine the polynomial; any further
    points must lie on it, otherwise ``InterpolationError`` is raised.
    """
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise InterpolationError("duplicate x values")
    need = degree_bound + 1
    if len(pts) < need:
        raise InterpolationError(f"need {need} points for degree <= {degree_bound}, got {len(pts)}")
    base, extra = pts[:need], pts[need:]
    # Newton divided differences
    coef = [y for _, y in base]
    for j in range(1, need):
        for i in range(need - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (base[i][0] - base[i - j][0])
    poly = LaurentPoly.constant(coef[-1])
    for i in range(need - 2, -1, -1):
        poly = poly * LaurentPoly([-base[i][0], 1]) + coef[i]
    for x, y in extra:
        if eval_at(poly, x) != y:
            raise InterpolationError(f"point ({x}, {y}) inconsistent with degree bound {degree_bound}")
    return poly
