"""Exact scalars: rationals (``fractions.Fraction``) and elements of one real
quadratic field Q(sqrt(D)).

A :class:`QuadraticNumber` stores ``(p + q*sqrt(D)) / r`` with integer
``p, q``, positive ``r``, ``gcd(p, q, r) == 1`` and square-free ``D > 1``.
Arithmetic whose result has ``q == 0`` returns a plain ``Fraction``, so the
rest of the package can treat "rational" and "irrational" scalars
generically.  Nothing in here touches floating point except ``__float__``
and :func:`to_decimal`, which exist for display.
"""
from __future__ import annotations

import decimal
import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import InvalidInput, MixedRadicand

__all__ = [
    "QuadraticNumber",
    "Scalar",
    "as_scalar",
    "sign",
    "compare",
    "conjugate",
    "radicand",
    "is_rational",
    "sqrt",
    "field_sqrt",
    "to_decimal",
    "format_scalar",
    "parse_scalar",
    "scalar_to_json",
    "scalar_from_json",
]


_TRIAL = 1000


@lru_cache(maxsize=4096)
def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return ``(s, d)`` with ``n == s*s*d`` and ``d`` square-free (n > 0)."""
    if n <= 0:
        raise InvalidInput(f"radicand must be positive, got {n}")
    s, d, m = 1, 1, n
    f = 2
    while f < _TRIAL and f * f <= m:
        e = 0
        while m % f == 0:
            m //= f
            e += 1
        if e:
            s *= f ** (e // 2)
            if e % 2:
                d *= f
        f += 1 if f == 2 else 2
    if m == 1:
        return s, d
    r = math.isqrt(m)
    if r * r == m:
        return s * r, d
    if m < _TRIAL ** 3:
        # at most two prime factors above the trial bound and not a square
        return s, d * m
    from sympy import factorint

    for prime, e in factorint(m).items():
        s *= prime ** (e // 2)
        if e % 2:
            d *= prime
    return s, d


def _sign_pq(p: int, q: int, D: int) -> int:
    """Exact sign of p + q*sqrt(D)."""
    if p >= 0 and q >= 0:
        return 1 if (p or q) else 0
    if p <= 0 and q <= 0:
        return -1
    # opposite signs: the larger square wins
    pp, qq = p * p, q * q * D
    if pp > qq:
        return 1 if p > 0 else -1
    if pp < qq:
        return 1 if q > 0 else -1
    return 0


def _make(p: int, q: int, r: int, D: int):
    """Canonical result of an arithmetic step (D already square-free)."""
    if q == 0:
        return Fraction(p, r)
    if r < 0:
        p, q, r = -p, -q, -r
    g = math.gcd(math.gcd(p, q), r)
    if g != 1:
        p, q, r = p // g, q // g, r // g
    obj = object.__new__(QuadraticNumber)
    obj.p, obj.q, obj.r, obj.D = p, q, r, D
    return obj


class QuadraticNumber:
    """``(p + q*sqrt(D)) / r`` in canonical form."""

    __slots__ = ("p", "q", "r", "D")

    def __init__(self, p: int, q: int = 0, r: int = 1, D: int = 2):
        for name, v in (("p", p), ("q", q), ("r", r), ("D", D)):
            if not isinstance(v, int):
                raise InvalidInput(f"{name} must be an integer, got {v!r}")
        if r == 0:
            raise ZeroDivisionError("QuadraticNumber with r = 0")
        s, d = squarefree_decomposition(D)
        if d == 1:
            raise InvalidInput(f"radicand {D} is a perfect square")
        q *= s
        if r < 0:
            p, q, r = -p, -q, -r
        g = math.gcd(math.gcd(p, q), r)
        self.p, self.q, self.r, self.D = p // g, q // g, r // g, d

    # -- helpers -----------------------------------------------------------
    def _parts(self, other):
        if isinstance(other, QuadraticNumber):
            if other.D != self.D:
                raise MixedRadicand(f"Q(sqrt({self.D})) and Q(sqrt({other.D}))")
            return other.p, other.q, other.r
        if isinstance(other, int):
            return other, 0, 1
        if isinstance(other, Fraction):
            return other.numerator, 0, other.denominator
        return None

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        t = self._parts(other)
        if t is None:
            return NotImplemented
        p, q, r = t
        return _make(self.p * r + p * self.r, self.q * r + q * self.r, self.r * r, self.D)

    __radd__ = __add__

    def __sub__(self, other):
        t = self._parts(other)
        if t is None:
            return NotImplemented
        p, q, r = t
        return _make(self.p * r - p * self.r, self.q * r - q * self.r, self.r * r, self.D)

    def __rsub__(self, other):
        t = self._parts(other)
        if t is None:
            return NotImplemented
        p, q, r = t
        return _make(p * self.r - self.p * r, q * self.r - self.q * r, self.r * r, self.D)

    def __mul__(self, other):
        t = self._parts(other)
        if t is None:
            return NotImplemented
        p, q, r = t
        D = self.D
        return _make(self.p * p + self.q * q * D, self.p * q + self.q * p, self.r * r, D)

    __rmul__ = __mul__

    def _inverse_parts(self):
        # r / (p + q sqrt D) = r (p - q sqrt D) / (p^2 - q^2 D); never zero since q != 0
        n = self.p * self.p - self.q * self.q * self.D
        return self.r * self.p, -self.r * self.q, n

    def __truediv__(self, other):
        t = self._parts(other)
        if t is None:
            return NotImplemented
        p, q, r = t
        if p == 0 and q == 0:
            raise ZeroDivisionError("division by zero")
        if q == 0:
            return _make(self.p * r, self.q * r, self.r * p, self.D)
        ip, iq, ir = _make(p, q, r, self.D)._inverse_parts()
        D = self.D
        return _make(self.p * ip + self.q * iq * D, self.p * iq + self.q * ip, self.r * ir, D)

    def __rtruediv__(self, other):
        t = self._parts(other)
        if t is None:
            return NotImplemented
        p, q, r = t
        ip, iq, ir = self._inverse_parts()
        return _make(p * ip, p * iq, r * ir, self.D)

    def __neg__(self):
        return _make(-self.p, -self.q, self.r, self.D)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return 1 / (self ** -n)
        result, base = Fraction(1), self
        while n:
            if n & 1:
                result = base * result
            base = base * base
            n >>= 1
        return result

    # -- order -------------------------------------------------------------
    def sign(self) -> int:
        return _sign_pq(self.p, self.q, self.D)

    def _cmp(self, other):
        t = self._parts(other)
        if t is None:
            return None
        p, q, r = t
        return _sign_pq(self.p * r - p * self.r, self.q * r - q * self.r, self.D)

    def __eq__(self, other):
        if isinstance(other, QuadraticNumber):
            return (self.p, self.q, self.r, self.D) == (other.p, other.q, other.r, other.D)
        if isinstance(other, (int, Fraction)):
            return self.q == 0 and Fraction(self.p, self.r) == other
        return NotImplemented

    def __hash__(self):
        if self.q == 0:
            return hash(Fraction(self.p, self.r))
        return hash((self.p, self.q, self.r, self.D))

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __bool__(self):
        return bool(self.p or self.q)

    def __floor__(self) -> int:
        # floor(q sqrt D) from isqrt(q^2 D); q sqrt D is never an integer when q != 0
        if self.q == 0:
            return self.p // self.r
        s = math.isqrt(self.q * self.q * self.D)
        fq = s if self.q > 0 else -s - 1
        return (self.p + fq) // self.r

    def __ceil__(self) -> int:
        return -math.floor(-self)

    def __float__(self):
        return (self.p + self.q * math.sqrt(self.D)) / self.r

    def conjugate(self):
        return _make(self.p, -self.q, self.r, self.D)

    def __repr__(self):
        return f"QuadraticNumber({self.p}, {self.q}, {self.r}, {self.D})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[Fraction, QuadraticNumber]


def as_scalar(x) -> Scalar:
    """Coerce ints (and canonical QuadraticNumbers with q == 0) to Fraction."""
    if isinstance(x, QuadraticNumber):
        return Fraction(x.p, x.r) if x.q == 0 else x
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise InvalidInput(f"not an exact scalar: {x!r}")


def sign(x) -> int:
    if isinstance(x, QuadraticNumber):
        return x.sign()
    return (x > 0) - (x < 0)


def compare(x, y) -> int:
    """-1, 0 or 1 as x is less than, equal to or greater than y."""
    return sign(x - y)


def conjugate(x):
    if isinstance(x, QuadraticNumber):
        return x.conjugate()
    return x


def radicand(*xs) -> int | None:
    """The shared radicand of the irrational arguments, or None if all rational."""
    D = None
    for x in xs:
        if isinstance(x, QuadraticNumber) and x.q != 0:
            if D is None:
                D = x.D
            elif D != x.D:
                raise MixedRadicand(f"Q(sqrt({D})) and Q(sqrt({x.D}))")
    return D


def is_rational(x) -> bool:
    return not (isinstance(x, QuadraticNumber) and x.q != 0)


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    a, b = x.numerator, x.denominator
    sa, sb = math.isqrt(a), math.isqrt(b)
    if sa * sa == a and sb * sb == b:
        return Fraction(sa, sb)
    return None


def sqrt(x) -> Scalar:
    """Square root of a non-negative rational; sqrt(u/v) = sqrt(uv)/v."""
    x = as_scalar(x)
    if not isinstance(x, Fraction):
        raise InvalidInput("sqrt() takes a rational; use field_sqrt() inside Q(sqrt(D))")
    if x < 0:
        raise InvalidInput(f"sqrt of negative number {x}")
    exact = _rational_sqrt(x)
    if exact is not None:
        return exact
    u, v = x.numerator, x.denominator
    return QuadraticNumber(0, 1, v, u * v)


def field_sqrt(x) -> Scalar | None:
    """Positive square root of x > 0 if it lies in Q or in x's own field.

    For rational x this may return an element of a *new* field
    Q(sqrt(x)); for irrational x the result (if any) stays in Q(sqrt(D)).
    Returns None when no such root exists.
    """
    x = as_scalar(x)
    if sign(x) < 0:
        return None
    if isinstance(x, Fraction):
        return sqrt(x)
    p, q, r, D = x.p, x.q, x.r, x.D
    # (u + v sqrt D)^2 = x  =>  u^2 = (p +- sqrt(p^2 - q^2 D)) / (2r)
    root = _rational_sqrt(Fraction(p * p - q * q * D))
    if root is None:
        return None
    for s in (1, -1):
        u2 = (p + s * root) / Fraction(2 * r)
        u = _rational_sqrt(u2)
        if u is None or u == 0:
            continue
        v = Fraction(q, 2 * r) / u
        y = u + v * QuadraticNumber(0, 1, 1, D)
        if sign(y) < 0:
            y = -y
        if y * y == x:
            return y
    return None


def to_decimal(x, digits: int = 12) -> str:
    """Decimal rendering with ``digits`` significant digits (display only)."""
    x = as_scalar(x)
    ctx = decimal.Context(prec=digits + 20)
    if isinstance(x, Fraction):
        val = ctx.divide(decimal.Decimal(x.numerator), decimal.Decimal(x.denominator))
    else:
        root = ctx.sqrt(decimal.Decimal(x.D))
        val = ctx.divide(ctx.add(decimal.Decimal(x.p), ctx.multiply(decimal.Decimal(x.q), root)),
                         decimal.Decimal(x.r))
    return format(val, f".{digits}g")


def format_scalar(x) -> str:
    """Exact text form: ``3``, ``-3/2``, ``sqrt(2)``, ``(1+sqrt(5))/2``."""
    x = as_scalar(x)
    if isinstance(x, Fraction):
        return str(x)
    p, q, r, D = x.p, x.q, x.r, x.D
    if q == 1:
        rad = f"sqrt({D})"
    elif q == -1:
        rad = f"-sqrt({D})"
    else:
        rad = f"{q}*sqrt({D})"
    if p == 0:
        num = rad
    else:
        num = f"{p}{'' if rad.startswith('-') else '+'}{rad}"
    if r == 1:
        return num
    return f"({num})/{r}" if p != 0 else f"{num}/{r}"


_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")
_QUAD_RE = re.compile(
    r"^\s*\(?\s*(?P<p>[+-]?\d+)?\s*(?P<sgn>[+-])?\s*(?:(?P<q>\d+)\s*\*\s*)?"
    r"sqrt\(\s*(?P<D>\d+)\s*\)\s*\)?\s*(?:/\s*(?P<r>\d+))?\s*$"
)


def parse_scalar(value) -> Scalar:
    """Parse ``"p/q"``, ``"p"``, an int, a ``{"p","q","r","D"}`` object, or
    the quadratic text form emitted by :func:`format_scalar`."""
    if isinstance(value, bool):
        raise InvalidInput(f"not a scalar: {value!r}")
    if isinstance(value, (int, Fraction, QuadraticNumber)):
        return as_scalar(value)
    if isinstance(value, dict):
        return scalar_from_json(value)
    if not isinstance(value, str):
        raise InvalidInput(f"not an exact scalar: {value!r}")
    m = _RAT_RE.match(value)
    if m:
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise InvalidInput(f"zero denominator in {value!r}")
        return Fraction(int(m.group(1)), den)
    m = _QUAD_RE.match(value)
    if m:
        p = int(m.group("p") or 0)
        q = int(m.group("q") or 1)
        if m.group("sgn") == "-":
            q = -q
        r = int(m.group("r") or 1)
        D = int(m.group("D"))
        if r == 0 or D == 0:
            raise InvalidInput(f"bad quadratic number {value!r}")
        s, d = squarefree_decomposition(D)
        if d == 1:
            return Fraction(p + q * s, r)
        return as_scalar(QuadraticNumber(p, q, r, D))
    raise InvalidInput(f"cannot parse scalar {value!r}")


def scalar_to_json(x):
    x = as_scalar(x)
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    return {"p": x.p, "q": x.q, "r": x.r, "D": x.D}


def scalar_from_json(obj) -> Scalar:
    if isinstance(obj, dict):
        try:
            p, q, r, D = (obj[k] for k in ("p", "q", "r", "D"))
        except KeyError as exc:
            raise InvalidInput(f"quadratic number object missing {exc}") from None
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in (p, q, r, D)):
            raise InvalidInput(f"quadratic number fields must be integers: {obj}")
        if r <= 0 or D <= 0:
            raise InvalidInput(f"need r > 0 and D > 0: {obj}")
        s, d = squarefree_decomposition(D)
        if d == 1:
            return Fraction(p + q * s, r)
        return as_scalar(QuadraticNumber(p, q, r, D))
    return parse_scalar(obj)
