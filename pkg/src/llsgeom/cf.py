"""Continued fractions with arbitrary nonzero scalar elements.

Finite fractions ``[a0; a1 : ... : an]`` are plain sequences of scalars and
are evaluated through the continuant recurrence, i.e. projectively, so an
intermediate zero denominator is harmless and a final one yields
:data:`INF`.  Eventually periodic fractions are :class:`CfPeriodic`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    DegeneratePeriod,
    InvalidInput,
    MixedRadicand,
    NonConvergent,
    RationalInput,
)
from .exactnum import QuadraticNumber, _rational_sqrt, as_scalar, field_sqrt, format_scalar, is_rational, sign

__all__ = [
    "INF",
    "CfPeriodic",
    "eval_finite",
    "expand_rational",
    "expand_quadratic",
    "eval_periodic",
    "convergents",
    "mobius",
    "format_cf",
    "format_periodic",
]


class _Infinity:
    """The point at infinity of the projective line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


@dataclass(frozen=True)
class CfPeriodic:
    preperiod: tuple
    period: tuple

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(as_scalar(a) for a in self.preperiod))
        object.__setattr__(self, "period", tuple(as_scalar(a) for a in self.period))
        if not self.period:
            raise InvalidInput("period must be nonempty")
        # period elements recur at interior positions, so none may be zero
        if any(a == 0 for a in self.preperiod[1:]) or any(a == 0 for a in self.period):
            raise InvalidInput("elements beyond index 0 must be nonzero")

    def elements(self, n: int) -> list:
        """The first ``n`` elements."""
        out = list(self.preperiod[:n])
        k = len(self.period)
        i = 0
        while len(out) < n:
            out.append(self.period[i % k])
            i += 1
        return out


def _check(elements: Sequence) -> list:
    els = [as_scalar(a) for a in elements]
    if not els:
        raise InvalidInput("empty continued fraction")
    for i, a in enumerate(els[1:], 1):
        if a == 0:
            raise InvalidInput(f"element {i} is zero")
    return els


def _continuant(els):
    p_prev, p = Fraction(1), els[0]
    q_prev, q = Fraction(0), Fraction(1)
    for a in els[1:]:
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    return p, q


def eval_finite(elements: Sequence):
    """Value of ``[a0; a1 : ... : an]`` in the projective line."""
    p, q = _continuant(_check(elements))
    if q == 0:
        return INF
    return as_scalar(p / q)


def convergents(elements: Sequence) -> list:
    els = _check(elements)
    out = []
    p_prev, p = Fraction(1), els[0]
    q_prev, q = Fraction(0), Fraction(1)
    out.append(as_scalar(p))
    for a in els[1:]:
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        out.append(INF if q == 0 else as_scalar(p / q))
    return out


def expand_rational(x, parity: str = "any") -> list[int]:
    """Regular expansion of a rational, last element >= 2 unless forced.

    ``parity`` is ``"any"``, ``"even_length"`` or ``"odd_length"``; the
    identity ``[...: a] = [...: a-1 : 1]`` fixes the length parity.
    """
    if parity not in ("any", "even_length", "odd_length"):
        raise InvalidInput(f"unknown parity {parity!r}")
    x = as_scalar(x)
    if not isinstance(x, Fraction):
        raise InvalidInput("expand_rational needs a rational")
    n, d = x.numerator, x.denominator
    out = []
    while True:
        a, rem = divmod(n, d)
        out.append(a)
        if rem == 0:
            break
        n, d = d, rem
    want_even = {"even_length": True, "odd_length": False}.get(parity)
    if want_even is not None and (len(out) % 2 == 0) != want_even:
        out[-1] -= 1
        out.append(1)
    return out


def _gauss_state(x: QuadraticNumber):
    """Write x as (P + sqrt(d)) / Q with Q | d - P^2."""
    p, q, r, D = x.p, x.q, x.r, x.D
    d = q * q * D
    if q > 0:
        P, Q = p, r
    else:
        P, Q = -p, -r
    if (d - P * P) % Q:
        P, d, Q = P * abs(Q), d * Q * Q, Q * abs(Q)
    return P, Q, d


def expand_quadratic(x) -> CfPeriodic:
    """Regular eventually periodic expansion of a quadratic irrational."""
    x = as_scalar(x)
    if isinstance(x, Fraction):
        raise RationalInput(f"{x} is rational")
    P, Q, d = _gauss_state(x)
    s = math.isqrt(d)
    seen: dict[tuple[int, int], int] = {}
    out: list[int] = []
    while (P, Q) not in seen:
        seen[(P, Q)] = len(out)
        a = (P + s) // Q if Q > 0 else (P + s + 1) // Q
        out.append(a)
        P = a * Q - P
        Q = (d - P * P) // Q
    j = seen[(P, Q)]
    return CfPeriodic(tuple(out[:j]), tuple(out[j:]))


def _matrix(els):
    m00, m01, m10, m11 = Fraction(1), Fraction(0), Fraction(0), Fraction(1)
    for a in els:
        m00, m01, m10, m11 = m00 * a + m01, m00, m10 * a + m11, m10
    return m00, m01, m10, m11


def mobius(m, z):
    """Apply ``z -> (a z + b) / (c z + d)`` projectively."""
    a, b, c, d = m
    if z is INF:
        return INF if c == 0 else as_scalar(a / c)
    num, den = a * z + b, c * z + d
    if den == 0:
        return INF
    return as_scalar(num / den)


def _root(disc, hint):
    """Positive square root of the period discriminant, preferring Q(sqrt(hint))."""
    if hint is not None and is_rational(disc):
        r = _rational_sqrt(Fraction(disc))
        if r is not None:
            return r
        r = _rational_sqrt(Fraction(disc) / hint)
        if r is not None:
            return r * QuadraticNumber(0, 1, 1, hint)
    return field_sqrt(disc)


def eval_periodic(cf: CfPeriodic, radicand=None):
    """Limit of an eventually periodic continued fraction.

    The value of the periodic part is the attracting fixed point of the
    Moebius map of one period; it is pushed through the preperiod map.
    ``radicand`` names the field the limit is expected in; it only saves
    factoring the discriminant of a rational period.
    """
    m00, m01, m10, m11 = _matrix(cf.period)
    tr = m00 + m11
    det = -1 if len(cf.period) % 2 else 1
    disc = tr * tr - 4 * det
    if m01 == 0 and m10 == 0 and m00 == m11:
        raise DegeneratePeriod("period map is a multiple of the identity")
    s = sign(disc)
    if s < 0:
        raise NonConvergent("elliptic period map: the fraction has no limit")
    if s == 0:
        raise NonConvergent("parabolic period map")
    if tr == 0:
        raise NonConvergent("eigenvalues of equal magnitude")
    root = _root(disc, radicand)
    if root is None:
        raise MixedRadicand("limit lies outside the field of the elements")
    lam = (tr + root) / 2 if sign(tr) > 0 else (tr - root) / 2
    if m10 != 0:
        z = as_scalar((lam - m11) / m10)
    elif lam == m00:
        z = INF
    else:
        z = as_scalar(m01 / (lam - m00))
    if not cf.preperiod:
        return z
    return mobius(_matrix(cf.preperiod), z)


def format_cf(elements: Sequence) -> str:
    """``[a0; a1 : a2 : ...]``."""
    els = [format_scalar(a) for a in elements]
    if len(els) == 1:
        return f"[{els[0]}]"
    return f"[{els[0]}; " + " : ".join(els[1:]) + "]"


def format_periodic(cf: CfPeriodic) -> str:
    """``[pre0; pre1 : (per0 : per1)]``; the parenthesised group repeats."""
    period = "(" + " : ".join(format_scalar(a) for a in cf.period) + ")"
    pre = [format_scalar(a) for a in cf.preperiod]
    if not pre:
        return f"[{period}]"
    if len(pre) == 1:
        return f"[{pre[0]}; {period}]"
    return f"[{pre[0]}; " + " : ".join(pre[1:]) + f" : {period}]"
