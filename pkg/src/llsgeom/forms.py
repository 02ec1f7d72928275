"""Binary quadratic forms with positive discriminant.

Forms are stored by their rational coefficients ``A x^2 + B xy + C y^2``.
Factorisations, reductions and LLS sequences are derived from them and are
exact over Q(sqrt(discriminant)).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .cf import INF, CfPeriodic, eval_finite, eval_periodic, expand_quadratic, expand_rational
from .errors import (
    DegenerateSplit,
    InvalidInput,
    NonPositiveDiscriminant,
    Unsupported,
)
from .exactnum import QuadraticNumber, Scalar, as_scalar, is_rational, sign, sqrt
from .geometry import IDENTITY, mat_det, mat_mul

__all__ = [
    "BinaryQuadraticForm",
    "FactoredForm",
    "ReducedForm",
    "TwoSidedSequence",
    "evaluate",
    "discriminant",
    "factor",
    "kernel_directions",
    "kernel_index",
    "reduce",
    "reduced_form",
    "lls_of_form",
    "equivalent",
    "minimal_period",
]


@dataclass(frozen=True)
class BinaryQuadraticForm:
    A: Fraction
    B: Fraction
    C: Fraction

    def __post_init__(self):
        for name in ("A", "B", "C"):
            v = as_scalar(getattr(self, name))
            if not isinstance(v, Fraction):
                raise InvalidInput(f"coefficient {name} must be rational, got {v}")
            object.__setattr__(self, name, v)
        if self.B * self.B - 4 * self.A * self.C <= 0:
            raise NonPositiveDiscriminant(
                f"discriminant {self.B * self.B - 4 * self.A * self.C} is not positive")

    @classmethod
    def from_factors(cls, l1, l2, scale=1) -> "BinaryQuadraticForm":
        """``scale * (a x - b y)(c x - d y)`` for covectors ``(a, b)``, ``(c, d)``."""
        (a, b), (c, d) = l1, l2
        A, B, C = scale * a * c, -scale * (a * d + b * c), scale * b * d
        if not all(is_rational(v) for v in (A, B, C)):
            raise InvalidInput("factors do not multiply to rational coefficients")
        return cls(as_scalar(A), as_scalar(B), as_scalar(C))

    def __call__(self, p):
        return evaluate(self, p)

    @property
    def coefficients(self):
        return self.A, self.B, self.C

    def compose(self, m) -> "BinaryQuadraticForm":
        """The form ``p -> f(m p)``."""
        (a, b), (c, d) = m
        A, B, C = self.A, self.B, self.C
        return BinaryQuadraticForm(
            A * a * a + B * a * c + C * c * c,
            2 * A * a * b + B * (a * d + b * c) + 2 * C * c * d,
            A * b * b + B * b * d + C * d * d,
        )

    def scaled(self, lam) -> "BinaryQuadraticForm":
        return BinaryQuadraticForm(lam * self.A, lam * self.B, lam * self.C)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.coefficients)

    def __str__(self):
        return f"({self.A})x^2 + ({self.B})xy + ({self.C})y^2"


def evaluate(f: BinaryQuadraticForm, p) -> Scalar:
    x, y = p[0], p[1]
    return as_scalar(f.A * x * x + f.B * x * y + f.C * y * y)


def discriminant(f: BinaryQuadraticForm) -> Fraction:
    return f.B * f.B - 4 * f.A * f.C


@dataclass(frozen=True)
class FactoredForm:
    """``scale * L1 * L2`` with ``L = (a, b)`` meaning ``a x - b y``."""

    scale: Scalar
    l1: tuple
    l2: tuple

    def expand(self) -> BinaryQuadraticForm:
        return BinaryQuadraticForm.from_factors(self.l1, self.l2, self.scale)


def factor(f: BinaryQuadraticForm) -> FactoredForm:
    if not isinstance(f, BinaryQuadraticForm):
        raise InvalidInput("factor() needs a BinaryQuadraticForm")
    A, B, C = f.coefficients
    if A == 0:
        # y (B x + C y)
        return FactoredForm(Fraction(1), (B, -C), (Fraction(0), Fraction(-1)))
    root = sqrt(discriminant(f))
    t1 = as_scalar((-B - root) / (2 * A))
    t2 = as_scalar((-B + root) / (2 * A))
    return FactoredForm(A, (Fraction(1), t1), (Fraction(1), t2))


def kernel_directions(f: BinaryQuadraticForm) -> tuple:
    """Direction vectors of the two kernel lines, in factor order."""
    fac = factor(f)
    return tuple((b, a) for a, b in (fac.l1, fac.l2))


def kernel_index(f: BinaryQuadraticForm, p) -> int | None:
    """0 or 1 if the nonzero point p annuls that linear factor, else None."""
    if p[0] == 0 and p[1] == 0:
        return None
    fac = factor(f)
    for i, (a, b) in enumerate((fac.l1, fac.l2)):
        if a * p[0] - b * p[1] == 0:
            return i
    return None


@dataclass(frozen=True)
class ReducedForm:
    """``f o U = scale * (y - alpha x)(y + beta x)``."""

    alpha: Scalar
    beta: Scalar
    scale: Fraction
    witness: tuple

    def form(self) -> BinaryQuadraticForm:
        return reduced_form(self.alpha, self.beta)


def reduced_form(alpha, beta, scale=1) -> BinaryQuadraticForm:
    """``scale * (y - alpha x)(y + beta x)``; coefficients must be rational."""
    return BinaryQuadraticForm.from_factors((alpha, 1), (-beta, 1), scale)


def _slope(cov):
    a, b = cov
    return INF if b == 0 else as_scalar(a / b)


def _primitive(d):
    """Primitive integer vector on the rational line spanned by d."""
    x, y = Fraction(d[0]), Fraction(d[1])
    den = x.denominator * y.denominator // math.gcd(x.denominator, y.denominator)
    xi, yi = int(x * den), int(y * den)
    g = math.gcd(xi, yi)
    return xi // g, yi // g


def _complete_basis(v):
    """Integer matrix with first column v and determinant 1."""
    a, b = v
    # a*d - b*c = 1
    g, s, t = _ext_gcd(a, b)
    assert g == 1
    return ((a, -t), (b, s))


def _ext_gcd(a, b):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, s, t = _ext_gcd(b, a % b)
    return g, t, s - (a // b) * t


def _check_reduced(f, alpha, beta, U) -> ReducedForm:
    g = f.compose(U)
    lam = g.C
    if lam == 0 or g.B != lam * (beta - alpha) or g.A != -lam * alpha * beta:
        raise DegenerateSplit(f"reduction self-check failed for {f}")
    if not (alpha >= 1 and 0 <= beta < 1) or mat_det(U) != 1:
        raise DegenerateSplit(f"normalisation failed for {f}")
    return ReducedForm(alpha, beta, lam, U)


def _already_reduced(f):
    """Identity reduction when f is already ``C * f_{alpha,beta}``."""
    A, B, C = f.coefficients
    if C == 0:
        return None
    # kernel slopes y/x are alpha and -beta, the roots of C t^2 + B t + A
    root = sqrt(discriminant(f))
    r1, r2 = (as_scalar((-B + e * root) / (2 * C)) for e in (1, -1))
    for alpha, nb in ((r1, r2), (r2, r1)):
        if alpha >= 1 and -1 < nb <= 0:
            return _check_reduced(f, alpha, as_scalar(-nb), IDENTITY)
    return None


def reduce(f: BinaryQuadraticForm) -> ReducedForm:
    """Find U in SL(2, Z) and a scale with ``f o U = scale * f_{alpha,beta}``."""
    fac = factor(f)
    done = _already_reduced(f)
    if done is not None:
        return done
    s1, s2 = _slope(fac.l1), _slope(fac.l2)
    if (s1 is INF or is_rational(s1)) and (s2 is INF or is_rational(s2)):
        return _reduce_rational(f, fac)
    x, xb = s1, s2
    U = IDENTITY
    # Galois: iterating the Gauss map makes x > 1 and -1 < conjugate < 0
    while not (x > 1 and -1 < xb < 0) or mat_det(U) != 1:
        a = math.floor(x)
        x, xb = 1 / (x - a), 1 / (xb - a)
        U = mat_mul(U, ((0, 1), (1, a)))
    return _check_reduced(f, x, -xb, U)


def _reduce_rational(f, fac) -> ReducedForm:
    (a1, b1), (a2, b2) = fac.l1, fac.l2
    v = _primitive((b1, a1))
    V = _complete_basis(v)
    # other kernel direction in the new basis
    (p, q), (r, s) = V  # det 1, inverse is ((s, -q), (-r, p))
    w = (b2, a2)
    wx, wy = s * w[0] - q * w[1], -r * w[0] + p * w[1]
    inv_t = as_scalar(Fraction(wx) / wy)
    k = math.ceil(inv_t) - 1
    U = mat_mul(V, ((1, k), (0, 1)))
    alpha = 1 / (inv_t - k)
    return _check_reduced(f, as_scalar(alpha), Fraction(0), U)


Side = Union[list, CfPeriodic]


@dataclass(frozen=True)
class TwoSidedSequence:
    """``right`` holds a0, a1, ...; ``left`` holds a_{-1}, a_{-2}, ..."""

    right: Side
    left: Side

    def __post_init__(self):
        for name in ("right", "left"):
            side = getattr(self, name)
            if not isinstance(side, CfPeriodic):
                object.__setattr__(self, name, [as_scalar(a) for a in side])

    def is_purely_periodic(self) -> bool:
        return (isinstance(self.right, CfPeriodic) and not self.right.preperiod
                and isinstance(self.left, CfPeriodic) and not self.left.preperiod)

    def center(self, i: int):
        return _first(self.right, i) if i >= 0 else _first(self.left, -i - 1)

    def tails(self, i: int):
        """``([a_{i+1}, ...], [a_{i-1}, ...])`` as (preperiod, period) pairs."""
        if i >= 0:
            right = _drop(self.right, i + 1)
            prefix = [_first(self.right, j) for j in range(i - 1, -1, -1)]
            pre, per = _as_pair(self.left)
            left = (prefix + pre, per)
        else:
            k = -i
            left = _drop(self.left, k)
            prefix = [_first(self.left, j) for j in range(k - 2, -1, -1)]
            pre, per = _as_pair(self.right)
            right = (prefix + pre, per)
        return right, left


def _as_pair(side):
    if isinstance(side, CfPeriodic):
        return list(side.preperiod), list(side.period)
    return list(side), None


def _first(side, j):
    pre, per = _as_pair(side)
    if j < len(pre):
        return pre[j]
    if per is None:
        raise IndexError(j)
    return per[(j - len(pre)) % len(per)]


def _drop(side, k):
    pre, per = _as_pair(side)
    if k <= len(pre):
        return pre[k:], per
    if per is None:
        return [], None
    j = (k - len(pre)) % len(per)
    return [], per[j:] + per[:j]


def tail_value(pair, radicand=None) -> Scalar:
    """Value of ``[0; t1 : t2 : ...]`` for a (preperiod, period) pair."""
    pre, per = pair
    if per is None:
        return eval_finite([0] + list(pre))
    return eval_periodic(CfPeriodic((0,) + tuple(pre), tuple(per)), radicand)


def lls_of_form(f: BinaryQuadraticForm) -> TwoSidedSequence:
    red = reduce(f)
    alpha, beta = red.alpha, red.beta
    if is_rational(alpha):
        right: Side = expand_rational(alpha)
    else:
        right = expand_quadratic(alpha)
    if beta == 0:
        left: Side = []
    elif is_rational(beta):
        left = expand_rational(beta)[1:]
    else:
        cfb = expand_quadratic(beta)
        assert cfb.preperiod and cfb.preperiod[0] == 0
        left = CfPeriodic(cfb.preperiod[1:], cfb.period)
    return TwoSidedSequence(right, left)


def minimal_period(seq: Sequence) -> tuple:
    seq = tuple(seq)
    n = len(seq)
    for d in range(1, n + 1):
        if n % d == 0 and seq == seq[d:] + seq[:d]:
            return seq[:d]
    return seq


def _rotations(seq):
    return {seq[i:] + seq[:i] for i in range(len(seq))}


def equivalent(f: BinaryQuadraticForm, g: BinaryQuadraticForm) -> bool:
    """Same two-sided LLS sequence up to shift and reversal."""
    sf, sg = lls_of_form(f), lls_of_form(g)
    for s in (sf, sg):
        if not s.is_purely_periodic():
            raise Unsupported("equivalence needs purely periodic two-sided LLS sequences")
    pf = minimal_period(sf.right.period)
    pg = minimal_period(sg.right.period)
    if len(pf) != len(pg):
        return False
    return pg in _rotations(pf) or pg in _rotations(tuple(reversed(pf)))
