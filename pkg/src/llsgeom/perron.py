"""Perron-type identities relating form values to continued fractions.

All three identities share one orientation factor: for endpoints ``P`` and
``Q`` on the two kernel lines it is ``sign(det(OP, OQ)) * sign(f(P + Q))``.
The bare determinant sign is not enough: replacing ``Q`` by ``-Q`` flips it
while leaving every other ingredient unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cf import INF
from .errors import (
    BoundaryVertex,
    ConsistencyError,
    InvalidInput,
    NonIntegerCoefficients,
    NotFBrokenLine,
    NotOnKernel,
    SignatureUndefined,
    SquareDiscriminant,
)
from .exactnum import Scalar, as_scalar, is_rational, sign, sqrt
from .forms import (
    BinaryQuadraticForm,
    TwoSidedSequence,
    discriminant,
    evaluate,
    kernel_index,
    lls_of_form,
    reduce,
    tail_value,
)
from .geometry import BrokenLine, Point, as_point, det2, is_f_broken_line, lls, mat_apply, mat_mul

__all__ = [
    "PerronTerm",
    "SpectrumReport",
    "VertexCheck",
    "IdentityReport",
    "orientation",
    "value_via_triangle",
    "perron_denominator",
    "perron_rhs_finite",
    "perron_rhs_infinite",
    "classical_perron",
    "verify_identity",
]


@dataclass(frozen=True)
class PerronTerm:
    index: int
    denominator: Scalar
    value: Scalar


@dataclass(frozen=True)
class SpectrumReport:
    form: BinaryQuadraticForm
    markov_minimum: Scalar
    normalized: Scalar  # sqrt(discriminant) / markov_minimum
    witness: Point
    term: PerronTerm
    terms: tuple = field(default=(), repr=False)


def orientation(f: BinaryQuadraticForm, p, q) -> int:
    """``sign(det(OP, OQ)) * sign(f(P + Q))`` for P, Q on distinct kernel lines."""
    s = sign(det2(p, q))
    if s == 0:
        raise SignatureUndefined("endpoints are collinear with the origin")
    t = sign(evaluate(f, (p[0] + q[0], p[1] + q[1])))
    # t == 0 only happens off the kernel configuration; fall back to the determinant
    return s * (t or 1)


def value_via_triangle(f: BinaryQuadraticForm, P, A, Q) -> Scalar:
    """``f(A)`` from three oriented areas and the discriminant."""
    P, A, Q = as_point(P), as_point(A), as_point(Q)
    iP, iQ = kernel_index(f, P), kernel_index(f, Q)
    if iP is None:
        raise NotOnKernel(f"P={tuple(P)} annuls no factor of f")
    if iQ is None or iQ == iP:
        raise NotOnKernel(f"Q={tuple(Q)} does not annul the other factor of f")
    d = det2(P, Q)
    ratio = det2(P, A) * det2(A, Q) / d
    return as_scalar(orientation(f, P, Q) * ratio * sqrt(discriminant(f)))


def perron_denominator(seq, k: int):
    """``a_{2k-1} + [0; a_{2k-2} : ... : a_0] + [0; a_{2k} : ... : a_{2n}]``.

    Projective: returns INF when either tail is infinite.
    """
    left = [0] + list(seq[2 * k - 2::-1])
    right = [0] + list(seq[2 * k:])
    from .cf import eval_finite

    lv, rv = eval_finite(left), eval_finite(right)
    if lv is INF or rv is INF:
        return INF
    return as_scalar(seq[2 * k - 1] + lv + rv)


def _rhs(f, den, orient):
    if den is INF:
        return Fraction(0)
    if den == 0:
        return INF
    return as_scalar(orient * sqrt(discriminant(f)) / den)


def perron_rhs_finite(f: BinaryQuadraticForm, b, k: int, *, strict: bool = True):
    """Right-hand side of the generalized identity at interior vertex ``k``."""
    b = b if isinstance(b, BrokenLine) else BrokenLine(tuple(b))
    n = len(b) - 1
    if not 1 <= k <= n - 1:
        raise BoundaryVertex(f"vertex {k} is not interior (0 < k < {n})")
    if strict and not is_f_broken_line(b, f):
        raise NotFBrokenLine("endpoints must annul distinct factors of f")
    seq = lls(b)
    rhs = _rhs(f, perron_denominator(seq, k), orientation(f, b[0], b[-1]))
    if strict and rhs is INF:
        raise ConsistencyError("zero denominator on an f-broken line")
    return rhs


def _radicand(f):
    """Square-free part of a rational discriminant, or None."""
    root = sqrt(discriminant(f))
    return getattr(root, "D", None)


def perron_rhs_infinite(f: BinaryQuadraticForm, s: TwoSidedSequence, center: int = 0,
                        orient: int = 1):
    """Identity for two-sided sequences; tails are evaluated exactly.

    ``orient`` is the orientation of the limit directions (see
    :func:`orientation`); it is +1 for the sail through (0, 1) of a reduced
    form.
    """
    right, left = s.tails(center)
    D = _radicand(f)
    rv, lv = tail_value(right, D), tail_value(left, D)
    if rv is INF or lv is INF:
        return Fraction(0)
    return _rhs(f, as_scalar(s.center(center) + rv + lv), orient)


def _two_sided_term(f, s: TwoSidedSequence, i: int) -> PerronTerm:
    right, left = s.tails(i)
    D = _radicand(f)
    den = as_scalar(s.center(i) + tail_value(right, D) + tail_value(left, D))
    return PerronTerm(i, den, as_scalar(sqrt(discriminant(f)) / den))


def classical_perron(f: BinaryQuadraticForm, window: int = 0) -> SpectrumReport:
    """Markov minimum from the form's LLS sequence.

    Scans one full period of the (purely periodic) two-sided sequence plus
    ``window`` extra indices on each side, and checks every term against
    the form's value at the lattice point it describes.
    """
    if not f.is_integral():
        raise NonIntegerCoefficients("classical_perron needs integer coefficients")
    disc = discriminant(f)
    if is_rational(sqrt(disc)):
        raise SquareDiscriminant("m(f) = 0 is attained on the kernel")
    red = reduce(f)
    s = lls_of_form(f)
    if not s.is_purely_periodic():
        raise ConsistencyError("integer form with non-periodic LLS")
    n = len(s.right.period)
    terms = []
    for i in range(-window, n + window):
        term = _two_sided_term(f, s, i)
        p = _index_point(red.witness, s, i)
        if abs(evaluate(f, p)) != term.value:
            raise ConsistencyError(f"term {i}: |f{p}| = {abs(evaluate(f, p))} != {term.value}")
        terms.append((term, p))
    term, witness = min(terms, key=lambda t: (t[0].value, t[0].index < 0, abs(t[0].index)))
    m = term.value
    return SpectrumReport(f, m, as_scalar(sqrt(disc) / m), witness, term,
                          tuple(t for t, _ in terms))


def _index_point(U, s: TwoSidedSequence, i: int) -> Point:
    """Lattice point whose value is described by the i-th Perron term.

    Shifting the sequence by one step right is the basis change
    ``((0, 1), (1, a_i))``; shifting left inverts ``((0, 1), (1, a_{i-1}))``.
    """
    W = U
    if i >= 0:
        for j in range(i):
            W = mat_mul(W, ((0, 1), (1, s.center(j))))
    else:
        for j in range(-1, i - 1, -1):
            W = mat_mul(W, ((-s.center(j), 1), (1, 0)))
    x, y = mat_apply(W, (0, 1))
    return Point(as_scalar(x), as_scalar(y))


@dataclass(frozen=True)
class VertexCheck:
    k: int
    lhs: Scalar
    rhs: object  # Scalar or INF

    @property
    def ok(self) -> bool:
        return self.rhs is not INF and self.lhs == self.rhs

    @property
    def discrepancy(self):
        return None if self.rhs is INF else as_scalar(self.lhs - self.rhs)


@dataclass(frozen=True)
class IdentityReport:
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self):
        return [c for c in self.checks if not c.ok]


def verify_identity(f: BinaryQuadraticForm, b, *, strict: bool = True,
                    vertices=None) -> IdentityReport:
    """Compare ``f(A_k)`` with the identity's right-hand side at interior vertices.

    With ``strict=False`` the f-broken-line precondition is not enforced, so
    a line whose endpoints were moved off the kernel reports discrepancies
    instead of raising.
    """
    b = b if isinstance(b, BrokenLine) else BrokenLine(tuple(b))
    if strict and not is_f_broken_line(b, f):
        raise NotFBrokenLine("endpoints must annul distinct factors of f")
    n = len(b) - 1
    ks = range(1, n) if vertices is None else vertices
    checks = []
    for k in ks:
        if not 1 <= k <= n - 1:
            raise BoundaryVertex(f"vertex {k} is not interior (0 < k < {n})")
        checks.append(VertexCheck(k, evaluate(f, b[k]), perron_rhs_finite(f, b, k, strict=False)))
    if not checks:
        raise InvalidInput("the broken line has no interior vertex")
    return IdentityReport(tuple(checks))
