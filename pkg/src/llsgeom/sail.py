"""Sails of angles and of forms.

Two independent constructions are provided.  :func:`sail_cf` normalises
the angle by a unimodular map and reads the vertices off the even
convergents of the boundary slopes.  :func:`sail_bruteforce` takes the
convex hull of every primitive lattice point in a box and keeps the part
that faces the origin; it is the oracle for the first.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import _kernels
from .cf import INF, expand_quadratic, expand_rational
from .errors import (
    ConsistencyError,
    DegenerateAngle,
    EmptyAngle,
    InvalidInput,
    NonConvergent,
    NonIntegerCoefficients,
    SquareDiscriminant,
)
from .exactnum import QuadraticNumber, as_scalar, conjugate, is_rational, radicand, sign, sqrt
from .forms import (
    BinaryQuadraticForm,
    _complete_basis,
    _primitive,
    discriminant,
    evaluate,
    kernel_directions,
    tail_value,
)
from .geometry import Point, as_point, det2, lls, mat_apply, mat_det, mat_inverse, mat_mul
from .perron import PerronTerm, SpectrumReport, orientation

__all__ = [
    "Angle",
    "Sail",
    "sail_bruteforce",
    "sail_cf",
    "sails_of_form",
    "form_angles",
    "markov_minimum_bruteforce",
    "markov_minimum_sails",
    "oracle_mismatches",
]

MAX_DEPTH = 4096


@dataclass(frozen=True)
class Angle:
    """Cone from ``r1`` counterclockwise to ``r2`` (less than a straight angle)."""

    r1: Point
    r2: Point

    def __post_init__(self):
        r1, r2 = as_point(self.r1), as_point(self.r2)
        radicand(*r1, *r2)  # raises MixedRadicand
        d = det2(r1, r2)
        if d == 0:
            raise DegenerateAngle("rays are parallel")
        if d < 0:
            raise DegenerateAngle("rays must be ordered counterclockwise")
        object.__setattr__(self, "r1", r1)
        object.__setattr__(self, "r2", r2)

    def contains(self, p) -> bool:
        """Closed-cone membership."""
        return det2(self.r1, p) >= 0 and det2(p, self.r2) >= 0


@dataclass(frozen=True)
class Sail:
    angle: Angle
    vertices: tuple
    period: Optional[tuple] = None  # integer matrix moving vertex c to c + period_length
    period_length: int = 0
    period_start: int = 0
    # half-open index range of vertices known to be exact sail vertices
    certified: Optional[tuple] = None
    finite: tuple = (False, False)  # chain reaches ray1 / ray2 exactly

    def lls(self) -> tuple:
        return lls(self.vertices)

    def __len__(self):
        return len(self.vertices)


def _ipoint(x, y) -> Point:
    return Point(Fraction(x), Fraction(y))


# -- continued-fraction construction ----------------------------------------

def _half_sail(v, r, depth):
    """Vertices of the sail of cone(v, r) from the primitive integer vector ``v``.

    Returns ``(vertices, finite)``; ``finite`` is True when ``r`` is rational
    and the chain ends on it.
    """
    V = _complete_basis(v)
    Vinv = mat_inverse(V)
    x, y = mat_apply(Vinv, r)
    x, y = as_scalar(x), as_scalar(y)
    assert y > 0
    k = math.floor(-x / y) + 1
    alpha = as_scalar(y / (x + k * y))
    back = mat_mul(V, ((1, -k), (0, 1)))
    if is_rational(alpha):
        els, finite = expand_rational(alpha, "odd_length"), True
    else:
        els, finite = expand_quadratic(alpha).elements(2 * depth + 1), False
    out = [mat_apply(back, (1, 0))]
    p_prev, p, q_prev, q = 1, els[0], 0, 1
    for j, a in enumerate(els):
        if j:
            p_prev, p = p, a * p + p_prev
            q_prev, q = q, a * q + q_prev
        if j % 2 == 0 and (q, p) != (1, 0):
            out.append(mat_apply(back, (q, p)))
    return [_ipoint(*w) for w in out], finite


def _flip(p):
    return Point(p[0], -p[1])


def _left_half(v, r, depth):
    """Sail of cone(r, v) ordered from ``r`` to ``v``, by reflection."""
    chain, finite = _half_sail(_flip(v), _flip(r), depth)
    return [_flip(p) for p in reversed(chain)], finite


def _simplest_between(lo, hi):
    """A rational strictly between ``0 <= lo < hi`` (``hi`` may be INF)."""
    n = math.floor(lo) + 1
    if hi is INF or n < hi:
        return Fraction(n)
    a = n - 1
    inner = _simplest_between(1 / (hi - a), INF if lo == a else 1 / (lo - a))
    return a + 1 / inner


def _interior_direction(r1, r2):
    """A primitive integer vector strictly inside the cone (r1, r2).

    Used only when both rays are irrational, so neither lies on an axis.
    """
    inside = lambda e: det2(r1, e) > 0 and det2(e, r2) > 0
    for e in ((1, 0), (0, 1), (-1, 0), (0, -1)):
        if inside(e):
            return e
    # no axis inside: the cone sits in one open quadrant, rotate it to the first
    M = ((1, 0), (0, 1))
    for _ in range(4):
        a, b = mat_apply(M, r1), mat_apply(M, r2)
        if a[0] > 0 and a[1] > 0 and b[0] > 0 and b[1] > 0:
            break
        M = mat_mul(((0, -1), (1, 0)), M)
    t = _simplest_between(as_scalar(a[1] / a[0]), as_scalar(b[1] / b[0]))
    w = mat_apply(mat_inverse(M), (t.denominator, t.numerator))
    assert inside(w)
    return w


def _merge(chain):
    """Keep the origin-facing convex part of a polyline ordered from r1 to r2."""
    st = []
    for w in chain:
        while len(st) >= 2 and det2((st[-1][0] - st[-2][0], st[-1][1] - st[-2][1]),
                                    (w[0] - st[-1][0], w[1] - st[-1][1])) >= 0:
            st.pop()
        st.append(w)
    return st


def _chain(angle, depth):
    r1, r2 = angle.r1, angle.r2
    v1, v2 = _rational_dir(r1), _rational_dir(r2)
    if v1 is not None:
        chain, fin = _half_sail(v1, r2, depth)
        return chain, (True, fin), None
    if v2 is not None:
        chain, fin = _left_half(v2, r1, depth)
        return chain, (fin, True), None
    w = _interior_direction(r1, r2)
    left, _ = _left_half(w, r1, depth)
    right, _ = _half_sail(w, r2, depth)
    merged = _merge(left + right[1:])
    # the junction must not eat into the truncated ends
    ok = merged[:2] == left[:2] and merged[-2:] == right[-2:]
    return merged, (False, False), ok


def _rational_dir(r):
    """Primitive integer vector along ``r`` if its slope is rational, else None."""
    if r[0] == 0:
        return (0, sign(r[1]))
    t = as_scalar(r[1] / r[0])
    if not is_rational(t):
        return None
    s = sign(r[0])
    return _primitive((s, s * t))


def _find_period(angle, vs):
    """Integer automorphism of the angle shifting the vertex chain."""
    n = len(vs)
    c = n // 3
    A = ((vs[c][0], vs[c + 1][0]), (vs[c][1], vs[c + 1][1]))
    Ainv = mat_inverse(A)
    for p in range(1, n - c - 1):
        B = ((vs[c + p][0], vs[c + p + 1][0]), (vs[c + p][1], vs[c + p + 1][1]))
        M = mat_mul(B, Ainv)
        M = tuple(tuple(as_scalar(e) for e in row) for row in M)
        if not all(Fraction(e).denominator == 1 for row in M for e in row):
            continue
        if mat_det(M) != 1:
            continue
        if all(_preserves(M, r) for r in (angle.r1, angle.r2)):
            M = tuple(tuple(int(e) for e in row) for row in M)
            # every remaining vertex must follow the shift
            if all(tuple(mat_apply(M, vs[j])) == tuple(vs[j + p]) for j in range(n - p)):
                return M, p, c
    return None


def _conjugate_rays(angle):
    """A hyperbolic automorphism exists only for Galois-conjugate slopes."""
    (x1, y1), (x2, y2) = angle.r1, angle.r2
    return conjugate(as_scalar(y1 / x1)) == as_scalar(y2 / x2)


def _preserves(M, r):
    img = mat_apply(M, r)
    return det2(img, r) == 0 and img[0] * r[0] + img[1] * r[1] > 0


def sail_cf(angle: Angle, depth: int = 8, *, radius=None, period: bool = True) -> Sail:
    """Sail from regular continued fractions of the normalised boundary slopes.

    ``depth`` bounds the number of convergent pairs taken on each infinite
    side.  With ``radius`` the depth grows until both infinite ends leave
    the box ``max(|x|, |y|) <= radius``.
    """
    if not isinstance(angle, Angle):
        angle = Angle(*angle)
    if depth < 1:
        raise InvalidInput("depth must be positive")
    while True:
        vs, finite, ok = _chain(angle, depth)
        grow = ok is False
        if radius is not None:
            for end, fin in ((vs[0], finite[0]), (vs[-1], finite[1])):
                if not fin and max(abs(end[0]), abs(end[1])) <= radius:
                    grow = True
        if not grow or depth >= MAX_DEPTH:
            break
        depth *= 2
    if ok is False:
        raise ConsistencyError("sail halves did not join within the depth bound")
    per = None
    if period and not any(finite) and _conjugate_rays(angle):
        # a longer chain is kept if the automorphism needs it
        per = _find_period(angle, vs)
        while per is None and depth < MAX_DEPTH:
            depth *= 2
            longer, _, ok = _chain(angle, depth)
            if ok:
                vs = longer
                per = _find_period(angle, vs)
    if per is not None:
        M, p, c = per
        return Sail(angle, tuple(vs), M, p, c, None, finite)
    return Sail(angle, tuple(vs), None, 0, 0, None, finite)


# -- brute force ---------------------------------------------------------------

def _surd_coords(r):
    """Integers ``(px, qx, py, qy)`` and ``D`` with ``r`` a positive multiple of
    ``(px + qx sqrt D, py + qy sqrt D)``."""
    D = radicand(r[0], r[1]) or 0
    parts = []
    for c in r:
        if isinstance(c, QuadraticNumber):
            parts.append((Fraction(c.p, c.r), Fraction(c.q, c.r)))
        else:
            parts.append((Fraction(c), Fraction(0)))
    L = 1
    for a, b in parts:
        L = math.lcm(L, a.denominator, b.denominator)
    (a, b), (c, d) = parts
    return (int(a * L), int(b * L), int(c * L), int(d * L)), D


def sail_bruteforce(angle: Angle, radius: int, use_numba=None) -> Sail:
    """Origin-facing boundary of the hull of lattice points of the angle in a box.

    Edges whose supporting line meets both rays inside the box are sail
    edges of the infinite angle; their endpoints form the ``certified``
    index range.
    """
    if not isinstance(angle, Angle):
        angle = Angle(*angle)
    if radius < 1:
        raise InvalidInput("radius must be at least 1")
    (c1, D1), (c2, D2) = _surd_coords(angle.r1), _surd_coords(angle.r2)
    D = max(D1, D2)
    bound = max(abs(v) for v in c1 + c2) * 2 * radius
    if bound * bound * max(D, 1) >= _kernels.INT64_SAFE:
        raise InvalidInput("angle coordinates too large for the lattice kernel")
    xs, ys = _kernels.cone_points(c1, c2, D, radius, use_numba)
    if len(xs) == 0:
        raise EmptyAngle(f"no lattice point of the angle within radius {radius}")
    hull = [int(i) for i in _kernels.convex_hull(xs, ys, use_numba)]
    pts = [_ipoint(int(xs[i]), int(ys[i])) for i in hull]
    chain = _visible_chain(pts)
    cert = _certified(angle, chain, radius)
    return Sail(angle, tuple(chain), certified=cert)


def _visible_chain(pts):
    """Counterclockwise hull vertices -> the run facing O, ordered r1 to r2."""
    n = len(pts)
    if n == 1:
        return pts
    vis = [det2(pts[i], pts[(i + 1) % n]) < 0 for i in range(n)]
    if all(vis):
        raise ConsistencyError("origin inside the hull")
    # start the run just after an invisible edge
    start = next(i for i in range(n) if vis[i] and not vis[i - 1])
    run = [pts[start]]
    i = start
    while vis[i % n]:
        i += 1
        run.append(pts[i % n])
    return run[::-1]


def _certified(angle, chain, radius):
    good = []
    for k in range(len(chain) - 1):
        U, V = chain[k], chain[k + 1]
        e = (V[0] - U[0], V[1] - U[1])
        num = det2(e, U)
        ok = True
        for r in (angle.r1, angle.r2):
            den = det2(e, r)
            if den == 0:
                ok = False
                break
            t = as_scalar(num / den)
            if t <= 0 or abs(t * r[0]) > radius or abs(t * r[1]) > radius:
                ok = False
                break
        good.append(ok)
    idx = [k for k, g in enumerate(good) if g]
    if not idx:
        return None
    return (idx[0], idx[-1] + 2)


# -- forms ----------------------------------------------------------------------

def form_angles(f: BinaryQuadraticForm) -> list:
    """The four angles of the kernel complement, counterclockwise."""
    u, v = kernel_directions(f)
    if det2(u, v) < 0:
        u, v = v, u
    nu, nv = Point(-u[0], -u[1]), Point(-v[0], -v[1])
    return [Angle(u, v), Angle(v, nu), Angle(nu, nv), Angle(nv, u)]


def sails_of_form(f: BinaryQuadraticForm, depth: int = 8, **kw) -> list:
    return [sail_cf(a, depth, **kw) for a in form_angles(f)]


def markov_minimum_bruteforce(f: BinaryQuadraticForm, radius: int, use_numba=None):
    """``(min |f|, witness)`` over lattice points with ``0 < max(|x|,|y|) <= radius``.

    The witness is the point of smallest max-norm, then smallest ``|y|``,
    among the minimisers in the half plane ``x > 0 or (x = 0, y > 0)``.
    """
    if radius < 1:
        raise InvalidInput("radius must be at least 1")
    L = math.lcm(f.A.denominator, f.B.denominator, f.C.denominator)
    A, B, C = (int(c * L) for c in f.coefficients)
    if 3 * max(abs(A), abs(B), abs(C)) * radius * radius >= _kernels.INT64_SAFE:
        raise InvalidInput("coefficients too large for the lattice kernel")
    v, x, y = _kernels.form_abs_min(A, B, C, radius, use_numba)
    return Fraction(v, L), _ipoint(x, y)


def _sail_terms(f, sail):
    """Exact Perron terms at one period of vertices of a periodic sail."""
    vs, p, c = sail.vertices, sail.period_length, sail.period_start
    seg = lls(vs[c - 1:c + p + 2])
    # seg = (edge c-1, angle c, edge c, ..., angle c+p, edge c+p)
    per = list(seg[1:2 * p + 1])  # angle c, edge c, ..., edge c+p-1
    sig = orientation(f, sail.angle.r1, sail.angle.r2)
    root = sqrt(discriminant(f))
    out = []
    for j in range(p):
        rot = per[2 * j:] + per[:2 * j]
        center, right = rot[0], rot[1:] + rot[:1]
        left = list(reversed(rot[1:])) + [rot[0]]
        D = getattr(root, "D", None)
        den = as_scalar(center + tail_value(([], right), D) + tail_value(([], left), D))
        val = as_scalar(sig * root / den)
        V = vs[c + j]
        if evaluate(f, V) != val:
            raise ConsistencyError(f"sail vertex {tuple(V)}: f = {evaluate(f, V)} but term = {val}")
        out.append((PerronTerm(c + j, den, val), V))
    return out


def markov_minimum_sails(f: BinaryQuadraticForm, depth: int = 8) -> SpectrumReport:
    """Markov minimum from one period of vertices of each of the four sails.

    Each vertex value is also recomputed from the sail's own LLS sequence
    through the two-sided identity, as a self-check.
    """
    if not f.is_integral():
        raise NonIntegerCoefficients("markov_minimum_sails needs integer coefficients")
    disc = discriminant(f)
    if is_rational(sqrt(disc)):
        raise SquareDiscriminant("m(f) = 0 is attained on the kernel")
    sails = sails_of_form(f, depth)
    terms = []
    for s in sails:
        if s.period is None:
            raise NonConvergent("no automorphism found within the depth bound")
        terms.extend(_sail_terms(f, s))
    term = min((t for t, _ in terms), key=lambda t: abs(t.value))
    m = abs(term.value)
    # every listed vertex is exact, so pick the smallest one attaining m
    key = lambda V: (max(abs(V[0]), abs(V[1])), abs(V[1]), -V[0], -V[1])
    witness = min((V for s in sails for V in s.vertices if abs(evaluate(f, V)) == m), key=key)
    return SpectrumReport(f, m, as_scalar(sqrt(disc) / m), witness, term)


def oracle_mismatches(cf: Sail, bf: Sail, radius: int) -> list:
    """Disagreements between a continued-fraction sail and a brute-force one.

    Every vertex of ``cf`` inside the box must lie on the brute-force chain,
    in the same order, and both constructions must certify the same
    sub-chain.  An empty list means agreement.
    """
    out = []
    chain = [tuple(v) for v in bf.vertices]
    pos = {v: i for i, v in enumerate(chain)}
    inside = [tuple(v) for v in cf.vertices if max(abs(v[0]), abs(v[1])) <= radius]
    idx = []
    for v in inside:
        if v not in pos:
            out.append(f"vertex {v} missing from the brute-force chain")
        else:
            idx.append(pos[v])
    if idx != sorted(idx):
        out.append("vertex order differs")
    cc = _certified(cf.angle, list(cf.vertices), radius)
    mine = [tuple(v) for v in cf.vertices[cc[0]:cc[1]]] if cc else []
    theirs = chain[bf.certified[0]:bf.certified[1]] if bf.certified else []
    if mine != theirs:
        out.append(f"certified chains differ: {mine} vs {theirs}")
    return out
