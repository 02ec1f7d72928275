"""Seeded random objects for the property tests."""
import random
from fractions import Fraction

from llsgeom.errors import ConsistencyError, InvalidInput
from llsgeom.exactnum import QuadraticNumber, as_scalar, conjugate
from llsgeom.forms import BinaryQuadraticForm, kernel_directions
from llsgeom.geometry import BrokenLine, Point, det2, is_f_broken_line, lls, mat_apply, mat_mul, reconstruct

FIELDS = (None, 2, 3, 5, 7, 13)


def rational(rng, bound=6, den=4, nonzero=False):
    while True:
        x = Fraction(rng.randint(-bound, bound), rng.randint(1, den))
        if x or not nonzero:
            return x


def quadratic(rng, D, bound=5):
    """An irrational element of Q(sqrt D)."""
    q = rng.choice([-3, -2, -1, 1, 2, 3])
    return as_scalar(QuadraticNumber(rng.randint(-bound, bound), q, rng.randint(1, 4), D))


def scalar(rng, D, nonzero=False):
    if D is None or rng.random() < 0.3:
        return rational(rng, nonzero=nonzero)
    return quadratic(rng, D)


def point(rng, D):
    while True:
        p = Point(scalar(rng, D), scalar(rng, D))
        if p.x or p.y:
            return p


def lls_sequence(rng, n_edges, D=None):
    return [scalar(rng, D, nonzero=True) for _ in range(2 * n_edges - 1)]


def det1_matrix(rng, D=None, steps=3):
    """Random determinant-one matrix with entries in Q or Q(sqrt D)."""
    M = ((1, 0), (0, 1))
    for _ in range(steps):
        s = scalar(rng, D)
        M = mat_mul(M, ((1, s), (0, 1)) if rng.random() < 0.5 else ((1, 0), (s, 1)))
    c = rational(rng, nonzero=True)
    return mat_mul(M, ((c, 0), (0, 1 / c)))


def unimodular(rng, steps=4):
    M = ((1, 0), (0, 1))
    for _ in range(steps):
        k = rng.randint(-3, 3)
        M = mat_mul(M, ((1, k), (0, 1)) if rng.random() < 0.5 else ((1, 0), (k, 1)))
    return M


def form(rng, D=None):
    """A form split over Q (D None) or with conjugate kernel slopes in Q(sqrt D)."""
    while True:
        if D is None:
            u, v = point(rng, None), point(rng, None)
            if det2(u, v) == 0:
                continue
            f = BinaryQuadraticForm.from_factors((u.y, u.x), (v.y, v.x), rational(rng, nonzero=True))
        else:
            t = quadratic(rng, D)
            f = BinaryQuadraticForm.from_factors((t, 1), (conjugate(t), 1), rational(rng, nonzero=True))
        return f


def _hit(a, b, d):
    """Point of the line ab on the line spanned by d, or None."""
    den = det2(d, (b[0] - a[0], b[1] - a[1]))
    if den == 0:
        return None
    t = -det2(d, a) / den
    p = Point(as_scalar(a[0] + t * (b[0] - a[0])), as_scalar(a[1] + t * (b[1] - a[1])))
    return None if p.x == 0 and p.y == 0 else p


def f_broken_line(rng, f, D=None, n_interior=None):
    """Random f-broken line: a reconstructed or random core, moved by a
    determinant-one map, with its end edges extended onto the kernel lines."""
    d1, d2 = kernel_directions(f)
    if rng.random() < 0.5:
        d1, d2 = d2, d1
    while True:
        m = n_interior or rng.randint(1, 5)
        try:
            if rng.random() < 0.5:
                core = list(reconstruct(lls_sequence(rng, m + 1, D)))
                M = det1_matrix(rng, D)
                core = [Point(*map(as_scalar, mat_apply(M, p))) for p in core]
            else:
                core = [point(rng, D) for _ in range(m + 2)]
        except (InvalidInput, ConsistencyError):
            continue
        a0, an = _hit(core[1], core[0], d1), _hit(core[-2], core[-1], d2)
        if a0 is None or an is None:
            continue
        try:
            b = BrokenLine(tuple([a0] + core[1:-1] + [an]))
            seq = lls(b)
        except InvalidInput:
            continue
        # a straight vertex gives a zero entry, which LLS sequences exclude
        if all(seq) and is_f_broken_line(b, f):
            return b


def ray(rng, D):
    """Integer direction, or a direction of quadratic slope in Q(sqrt D)."""
    while True:
        if D is None or rng.random() < 0.4:
            p = Point(Fraction(rng.randint(-6, 6)), Fraction(rng.randint(-6, 6)))
        else:
            s = rng.choice([-1, 1])
            t = quadratic(rng, D, bound=3)
            p = Point(Fraction(s), as_scalar(s * t)) if rng.random() < 0.5 else Point(as_scalar(s * t), Fraction(s))
        if p.x or p.y:
            return p


def angle(rng, D=None):
    """Random Angle (rays counterclockwise, not parallel)."""
    from llsgeom.sail import Angle

    while True:
        r1, r2 = ray(rng, D), ray(rng, D)
        d = det2(r1, r2)
        if d > 0:
            return Angle(r1, r2)
        if d < 0:
            return Angle(r2, r1)
