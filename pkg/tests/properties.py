"""Single randomized cases for the property suite.

Each function draws one random instance, asserts the law exactly and
returns how many individual checks it made. The unit tests run a few
hundred of them; the acceptance module runs enough to pass 10^4.
"""
from llsgeom.cf import INF, eval_finite
from llsgeom.errors import InvalidInput
from llsgeom.exactnum import as_scalar
from llsgeom.forms import evaluate
from llsgeom.geometry import (BrokenLine, Point, apply_linear, det2, lls, mat_apply, mat_det,
                              mat_inverse, mat_mul, reconstruct, signature)
from llsgeom.perron import perron_rhs_finite, verify_identity

from generators import det1_matrix, f_broken_line, form, lls_sequence, point, rational


def random_line(rng, D, n=None, nonzero=True):
    """Random broken line whose LLS is defined (and has no zero entry)."""
    while True:
        vs = [point(rng, D) for _ in range(n or rng.randint(2, 7))]
        try:
            b = BrokenLine(tuple(vs))
            seq = lls(b)
        except InvalidInput:
            continue
        if not nonzero or all(seq):
            return b


def identity_case(rng, D):
    f = form(rng, D)
    b = f_broken_line(rng, f, D)
    for k in range(1, len(b) - 1):
        assert perron_rhs_finite(f, b, k) == evaluate(f, b[k]), (f, b, k)
    assert verify_identity(f, b).passed
    return len(b) - 2


def invariance_case(rng, D):
    b = random_line(rng, D, nonzero=False)
    M = det1_matrix(rng, D)
    c = apply_linear(M, b)
    assert lls(c) == lls(b)
    if det2(b[0], b[-1]) != 0:
        assert signature(c) == signature(b)
    return 1


def lls_of_reconstruct_case(rng, D):
    s = lls_sequence(rng, rng.randint(1, 6), D)
    assert list(lls(reconstruct(s))) == s
    return 1


def reconstruct_of_lls_case(rng, D):
    """reconstruct(lls(b)) is the image of b under one determinant-1 map."""
    b = random_line(rng, D)
    r = reconstruct(lls(b))
    B = ((b[0].x, b[1].x), (b[0].y, b[1].y))
    R = ((r[0].x, r[1].x), (r[0].y, r[1].y))
    T = mat_mul(R, mat_inverse(B))
    T = tuple(tuple(as_scalar(e) for e in row) for row in T)
    assert mat_det(T) == 1
    for p, q in zip(b, r):
        assert tuple(map(as_scalar, mat_apply(T, p))) == tuple(q)
    return 1


def endpoint_slope_case(rng, D):
    s = lls_sequence(rng, rng.randint(1, 6), D)
    end = reconstruct(s)[-1]
    v = eval_finite(s)
    if v is INF:
        assert end.x == 0
    else:
        assert end.y == v * end.x
    return 1


def collinear_endpoints_case(rng, D):
    """Lines that share A0, start along one ray and end on one line through O
    have equal continued fractions."""
    s = lls_sequence(rng, rng.randint(1, 5), D)
    a = reconstruct(s)
    while True:
        t = abs(rational(rng, nonzero=True))
        c = rational(rng, nonzero=True)
        inner = [point(rng, D) for _ in range(rng.randint(0, 3))]
        b1 = Point(a[0].x, as_scalar(t * a[1].y))
        end = Point(as_scalar(c * a[-1].x), as_scalar(c * a[-1].y))
        try:
            b = BrokenLine(tuple([a[0], b1] + inner + [end]))
            seq = lls(b)
        except InvalidInput:
            continue
        if all(seq):
            break
    assert eval_finite(seq) == eval_finite(lls(a))
    return 1


CASES = (
    identity_case,
    invariance_case,
    lls_of_reconstruct_case,
    reconstruct_of_lls_case,
    endpoint_slope_case,
    collinear_endpoints_case,
)
