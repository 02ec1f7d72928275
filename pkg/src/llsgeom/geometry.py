"""Points, oriented areas, broken lines and their LLS sequences."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    EdgeThroughOrigin,
    InvalidInput,
    NotUnimodular,
    SignatureUndefined,
    SingularStep,
)
from .exactnum import Scalar, as_scalar, sign

__all__ = [
    "Point",
    "as_point",
    "BrokenLine",
    "det2",
    "lls",
    "signature",
    "reconstruct",
    "apply_linear",
    "apply_unimodular",
    "is_f_broken_line",
    "mat_mul",
    "mat_det",
    "mat_apply",
    "mat_inverse",
    "IDENTITY",
]

Matrix = tuple  # ((a, b), (c, d))
IDENTITY = ((1, 0), (0, 1))


class Point(NamedTuple):
    x: Scalar
    y: Scalar


def as_point(p) -> Point:
    if len(p) != 2:
        raise InvalidInput(f"a point has two coordinates, got {p!r}")
    return Point(as_scalar(p[0]), as_scalar(p[1]))


def det2(u, v):
    """Oriented area ``u.x*v.y - u.y*v.x``."""
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class BrokenLine:
    vertices: tuple

    def __post_init__(self):
        vs = tuple(as_point(p) for p in self.vertices)
        if len(vs) < 2:
            raise InvalidInput("a broken line needs at least two vertices")
        for k, v in enumerate(vs):
            if v.x == 0 and v.y == 0:
                raise InvalidInput(f"vertex {k} is the origin")
        for k in range(len(vs) - 1):
            if vs[k] == vs[k + 1]:
                raise InvalidInput(f"edge {k} has zero length")
        object.__setattr__(self, "vertices", vs)

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i]


def _as_line(b) -> BrokenLine:
    return b if isinstance(b, BrokenLine) else BrokenLine(tuple(b))


def lls(b) -> tuple:
    """LLS sequence ``(a0, ..., a_{2n})`` of a broken line with n+1 edges.

    Even entries are the oriented areas ``det(OA_k, OA_{k+1})``; the odd
    entry at a vertex is ``det(A_k A_{k-1}, A_k A_{k+1})`` over the product
    of its two neighbouring even entries.
    """
    vs = _as_line(b).vertices
    n = len(vs) - 1
    out = [None] * (2 * n - 1)
    for k in range(n):
        a = det2(vs[k], vs[k + 1])
        if a == 0:
            raise EdgeThroughOrigin(k)
        out[2 * k] = as_scalar(a)
    for k in range(1, n):
        xk, yk = vs[k]
        u = (vs[k - 1][0] - xk, vs[k - 1][1] - yk)
        w = (vs[k + 1][0] - xk, vs[k + 1][1] - yk)
        out[2 * k - 1] = as_scalar(det2(u, w) / (out[2 * k - 2] * out[2 * k]))
    return tuple(out)


def signature(b) -> int:
    """Sign of ``det(OA_0, OA_n)``."""
    vs = _as_line(b).vertices
    s = sign(det2(vs[0], vs[-1]))
    if s == 0:
        raise SignatureUndefined("endpoints are collinear with the origin")
    return s


def reconstruct(s: Sequence) -> BrokenLine:
    """The broken line with ``A0 = (1, 0)``, ``A1 = (1, a0)`` and LLS ``s``."""
    s = [as_scalar(a) for a in s]
    if len(s) % 2 == 0:
        raise InvalidInput("an LLS sequence has odd length")
    if any(a == 0 for a in s):
        raise InvalidInput("LLS entries must be nonzero")
    one, zero = Fraction(1), Fraction(0)
    vs = [Point(one, zero), Point(one, s[0])]
    for k in range(1, (len(s) + 1) // 2):
        prev, cur = vs[-2], vs[-1]
        area = s[2 * k]
        ux, uy = prev[0] - cur[0], prev[1] - cur[1]
        # det(cur, X) = area ; det(u, X - cur) = s[2k-1] s[2k-2] s[2k]
        rhs = s[2 * k - 1] * s[2 * k - 2] * area + det2((ux, uy), cur)
        m = det2(cur, (ux, uy))
        if m == 0:
            raise SingularStep(f"step {k}")
        # rows: (-cur.y, cur.x) . X = area ; (-uy, ux) . X = rhs
        x = as_scalar((area * ux - cur[0] * rhs) / m)
        y = as_scalar((area * uy - cur[1] * rhs) / m)
        vs.append(Point(x, y))
    return BrokenLine(tuple(vs))


def mat_det(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def mat_mul(a, b):
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def mat_apply(m, p):
    return (m[0][0] * p[0] + m[0][1] * p[1], m[1][0] * p[0] + m[1][1] * p[1])


def mat_inverse(m):
    d = mat_det(m)
    if d == 0:
        raise InvalidInput("singular matrix")
    (a, b), (c, e) = m
    if d in (1, -1):
        return ((e * d, -b * d), (-c * d, a * d))
    return ((as_scalar(e / d), as_scalar(-b / d)), (as_scalar(-c / d), as_scalar(a / d)))


def apply_linear(m, b) -> BrokenLine:
    """Image of a broken line under a determinant-1 linear map."""
    if mat_det(m) != 1:
        raise NotUnimodular(f"det = {mat_det(m)}")
    return BrokenLine(tuple(mat_apply(m, p) for p in _as_line(b).vertices))


def apply_unimodular(m, b) -> BrokenLine:
    """Image under an integer matrix of determinant 1."""
    for row in m:
        for e in row:
            if isinstance(e, bool) or not (isinstance(e, int) or (
                    isinstance(e, Fraction) and e.denominator == 1)):
                raise NotUnimodular(f"non-integer entry {e!r}")
    return apply_linear(m, b)


def is_f_broken_line(b, f) -> bool:
    """Endpoints on distinct kernel lines of ``f`` and no edge line through O."""
    from .forms import kernel_index

    vs = _as_line(b).vertices
    i0, i1 = kernel_index(f, vs[0]), kernel_index(f, vs[-1])
    if i0 is None or i1 is None or i0 == i1:
        return False
    return all(det2(vs[k], vs[k + 1]) != 0 for k in range(len(vs) - 1))


def points(b: Iterable) -> list[Point]:
    return [as_point(p) for p in b]
