"""Integer lattice kernels for the brute-force oracles.

Each kernel has a numba implementation and a pure numpy/Python fallback
with identical results.  Set ``LLSGEOM_DISABLE_NUMBA=1`` to force the
fallback.  Inputs are int64; the public wrappers in :mod:`llsgeom.sail`
check that no intermediate product can overflow.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

DISABLED = os.environ.get("LLSGEOM_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")
USE_NUMBA = numba is not None and not DISABLED

INT64_SAFE = 2**62


def _njit(fn):
    if numba is None:
        return fn
    return numba.njit(cache=True)(fn)


# -- minimum of |f| over a half box -----------------------------------------

def _key_less(x, y, bx, by):
    # tie-break: smaller max-norm, then smaller |y|, then larger x, then larger y
    m, bm = max(abs(x), abs(y)), max(abs(bx), abs(by))
    if m != bm:
        return m < bm
    if abs(y) != abs(by):
        return abs(y) < abs(by)
    if x != bx:
        return x > bx
    return y > by


def _form_abs_min_py(A, B, C, R):
    best, bx, by = -1, 0, 0
    for x in range(0, R + 1):
        for y in range(-R, R + 1):
            if x == 0 and y <= 0:
                continue
            v = abs(A * x * x + B * x * y + C * y * y)
            if best < 0 or v < best or (v == best and _key_less(x, y, bx, by)):
                best, bx, by = v, x, y
    return best, bx, by


_key_less_nb = _njit(_key_less)


def _form_abs_min_loop(A, B, C, R):
    best, bx, by = -1, 0, 0
    for x in range(0, R + 1):
        for y in range(-R, R + 1):
            if x == 0 and y <= 0:
                continue
            v = abs(A * x * x + B * x * y + C * y * y)
            if best < 0 or v < best or (v == best and _key_less_nb(x, y, bx, by)):
                best, bx, by = v, x, y
    return best, bx, by


_form_abs_min_nb = _njit(_form_abs_min_loop)


def form_abs_min_numpy(A, B, C, R, rows=256):
    """Vectorised scan, ``rows`` values of x at a time."""
    ys = np.arange(-R, R + 1, dtype=np.int64)
    best, cands = None, []
    for x0 in range(0, R + 1, rows):
        xs = np.arange(x0, min(x0 + rows, R + 1), dtype=np.int64)[:, None]
        v = np.abs(A * xs * xs + B * xs * ys + C * ys * ys)
        if x0 == 0:
            v[0, : R + 1] = np.iinfo(np.int64).max  # (0, y) with y <= 0
        m = int(v.min())
        if best is None or m < best:
            best, cands = m, []
        if m == best:
            ix, iy = np.nonzero(v == m)
            cands.extend(zip((xs[ix, 0]).tolist(), ys[iy].tolist()))
    bx, by = cands[0]
    for x, y in cands[1:]:
        if _key_less(x, y, bx, by):
            bx, by = x, y
    return best, bx, by


def form_abs_min(A, B, C, R, use_numba=None):
    """``(min |Ax^2+Bxy+Cy^2|, x, y)`` over the half box ``x > 0 or (x = 0, y > 0)``."""
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        best, x, y = _form_abs_min_nb(np.int64(A), np.int64(B), np.int64(C), np.int64(R))
        return int(best), int(x), int(y)
    return form_abs_min_numpy(int(A), int(B), int(C), int(R))


# -- primitive lattice points in a closed cone -------------------------------

def _gcd(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def _sign_surd(u, v, D):
    """Sign of ``u + v*sqrt(D)`` for integers (D = 0 for rational data)."""
    su = (u > 0) - (u < 0)
    sv = (v > 0) - (v < 0)
    if D == 0 or sv == 0:
        return su
    if su == 0 or su == sv:
        return sv
    uu, vv = u * u, v * v * D
    if uu > vv:
        return su
    return sv if uu < vv else 0


_gcd_nb = _njit(_gcd)
_sign_surd_nb = _njit(_sign_surd)


def _cone_loop(ray1, ray2, D, R):
    # ray = (px, qx, py, qy): direction (px + qx sqrt D, py + qy sqrt D)
    n = 2 * R + 1
    outx = np.empty(n * n, dtype=np.int64)
    outy = np.empty(n * n, dtype=np.int64)
    k = 0
    for x in range(-R, R + 1):
        for y in range(-R, R + 1):
            if _gcd_nb(x, y) != 1:
                continue
            # det(ray1, p) >= 0 and det(p, ray2) >= 0
            s1 = _sign_surd_nb(ray1[0] * y - ray1[2] * x, ray1[1] * y - ray1[3] * x, D)
            if s1 < 0:
                continue
            s2 = _sign_surd_nb(ray2[2] * x - ray2[0] * y, ray2[3] * x - ray2[1] * y, D)
            if s2 < 0:
                continue
            outx[k] = x
            outy[k] = y
            k += 1
    return outx[:k], outy[:k]


_cone_nb = _njit(_cone_loop)


def _sign_surd_vec(u, v, D):
    su, sv = np.sign(u), np.sign(v)
    if D == 0:
        return su
    uu, vv = u * u, v * v * D
    mixed = np.where(uu > vv, su, np.where(uu < vv, sv, 0))
    return np.where((su == 0) | (su == sv), sv, np.where(sv == 0, su, mixed))


def cone_points_numpy(ray1, ray2, D, R):
    r = np.arange(-R, R + 1, dtype=np.int64)
    X, Y = np.meshgrid(r, r, indexing="ij")
    X, Y = X.ravel(), Y.ravel()
    keep = np.gcd(X, Y) == 1
    p1, q1, p2, q2 = ray1
    keep &= _sign_surd_vec(p1 * Y - p2 * X, q1 * Y - q2 * X, D) >= 0
    p1, q1, p2, q2 = ray2
    keep &= _sign_surd_vec(p2 * X - p1 * Y, q2 * X - q1 * Y, D) >= 0
    return X[keep], Y[keep]


def cone_points(ray1, ray2, D, R, use_numba=None):
    """Primitive points of the closed cone spanned by two rays within the box.

    Rays are given as integer quadruples ``(px, qx, py, qy)`` meaning the
    direction ``(px + qx*sqrt(D), py + qy*sqrt(D))``; points come back
    sorted by ``(x, y)``.
    """
    if use_numba is None:
        use_numba = USE_NUMBA
    r1 = np.asarray(ray1, dtype=np.int64)
    r2 = np.asarray(ray2, dtype=np.int64)
    if use_numba:
        return _cone_nb(r1, r2, np.int64(D), np.int64(R))
    return cone_points_numpy(r1, r2, int(D), int(R))


# -- convex hull --------------------------------------------------------------

def _hull_loop(xs, ys):
    # Andrew's monotone chain; input sorted by (x, y); output counterclockwise
    n = xs.shape[0]
    idx = np.empty(2 * n + 1, dtype=np.int64)
    k = 0
    for i in range(n):
        while k >= 2 and (xs[idx[k - 1]] - xs[idx[k - 2]]) * (ys[i] - ys[idx[k - 2]]) - (
                ys[idx[k - 1]] - ys[idx[k - 2]]) * (xs[i] - xs[idx[k - 2]]) <= 0:
            k -= 1
        idx[k] = i
        k += 1
    t = k + 1
    for i in range(n - 2, -1, -1):
        while k >= t and (xs[idx[k - 1]] - xs[idx[k - 2]]) * (ys[i] - ys[idx[k - 2]]) - (
                ys[idx[k - 1]] - ys[idx[k - 2]]) * (xs[i] - xs[idx[k - 2]]) <= 0:
            k -= 1
        idx[k] = i
        k += 1
    if n == 1:
        return idx[:1]
    return idx[: k - 1]


_hull_nb = _njit(_hull_loop)


def hull_py(xs, ys):
    pts = list(zip(xs.tolist(), ys.tolist()))
    n = len(pts)
    if n == 1:
        return np.zeros(1, dtype=np.int64)

    def cross(o, a, b):
        return (pts[a][0] - pts[o][0]) * (pts[b][1] - pts[o][1]) - (
            pts[a][1] - pts[o][1]) * (pts[b][0] - pts[o][0])

    lower, upper = [], []
    for i in range(n):
        while len(lower) >= 2 and cross(lower[-2], lower[-1], i) <= 0:
            lower.pop()
        lower.append(i)
    for i in range(n - 1, -1, -1):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], i) <= 0:
            upper.pop()
        upper.append(i)
    return np.asarray(lower[:-1] + upper[:-1], dtype=np.int64)


def convex_hull(xs, ys, use_numba=None):
    """Indices of the counterclockwise hull of points sorted by (x, y)."""
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        return _hull_nb(np.asarray(xs, dtype=np.int64), np.asarray(ys, dtype=np.int64))
    return hull_py(np.asarray(xs), np.asarray(ys))
