# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Same contract as ``facloc._pykernels``."""

from libc.math cimport hypot
from libc.stdlib cimport malloc, free

cdef double _EPS = 1 + 1e-14


cdef struct Circ:
    double x
    double y
    double r
    bint ok


cdef inline bint _in(Circ c, double x, double y) nogil:
    return hypot(x - c.x, y - c.y) <= c.r * _EPS


cdef inline double _cross(double x0, double y0, double x1, double y1,
                          double x2, double y2) nogil:
    return (x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0)


cdef Circ _diameter(double ax, double ay, double bx, double by) nogil:
    cdef Circ c
    c.x = (ax + bx) / 2
    c.y = (ay + by) / 2
    c.r = max(hypot(c.x - ax, c.y - ay), hypot(c.x - bx, c.y - by))
    c.ok = True
    return c


cdef Circ _circumcircle(double ax, double ay, double bx, double by,
                        double qx, double qy) nogil:
    cdef Circ c
    cdef double ox = (min(ax, bx, qx) + max(ax, bx, qx)) / 2
    cdef double oy = (min(ay, by, qy) + max(ay, by, qy)) / 2
    ax -= ox
    ay -= oy
    bx -= ox
    by -= oy
    qx -= ox
    qy -= oy
    cdef double d = (ax * (by - qy) + bx * (qy - ay) + qx * (ay - by)) * 2.0
    c.ok = d != 0.0
    if not c.ok:
        return c
    cdef double sa = ax * ax + ay * ay
    cdef double sb = bx * bx + by * by
    cdef double sq = qx * qx + qy * qy
    cdef double x = (sa * (by - qy) + sb * (qy - ay) + sq * (ay - by)) / d
    cdef double y = (sa * (qx - bx) + sb * (ax - qx) + sq * (bx - ax)) / d
    c.r = max(hypot(x - ax, y - ay), hypot(x - bx, y - by), hypot(x - qx, y - qy))
    c.x = x + ox
    c.y = y + oy
    return c


cdef Circ _circle_two(double* xs, double* ys, Py_ssize_t end,
                      double px, double py, double qx, double qy) nogil:
    cdef Circ circ = _diameter(px, py, qx, qy)
    cdef Circ left, right, c
    left.ok = False
    right.ok = False
    cdef Py_ssize_t i
    cdef double x, y, cross, side
    for i in range(end):
        x = xs[i]
        y = ys[i]
        if _in(circ, x, y):
            continue
        cross = _cross(px, py, qx, qy, x, y)
        c = _circumcircle(px, py, qx, qy, x, y)
        if not c.ok:
            continue
        side = _cross(px, py, qx, qy, c.x, c.y)
        if cross > 0.0:
            if not left.ok or side > _cross(px, py, qx, qy, left.x, left.y):
                left = c
        elif cross < 0.0:
            if not right.ok or side < _cross(px, py, qx, qy, right.x, right.y):
                right = c
    if not left.ok and not right.ok:
        return circ
    if not left.ok:
        return right
    if not right.ok:
        return left
    return left if left.r <= right.r else right


cdef Circ _circle_one(double* xs, double* ys, Py_ssize_t end,
                      double px, double py) nogil:
    cdef Circ c
    c.x = px
    c.y = py
    c.r = 0.0
    c.ok = True
    cdef Py_ssize_t i
    for i in range(end):
        if not _in(c, xs[i], ys[i]):
            if c.r == 0.0:
                c = _diameter(px, py, xs[i], ys[i])
            else:
                c = _circle_two(xs, ys, i + 1, px, py, xs[i], ys[i])
    return c


cdef double* _copy(seq, Py_ssize_t n) except NULL:
    cdef double* buf = <double*> malloc(max(n, 1) * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = seq[i]
    return buf


def mec_shuffled(xs, ys):
    cdef Py_ssize_t n = len(xs)
    if n == 0:
        raise ValueError("no points")
    cdef double* bx = _copy(xs, n)
    cdef double* by = _copy(ys, n)
    cdef Circ c
    cdef Py_ssize_t i
    c.x = bx[0]
    c.y = by[0]
    c.r = 0.0
    c.ok = True
    with nogil:
        for i in range(1, n):
            if not _in(c, bx[i], by[i]):
                c = _circle_one(bx, by, i, bx[i], by[i])
    free(bx)
    free(by)
    return c.x, c.y, c.r


def max_cost(ax, ay, probs, px, py):
    cdef Py_ssize_t m = len(probs)
    cdef Py_ssize_t n = len(px)
    cdef double* fx = _copy(ax, m)
    cdef double* fy = _copy(ay, m)
    cdef double* w = _copy(probs, m)
    cdef double* qx = _copy(px, n)
    cdef double* qy = _copy(py, n)
    cdef double total = 0.0, worst, d
    cdef Py_ssize_t a, i
    with nogil:
        for a in range(m):
            worst = 0.0
            for i in range(n):
                d = hypot(qx[i] - fx[a], qy[i] - fy[a])
                if d > worst:
                    worst = d
            total += w[a] * worst
    free(fx)
    free(fy)
    free(w)
    free(qx)
    free(qy)
    return total


def mean_distance(ax, ay, probs, double qx, double qy):
    cdef Py_ssize_t m = len(probs)
    cdef double total = 0.0
    cdef Py_ssize_t a
    for a in range(m):
        total += <double> probs[a] * hypot(<double> ax[a] - qx, <double> ay[a] - qy)
    return total
