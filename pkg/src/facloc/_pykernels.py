"""Pure-Python kernels.

Reference implementation of the hot loops. The compiled module
``facloc._ckernels`` exposes the same three functions with the same
argument conventions; ``facloc.kernels`` picks one at import time.

Points are passed as two parallel float lists (x and y). One-dimensional
callers pass zeros for y.
"""

from math import hypot

_MULTIPLICATIVE_EPSILON = 1 + 1e-14


def _in_circle(cx, cy, r, x, y):
    return hypot(x - cx, y - cy) <= r * _MULTIPLICATIVE_EPSILON


def _diameter(ax, ay, bx, by):
    cx = (ax + bx) / 2
    cy = (ay + by) / 2
    r = max(hypot(cx - ax, cy - ay), hypot(cx - bx, cy - by))
    return cx, cy, r


def _circumcircle(ax, ay, bx, by, qx, qy):
    # shift to the bounding-box center to limit cancellation
    ox = (min(ax, bx, qx) + max(ax, bx, qx)) / 2
    oy = (min(ay, by, qy) + max(ay, by, qy)) / 2
    ax -= ox
    ay -= oy
    bx -= ox
    by -= oy
    qx -= ox
    qy -= oy
    d = (ax * (by - qy) + bx * (qy - ay) + qx * (ay - by)) * 2.0
    if d == 0.0:
        return None
    sa = ax * ax + ay * ay
    sb = bx * bx + by * by
    sq = qx * qx + qy * qy
    x = (sa * (by - qy) + sb * (qy - ay) + sq * (ay - by)) / d
    y = (sa * (qx - bx) + sb * (ax - qx) + sq * (bx - ax)) / d
    r = max(hypot(x - ax, y - ay), hypot(x - bx, y - by), hypot(x - qx, y - qy))
    return x + ox, y + oy, r


def _cross(x0, y0, x1, y1, x2, y2):
    return (x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0)


def _circle_two(xs, ys, end, px, py, qx, qy):
    cx, cy, r = _diameter(px, py, qx, qy)
    left = None
    right = None
    for i in range(end):
        x = xs[i]
        y = ys[i]
        if _in_circle(cx, cy, r, x, y):
            continue
        cross = _cross(px, py, qx, qy, x, y)
        c = _circumcircle(px, py, qx, qy, x, y)
        if c is None:
            continue
        side = _cross(px, py, qx, qy, c[0], c[1])
        if cross > 0.0:
            if left is None or side > _cross(px, py, qx, qy, left[0], left[1]):
                left = c
        elif cross < 0.0:
            if right is None or side < _cross(px, py, qx, qy, right[0], right[1]):
                right = c
    if left is None and right is None:
        return cx, cy, r
    if left is None:
        return right
    if right is None:
        return left
    return left if left[2] <= right[2] else right


def _circle_one(xs, ys, end, px, py):
    cx, cy, r = px, py, 0.0
    for i in range(end):
        x = xs[i]
        y = ys[i]
        if not _in_circle(cx, cy, r, x, y):
            if r == 0.0:
                cx, cy, r = _diameter(px, py, x, y)
            else:
                cx, cy, r = _circle_two(xs, ys, i + 1, px, py, x, y)
    return cx, cy, r


def mec_shuffled(xs, ys):
    """Smallest enclosing circle of points already in randomized order.

    Returns ``(cx, cy, r)``. The caller owns the shuffle so that both
    backends see the same insertion order.
    """
    n = len(xs)
    if n == 0:
        raise ValueError("no points")
    cx, cy, r = xs[0], ys[0], 0.0
    for i in range(1, n):
        if not _in_circle(cx, cy, r, xs[i], ys[i]):
            cx, cy, r = _circle_one(xs, ys, i, xs[i], ys[i])
    return cx, cy, r


def max_cost(ax, ay, probs, px, py):
    """Sum over atoms of ``prob * max_i dist(point_i, atom)``."""
    total = 0.0
    n = len(px)
    for a in range(len(probs)):
        fx = ax[a]
        fy = ay[a]
        worst = 0.0
        for i in range(n):
            d = hypot(px[i] - fx, py[i] - fy)
            if d > worst:
                worst = d
        total += probs[a] * worst
    return total


def mean_distance(ax, ay, probs, qx, qy):
    """Expected distance from ``(qx, qy)`` to the lottery atoms."""
    total = 0.0
    for a in range(len(probs)):
        total += probs[a] * hypot(ax[a] - qx, ay[a] - qy)
    return total
