"""Planar primitives: distances, centroids, circumcircles, the smallest
enclosing circle, orthocenters and Euler-line data.

Points are plain tuples of floats of length 1 or 2. Planar routines accept
only 2-D points; lift 1-D data with ``y = 0`` before calling them.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels

Point = tuple[float, ...]

# relative collinearity threshold, |cross| <= COLLINEAR_TOL * scale**2
COLLINEAR_TOL = 1e-12
MEC_SEED = 20240601


class DegenerateTriangleError(ValueError):
    """Three points are collinear or coincide (within tolerance)."""


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: float

    def __post_init__(self):
        if not (math.isfinite(self.radius) and self.radius >= 0):
            raise ValueError(f"bad radius {self.radius!r}")

    def contains(self, p: Sequence[float], rel_tol: float = 1e-9) -> bool:
        return distance(self.center, p) <= self.radius + rel_tol * (1 + self.radius)


@dataclass(frozen=True)
class EulerReport:
    circumcenter: Point
    centroid: Point
    orthocenter: Point
    radius: float

    @property
    def collinearity(self) -> float:
        """Cross product of (G - O) and (H - O); zero on the Euler line."""
        o, g, h = self.circumcenter, self.centroid, self.orthocenter
        return (g[0] - o[0]) * (h[1] - o[1]) - (g[1] - o[1]) * (h[0] - o[0])


def as_point(coords: Iterable[float]) -> Point:
    p = tuple(float(c) for c in coords)
    if len(p) not in (1, 2):
        raise ValueError(f"point must have 1 or 2 coordinates, got {len(p)}")
    if not all(math.isfinite(c) for c in p):
        raise ValueError(f"non-finite coordinate in {p!r}")
    return p


def _planar(p: Sequence[float]) -> Point:
    p = as_point(p)
    if len(p) != 2:
        raise ValueError("planar primitive needs 2-D points")
    return p


def distance(p: Sequence[float], q: Sequence[float]) -> float:
    if len(p) != len(q):
        raise ValueError(f"dimension mismatch: {len(p)} vs {len(q)}")
    return math.dist(p, q)


def centroid(points: Sequence[Sequence[float]]) -> Point:
    if not points:
        raise ValueError("centroid of an empty set")
    dim = len(points[0])
    if any(len(p) != dim for p in points):
        raise ValueError("mixed dimensions")
    n = len(points)
    return tuple(math.fsum(p[k] for p in points) / n for k in range(dim))


def _cross3(a: Point, b: Point, c: Point) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _check_triangle(a: Point, b: Point, c: Point) -> None:
    scale = max(distance(a, b), distance(b, c), distance(a, c))
    if abs(_cross3(a, b, c)) <= COLLINEAR_TOL * scale * scale:
        raise DegenerateTriangleError(f"degenerate triangle {a}, {b}, {c}")


def circumcircle(a: Sequence[float], b: Sequence[float], c: Sequence[float]) -> Circle:
    a, b, c = _planar(a), _planar(b), _planar(c)
    _check_triangle(a, b, c)
    # translate to a; then the center solves a 2x2 system
    bx, by = b[0] - a[0], b[1] - a[1]
    cx, cy = c[0] - a[0], c[1] - a[1]
    d = 2.0 * (bx * cy - by * cx)
    sb = bx * bx + by * by
    sc = cx * cx + cy * cy
    ux = (cy * sb - by * sc) / d
    uy = (bx * sc - cx * sb) / d
    center = (ux + a[0], uy + a[1])
    radius = max(distance(center, a), distance(center, b), distance(center, c))
    return Circle(center, radius)


def orthocenter(a: Sequence[float], b: Sequence[float], c: Sequence[float]) -> Point:
    """Intersection of the altitudes from a and from b."""
    a, b, c = _planar(a), _planar(b), _planar(c)
    _check_triangle(a, b, c)
    bx, by = b[0] - a[0], b[1] - a[1]
    cx, cy = c[0] - a[0], c[1] - a[1]
    dot = bx * cx + by * cy
    det = bx * cy - by * cx
    return (a[0] - dot * (by - cy) / det, a[1] + dot * (bx - cx) / det)


def euler_data(a: Sequence[float], b: Sequence[float], c: Sequence[float]) -> EulerReport:
    circ = circumcircle(a, b, c)
    return EulerReport(
        circumcenter=circ.center,
        centroid=centroid([_planar(a), _planar(b), _planar(c)]),
        orthocenter=orthocenter(a, b, c),
        radius=circ.radius,
    )


def circumcenter_inside(a: Sequence[float], b: Sequence[float], c: Sequence[float]) -> bool:
    """True when no angle of the triangle is obtuse (closed condition)."""
    a, b, c = _planar(a), _planar(b), _planar(c)
    for p, q, r in ((a, b, c), (b, c, a), (c, a, b)):
        if (q[0] - p[0]) * (r[0] - p[0]) + (q[1] - p[1]) * (r[1] - p[1]) < 0:
            return False
    return True


def min_enclosing_circle(points: Sequence[Sequence[float]], seed: int = MEC_SEED) -> Circle:
    """Smallest circle containing every point (randomized incremental, Welzl).

    The insertion order is shuffled with a fixed seed, so results are
    reproducible.
    """
    if not points:
        raise ValueError("no points")
    pts = [_planar(p) for p in points]
    order = list(range(len(pts)))
    random.Random(seed).shuffle(order)
    cx, cy, r = kernels.mec_shuffled([pts[i][0] for i in order], [pts[i][1] for i in order])
    return Circle((cx, cy), r)


def min_enclosing_circle_bruteforce(points: Sequence[Sequence[float]]) -> Circle:
    """O(n^4) oracle: best feasible circle over all pairs and triples.

    Triple circles come from intersecting perpendicular bisectors, independent
    of the incremental algorithm's formula.
    """
    if not points:
        raise ValueError("no points")
    pts = np.array([_planar(p) for p in points], dtype=float)
    n = len(pts)
    if n == 1:
        return Circle(tuple(pts[0]), 0.0)

    pairs = np.array(list(itertools.combinations(range(n), 2)))
    centers = [(pts[pairs[:, 0]] + pts[pairs[:, 1]]) / 2]
    radii = [np.linalg.norm(pts[pairs[:, 0]] - centers[0], axis=1)]
    if n >= 3:
        tri = np.array(list(itertools.combinations(range(n), 3)))
        p, q, s = pts[tri[:, 0]], pts[tri[:, 1]], pts[tri[:, 2]]
        mat = 2.0 * np.stack([q - p, s - p], axis=1)
        det = np.linalg.det(mat)
        scale = np.ptp(pts[tri], axis=1).max(axis=1)
        ok = np.abs(det) > 1e-12 * np.maximum(scale, 1e-300) ** 2
        rhs = np.stack([(q * q).sum(1) - (p * p).sum(1), (s * s).sum(1) - (p * p).sum(1)], axis=1)
        c = np.linalg.solve(mat[ok], rhs[ok][..., None])[..., 0]
        centers.append(c)
        radii.append(np.linalg.norm(p[ok] - c, axis=1))
    centers = np.concatenate(centers)
    radii = np.concatenate(radii)
    far = np.linalg.norm(pts[None, :, :] - centers[:, None, :], axis=2).max(axis=1)
    feasible = far <= radii + 1e-12 * (1 + radii)
    best = np.argmin(np.where(feasible, far, np.inf))
    return Circle(tuple(float(v) for v in centers[best]), float(far[best]))
