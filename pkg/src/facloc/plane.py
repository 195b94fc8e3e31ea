"""Two-dimensional mechanisms.

* ``gcm`` -- coordinatewise lower median of the reports plus phantom points.
* ``minimum_bounding_box`` -- MinMaxP applied to each coordinate.
* ``centroid_extremes`` -- the centroid of the predicted extreme agents with
  probability 1/2, each of those agents' reports with probability 1/(2k).
* ``centroid_all`` -- the same lottery over every agent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .geometry import Point, as_point, centroid
from .model import ExtremeIds, Instance, Lottery, diameter, extreme_ids, perturb

DEFAULT_PERTURB_SEED = 42
DEFAULT_EPS_FACTOR = 1e-7


@dataclass(frozen=True)
class GcmConfig:
    phantoms: tuple[Point, ...] = ()

    def __post_init__(self):
        pts = tuple(as_point(p) for p in self.phantoms)
        if any(len(p) != 2 for p in pts):
            raise ValueError("phantom points must be 2-D")
        object.__setattr__(self, "phantoms", pts)


@dataclass(frozen=True)
class ExtremePrediction:
    ids: tuple[int, ...]

    def __post_init__(self):
        ids = tuple(int(i) for i in self.ids)
        if len(ids) < 2:
            raise ValueError("need at least two predicted extreme agents")
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate ids in {ids}")
        object.__setattr__(self, "ids", ids)


def _plane(inst: Instance) -> Instance:
    if inst.dim != 2:
        raise ValueError("plane mechanisms need a 2-D instance")
    return inst


def lower_median(values: Sequence[float]) -> float:
    vals = sorted(values)
    return vals[(len(vals) - 1) // 2]


def gcm(inst: Instance, cfg: GcmConfig) -> Lottery:
    pts = list(_plane(inst).points) + list(cfg.phantoms)
    return Lottery.point((lower_median([p[0] for p in pts]), lower_median([p[1] for p in pts])))


def minimum_bounding_box(inst: Instance, f_star: Sequence[float]) -> Lottery:
    xs, ys = _plane(inst).xs(), inst.ys()
    fx, fy = float(f_star[0]), float(f_star[1])
    return Lottery.point((min(max(fx, min(xs)), max(xs)), min(max(fy, min(ys)), max(ys))))


def _centroid_lottery(points: list[Point]) -> Lottery:
    k = len(points)
    atoms = [(centroid(points), 0.5)] + [(p, 0.5 / k) for p in points]
    return Lottery(tuple(atoms))


def centroid_extremes(inst: Instance, pred: ExtremePrediction | ExtremeIds | Sequence[int]) -> Lottery:
    """Uses the agents' reported locations, never predicted ones."""
    _plane(inst)
    if not isinstance(pred, ExtremePrediction):
        pred = ExtremePrediction(pred.ids if isinstance(pred, ExtremeIds) else tuple(pred))
    bad = [i for i in pred.ids if not 0 <= i < inst.n]
    if bad:
        raise IndexError(f"predicted ids {bad} out of range for n={inst.n}")
    return _centroid_lottery([inst.points[i] for i in pred.ids])


def accurate_extremes(inst: Instance) -> ExtremePrediction:
    return ExtremePrediction(extreme_ids(inst))


def centroid_extremes_perturbed(
    inst: Instance,
    epsilon: float | None = None,
    seed: int = DEFAULT_PERTURB_SEED,
    oracle: Callable[[Instance], ExtremePrediction] = accurate_extremes,
) -> Lottery:
    """Ask the oracle about a perturbed copy, then run on the original reports.

    ``epsilon`` defaults to 1e-7 times the instance diameter.
    """
    _plane(inst)
    if epsilon is None:
        epsilon = DEFAULT_EPS_FACTOR * diameter(inst)
    if epsilon <= 0:
        # all reports coincide; any extreme set gives the same point
        return Lottery.point(inst.points[0])
    pred = oracle(perturb(inst, epsilon, seed))
    return centroid_extremes(inst, pred)


def centroid_all(inst: Instance) -> Lottery:
    return _centroid_lottery(list(_plane(inst).points))
