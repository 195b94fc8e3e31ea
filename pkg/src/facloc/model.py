"""Instances, predictions, lotteries and exact egalitarian costs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable, Iterable, Sequence, Union

import numpy as np

from . import kernels
from .geometry import Point, as_point, distance, min_enclosing_circle

INF = math.inf
PROB_TOL = 1e-12
MERGE_TOL = 1e-12
TIE_TOL = 1e-9


@dataclass(frozen=True)
class Instance:
    """A reported location profile. Agents are indexed from 0."""

    dim: int
    points: tuple[Point, ...]

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise ValueError(f"dim must be 1 or 2, got {self.dim!r}")
        pts = tuple(as_point(p) for p in self.points)
        if not pts:
            raise ValueError("instance needs at least one agent")
        if any(len(p) != self.dim for p in pts):
            raise ValueError(f"all points must have dimension {self.dim}")
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, points: Iterable[Any]) -> "Instance":
        """Build from numbers (1-D) or coordinate pairs (2-D)."""
        pts = [(p,) if isinstance(p, (int, float)) else tuple(p) for p in points]
        if not pts:
            raise ValueError("instance needs at least one agent")
        return cls(len(pts[0]), tuple(pts))

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def x_left(self) -> float:
        self._need_line()
        return min(p[0] for p in self.points)

    @property
    def x_right(self) -> float:
        self._need_line()
        return max(p[0] for p in self.points)

    @property
    def midpoint(self) -> float:
        return (self.x_left + self.x_right) / 2

    def _need_line(self):
        if self.dim != 1:
            raise ValueError("defined for 1-D instances only")

    def xs(self) -> list[float]:
        return [p[0] for p in self.points]

    def ys(self) -> list[float]:
        return [p[1] if self.dim == 2 else 0.0 for p in self.points]

    def replace(self, i: int, p: Sequence[float]) -> "Instance":
        pts = list(self.points)
        pts[i] = tuple(p)
        return Instance(self.dim, tuple(pts))

    def scaled(self, s: float, t: Sequence[float]) -> "Instance":
        return Instance(self.dim, tuple(tuple(s * c + tk for c, tk in zip(p, t)) for p in self.points))


# --- predictions -----------------------------------------------------------


@dataclass(frozen=True)
class FullLocations:
    points: tuple[Point, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(as_point(p) for p in self.points))


@dataclass(frozen=True)
class OptimalFacility:
    point: Point

    def __post_init__(self):
        object.__setattr__(self, "point", as_point(self.point))


@dataclass(frozen=True)
class ExtremeIds:
    ids: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ids", tuple(int(i) for i in self.ids))


@dataclass(frozen=True)
class NoPrediction:
    pass


Prediction = Union[FullLocations, OptimalFacility, ExtremeIds, NoPrediction]


def check_prediction(pred: Prediction, inst: Instance) -> None:
    if isinstance(pred, FullLocations):
        if len(pred.points) != inst.n or any(len(p) != inst.dim for p in pred.points):
            raise ValueError("full-location prediction must match the instance shape")
    elif isinstance(pred, OptimalFacility):
        if len(pred.point) != inst.dim:
            raise ValueError("facility prediction has the wrong dimension")
    elif isinstance(pred, ExtremeIds):
        if len(set(pred.ids)) != len(pred.ids) or any(not 0 <= i < inst.n for i in pred.ids):
            raise ValueError(f"extreme ids {pred.ids} invalid for n={inst.n}")


# --- lotteries -------------------------------------------------------------


def _same_point(p: Point, q: Point) -> bool:
    return all(abs(a - b) <= MERGE_TOL for a, b in zip(p, q))


@dataclass(frozen=True)
class Lottery:
    """Finitely supported distribution over facility points.

    Construction merges atoms at (numerically) identical points, drops
    zero-mass atoms and sorts the support, so equal lotteries compare equal.
    """

    atoms: tuple[tuple[Point, float], ...]

    def __post_init__(self):
        merged: list[list] = []
        dim = None
        for point, prob in self.atoms:
            point = as_point(point)
            prob = float(prob)
            if dim is None:
                dim = len(point)
            elif len(point) != dim:
                raise ValueError("lottery atoms of mixed dimension")
            if not (prob >= 0 and math.isfinite(prob)):
                raise ValueError(f"bad probability {prob!r}")
            if prob == 0:
                continue
            for entry in merged:
                if _same_point(entry[0], point):
                    entry[1] += prob
                    break
            else:
                merged.append([point, prob])
        total = math.fsum(p for _, p in merged)
        if not merged or abs(total - 1.0) > PROB_TOL:
            raise ValueError(f"probabilities sum to {total!r}, expected 1")
        merged.sort(key=lambda e: e[0])
        object.__setattr__(self, "atoms", tuple((p, w) for p, w in merged))

    @classmethod
    def point(cls, p: Sequence[float]) -> "Lottery":
        return cls(((tuple(p), 1.0),))

    @classmethod
    def mix(cls, parts: Iterable[tuple[float, "Lottery"]]) -> "Lottery":
        return cls(tuple((pt, w * pr) for w, lot in parts for pt, pr in lot.atoms))

    @property
    def dim(self) -> int:
        return len(self.atoms[0][0])

    @property
    def support(self) -> list[Point]:
        return [p for p, _ in self.atoms]

    @property
    def probs(self) -> list[float]:
        return [w for _, w in self.atoms]

    def mass(self, pred: Callable[[Point], bool]) -> float:
        return math.fsum(w for p, w in self.atoms if pred(p))

    def prob_of(self, p: Sequence[float]) -> float:
        return self.mass(lambda q: _same_point(q, tuple(p)))

    def _xy(self):
        xs = [p[0] for p, _ in self.atoms]
        ys = [p[1] for p, _ in self.atoms] if self.dim == 2 else [0.0] * len(xs)
        return xs, ys

    def to_json(self) -> list[dict]:
        return [{"point": list(p), "prob": w} for p, w in self.atoms]


# --- costs -----------------------------------------------------------------


@dataclass(frozen=True)
class OptimalSolution:
    facility: Point
    cost: float


def egalitarian_cost(lottery: Lottery, inst: Instance) -> float:
    """Expected maximum agent distance: sum over atoms of prob * max_i d(x_i, atom)."""
    if lottery.dim != inst.dim:
        raise ValueError("lottery and instance dimensions differ")
    ax, ay = lottery._xy()
    return kernels.max_cost(ax, ay, lottery.probs, inst.xs(), inst.ys())


def agent_expected_cost(lottery: Lottery, agent: Sequence[float]) -> float:
    if len(agent) != lottery.dim:
        raise ValueError("agent and lottery dimensions differ")
    ax, ay = lottery._xy()
    return kernels.mean_distance(ax, ay, lottery.probs, float(agent[0]), float(agent[1]) if len(agent) == 2 else 0.0)


@lru_cache(maxsize=4096)
def optimal_solution(inst: Instance) -> OptimalSolution:
    if inst.dim == 1:
        return OptimalSolution((inst.midpoint,), (inst.x_right - inst.x_left) / 2)
    circ = min_enclosing_circle(inst.points)
    return OptimalSolution(circ.center, circ.radius)


def approx_ratio(lottery: Lottery, inst: Instance) -> float:
    cost = egalitarian_cost(lottery, inst)
    opt = optimal_solution(inst).cost
    if opt == 0:
        return 1.0 if cost == 0 else INF
    return cost / opt


def diameter(inst: Instance) -> float:
    pts = np.asarray(inst.points, dtype=float)
    return float(np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2).max())


def perturb(inst: Instance, epsilon: float, seed: int) -> Instance:
    """Move every point by an independent seeded offset of norm at most epsilon."""
    if inst.dim != 2:
        raise ValueError("perturb expects a 2-D instance")
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    rng = np.random.default_rng(seed)
    angle = rng.uniform(0.0, 2 * math.pi, inst.n)
    radius = epsilon * np.sqrt(rng.uniform(0.0, 1.0, inst.n))
    return Instance(2, tuple(
        (x + r * math.cos(a), y + r * math.sin(a))
        for (x, y), r, a in zip(inst.points, radius.tolist(), angle.tolist())
    ))


def extreme_ids(inst: Instance, tie_tol: float = TIE_TOL) -> tuple[int, ...]:
    """Indices of agents at (numerically) maximum distance from the optimum."""
    opt = optimal_solution(inst)
    r = opt.cost
    return tuple(i for i, p in enumerate(inst.points)
                 if distance(p, opt.facility) >= r - tie_tol * (1 + r))


def accurate_prediction(kind: str, inst: Instance) -> Prediction:
    """The correct prediction of the given kind for ``inst``."""
    if kind == "full":
        return FullLocations(inst.points)
    if kind == "facility":
        return OptimalFacility(optimal_solution(inst).facility)
    if kind == "extreme_ids":
        return ExtremeIds(extreme_ids(inst))
    if kind == "none":
        return NoPrediction()
    raise ValueError(f"unknown prediction kind {kind!r}")


# --- JSON ------------------------------------------------------------------


def prediction_from_json(obj: dict | None) -> Prediction:
    if obj is None:
        return NoPrediction()
    kind = obj.get("kind", "none")
    if kind == "full":
        return FullLocations(tuple(tuple(p) if isinstance(p, list) else (p,) for p in obj["points"]))
    if kind == "facility":
        pt = obj["point"]
        return OptimalFacility(tuple(pt) if isinstance(pt, list) else (pt,))
    if kind == "extreme_ids":
        return ExtremeIds(tuple(obj["ids"]))
    if kind == "none":
        return NoPrediction()
    raise ValueError(f"unknown prediction kind {kind!r}")


def prediction_to_json(pred: Prediction) -> dict:
    if isinstance(pred, FullLocations):
        return {"kind": "full", "points": [list(p) for p in pred.points]}
    if isinstance(pred, OptimalFacility):
        return {"kind": "facility", "point": list(pred.point)}
    if isinstance(pred, ExtremeIds):
        return {"kind": "extreme_ids", "ids": list(pred.ids)}
    return {"kind": "none"}


def instance_from_json(obj: dict) -> tuple[Instance, Prediction]:
    """Parse ``{"dim": .., "points": [[..], ..], "prediction": {..}}``."""
    if not isinstance(obj, dict) or "points" not in obj:
        raise ValueError("instance JSON needs a 'points' array")
    raw = obj["points"]
    if not isinstance(raw, list) or not raw:
        raise ValueError("'points' must be a nonempty array")
    pts = tuple(tuple(p) if isinstance(p, list) else (p,) for p in raw)
    dim = obj.get("dim", len(pts[0]))
    inst = Instance(dim, pts)
    pred = prediction_from_json(obj.get("prediction"))
    check_prediction(pred, inst)
    return inst, pred


def instance_to_json(inst: Instance, pred: Prediction = NoPrediction()) -> dict:
    return {"dim": inst.dim, "points": [list(p) for p in inst.points],
            "prediction": prediction_to_json(pred)}
