"""Truthfulness audits, consistency/robustness estimation and witness replays.

Every expectation is an exact finite sum over lottery atoms. Grid audits are
one-sided: a reported violation is a real violation, while a pass only
certifies truthfulness on the deviations that were tried.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import line, plane
from .geometry import Point
from .model import (
    ExtremeIds,
    FullLocations,
    Instance,
    Lottery,
    NoPrediction,
    OptimalFacility,
    Prediction,
    accurate_prediction,
    agent_expected_cost,
    approx_ratio,
    diameter,
    egalitarian_cost,
    extreme_ids,
    optimal_solution,
    perturb,
)

TRUTH_TOL = 1e-9

DeviationCosts = Callable[[Instance, Prediction, int, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Mechanism:
    """A map (instance, prediction) -> lottery with an identifier.

    ``kind`` names the prediction type it consumes; ``deviation_costs`` is an
    optional vectorized shortcut returning agent ``i``'s expected cost for a
    batch of unilateral misreports (prediction held fixed), or None to defer
    to re-running the mechanism.
    """

    name: str
    fn: Callable[[Instance, Prediction], Lottery]
    kind: str = "none"
    dim: int = 1
    deviation_costs: DeviationCosts | None = None
    accurate: Callable[[Instance], Prediction] | None = None

    def __call__(self, inst: Instance, pred: Prediction = NoPrediction()) -> Lottery:
        return self.fn(inst, pred)

    def accurate_prediction(self, inst: Instance) -> Prediction:
        if self.accurate is not None:
            return self.accurate(inst)
        return accurate_prediction(self.kind, inst)


def _facility(pred: Prediction, inst: Instance) -> Point:
    if isinstance(pred, OptimalFacility):
        return pred.point
    if isinstance(pred, FullLocations):
        return optimal_solution(Instance(inst.dim, pred.points)).facility
    raise ValueError(f"mechanism needs a facility prediction, got {type(pred).__name__}")


def _ids(pred: Prediction, inst: Instance) -> tuple[int, ...]:
    if isinstance(pred, ExtremeIds):
        return pred.ids
    if isinstance(pred, FullLocations):
        return extreme_ids(Instance(inst.dim, pred.points))
    raise ValueError(f"mechanism needs an extreme-id prediction, got {type(pred).__name__}")


# --- vectorized deviation costs for the planar mechanisms ------------------


def _centroid_dev_costs(inst: Instance, ids: Sequence[int], i: int, devs: np.ndarray) -> np.ndarray:
    xi = np.asarray(inst.points[i])
    if i not in ids:
        lot = plane._centroid_lottery([inst.points[j] for j in ids])
        return np.full(len(devs), agent_expected_cost(lot, inst.points[i]))
    k = len(ids)
    others = np.asarray([inst.points[j] for j in ids if j != i]).reshape(-1, 2)
    g = (others.sum(axis=0) + devs) / k
    fixed = np.linalg.norm(others - xi, axis=1).sum()
    return 0.5 * np.linalg.norm(g - xi, axis=1) + (fixed + np.linalg.norm(devs - xi, axis=1)) / (2 * k)


def _order_stat_with(values: np.ndarray, t: int, v: np.ndarray) -> np.ndarray:
    """t-th smallest of ``values`` plus one extra value, for each extra value v."""
    s = np.sort(values)
    lo = s[t - 1] if t >= 1 else -np.inf
    hi = s[t] if t < len(s) else np.inf
    return np.clip(v, lo, hi)


def _gcm_dev_costs(phantoms, inst: Instance, pred: Prediction, i: int, devs: np.ndarray) -> np.ndarray:
    pts = np.asarray(inst.points)
    others = np.delete(pts, i, axis=0)
    extra = np.asarray(phantoms).reshape(-1, 2)
    pool = np.vstack([others, extra])
    t = len(pool) // 2  # lower median index of len(pool) + 1 values
    out = np.column_stack([_order_stat_with(pool[:, c], t, devs[:, c]) for c in range(2)])
    return np.linalg.norm(out - pts[i], axis=1)


def _mbb_dev_costs(inst: Instance, pred: Prediction, i: int, devs: np.ndarray) -> np.ndarray:
    f = np.asarray(_facility(pred, inst))
    pts = np.asarray(inst.points)
    others = np.delete(pts, i, axis=0)
    cols = []
    for c in range(2):
        if len(others):
            lo = np.minimum(others[:, c].min(), devs[:, c])
            hi = np.maximum(others[:, c].max(), devs[:, c])
        else:
            lo = hi = devs[:, c]
        cols.append(np.minimum(np.maximum(f[c], lo), hi))
    return np.linalg.norm(np.column_stack(cols) - pts[i], axis=1)


# --- registry --------------------------------------------------------------


def median_mechanism() -> Mechanism:
    return Mechanism("median", lambda inst, pred: line.median_line(inst))


def lrm_mechanism() -> Mechanism:
    return Mechanism("lrm", lambda inst, pred: line.lrm(inst))


def minmaxp_mechanism() -> Mechanism:
    return Mechanism("minmaxp", lambda inst, pred: line.minmaxp(inst, _facility(pred, inst)), kind="facility")


def mixed_mechanism(delta: float) -> Mechanism:
    param = line.MixtureParam(float(delta))
    return Mechanism(f"mixed:{delta:g}",
                     lambda inst, pred: line.mixed_delta(inst, _facility(pred, inst), param),
                     kind="facility")


def gcm_mechanism(phantoms: Iterable[Sequence[float]], name: str = "gcm") -> Mechanism:
    cfg = plane.GcmConfig(tuple(tuple(p) for p in phantoms))
    return Mechanism(name, lambda inst, pred: plane.gcm(inst, cfg), dim=2,
                     deviation_costs=lambda inst, pred, i, devs: _gcm_dev_costs(cfg.phantoms, inst, pred, i, devs))


def mbb_mechanism() -> Mechanism:
    return Mechanism("mbb", lambda inst, pred: plane.minimum_bounding_box(inst, _facility(pred, inst)),
                     kind="facility", dim=2, deviation_costs=_mbb_dev_costs)


def centroid_ext_mechanism() -> Mechanism:
    return Mechanism("centroid-ext", lambda inst, pred: plane.centroid_extremes(inst, _ids(pred, inst)),
                     kind="extreme_ids", dim=2,
                     deviation_costs=lambda inst, pred, i, devs: _centroid_dev_costs(inst, _ids(pred, inst), i, devs))


def centroid_ext_perturbed_mechanism(eps: float | None = None, seed: int = plane.DEFAULT_PERTURB_SEED) -> Mechanism:
    """Ids come from the prediction when given, else from the accurate oracle
    on the perturbed instance. ``eps`` is absolute; None means 1e-7 x diameter."""

    def fn(inst, pred):
        if isinstance(pred, (ExtremeIds, FullLocations)):
            ids = _ids(pred, inst)
            return plane.centroid_extremes_perturbed(inst, eps, seed, oracle=lambda _: plane.ExtremePrediction(ids))
        return plane.centroid_extremes_perturbed(inst, eps, seed)

    def accurate(inst):
        e = eps if eps is not None else plane.DEFAULT_EPS_FACTOR * diameter(inst)
        if e <= 0:
            return ExtremeIds(tuple(range(inst.n)))
        return ExtremeIds(extreme_ids(perturb(inst, e, seed)))

    name = "centroid-ext-perturbed" if eps is None else f"centroid-ext-perturbed:{eps:g}"
    def dev_costs(inst, pred, i, devs):
        if not isinstance(pred, (ExtremeIds, FullLocations)):
            return None  # ids would be recomputed per misreport
        return _centroid_dev_costs(inst, _ids(pred, inst), i, devs)

    return Mechanism(name, fn, kind="extreme_ids", dim=2, accurate=accurate, deviation_costs=dev_costs)


def centroid_all_mechanism() -> Mechanism:
    return Mechanism("centroid-all", lambda inst, pred: plane.centroid_all(inst), dim=2,
                     deviation_costs=lambda inst, pred, i, devs: _centroid_dev_costs(inst, range(inst.n), i, devs))


def broken_mechanism() -> Mechanism:
    """Deliberately manipulable: returns 3/4 x_L + 1/4 x_R."""
    return Mechanism("broken", lambda inst, pred: Lottery.point((0.75 * inst.x_left + 0.25 * inst.x_right,)))


def load_phantoms(path: str) -> list[tuple[float, float]]:
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        data = data.get("phantoms", [])
    return [tuple(map(float, p)) for p in data]


def get_mechanism(ident: str) -> Mechanism:
    """Resolve a mechanism identifier such as ``lrm`` or ``mixed:0.25``."""
    name, _, arg = ident.partition(":")
    if name == "median":
        return median_mechanism()
    if name == "lrm":
        return lrm_mechanism()
    if name == "minmaxp":
        return minmaxp_mechanism()
    if name == "mixed":
        if not arg:
            raise ValueError("mixed needs a delta, e.g. mixed:0.25")
        return mixed_mechanism(float(arg))
    if name == "gcm":
        if not arg:
            raise ValueError("gcm needs a phantom file, e.g. gcm:phantoms.json")
        return gcm_mechanism(load_phantoms(arg), name=ident)
    if name == "mbb":
        return mbb_mechanism()
    if name == "centroid-ext":
        return centroid_ext_mechanism()
    if name == "centroid-ext-perturbed":
        return centroid_ext_perturbed_mechanism(float(arg) if arg else None)
    if name == "centroid-all":
        return centroid_all_mechanism()
    raise ValueError(f"unknown mechanism {ident!r}")


# --- truthfulness ----------------------------------------------------------


@dataclass(frozen=True)
class GridSpec:
    resolution: int = 41
    scale: float = 3.0


@dataclass(frozen=True)
class TruthReport:
    instance: Instance
    agent: int
    deviation: Point
    truthful_cost: float
    deviated_cost: float
    margin: float  # deviated - truthful; negative means a profitable lie

    @property
    def passed(self) -> bool:
        return self.margin >= -TRUTH_TOL


def _box(inst: Instance, scale: float) -> tuple[np.ndarray, np.ndarray]:
    pts = np.asarray(inst.points, dtype=float)
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    center = (lo + hi) / 2
    extent = hi - lo
    fallback = extent.max() if extent.max() > 0 else 1.0
    extent = np.where(extent > 0, extent, fallback)
    return center - scale * extent / 2, center + scale * extent / 2


def deviation_candidates(inst: Instance, i: int, grid: GridSpec = GridSpec()) -> np.ndarray:
    """Misreports tried for agent ``i``; see the README for the list."""
    pts = np.asarray(inst.points, dtype=float)
    cands = [pts[j] for j in range(inst.n) if j != i]
    cands += [(pts[a] + pts[b]) / 2 for a, b in itertools.combinations(range(inst.n), 2)]
    center = np.asarray(optimal_solution(inst).facility)
    cands.append(2 * center - pts[i])
    if inst.dim == 1:
        xl, xr = inst.x_left, inst.x_right
        d = xr - xl
        cands += [np.array([xl - d]), np.array([xr + d])]
    lo, hi = _box(inst, grid.scale)
    axes = [np.linspace(lo[c], hi[c], grid.resolution) for c in range(inst.dim)]
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, inst.dim)
    return np.vstack([np.asarray(cands).reshape(-1, inst.dim), mesh])


def audit_truthfulness(mech: Mechanism, inst: Instance, pred: Prediction | None = None,
                       grid: GridSpec = GridSpec(), use_fast: bool = True) -> list[TruthReport]:
    """Best misreport found for each agent, prediction held fixed."""
    if pred is None:
        pred = mech.accurate_prediction(inst)
    truthful = mech(inst, pred)
    reports = []
    for i, xi in enumerate(inst.points):
        base = agent_expected_cost(truthful, xi)
        devs = deviation_candidates(inst, i, grid)
        costs = None
        if use_fast and mech.deviation_costs is not None:
            costs = mech.deviation_costs(inst, pred, i, devs)
        if costs is None:
            costs = np.array([agent_expected_cost(mech(inst.replace(i, tuple(v)), pred), xi)
                              for v in devs.tolist()])
        k = int(np.argmin(costs))
        reports.append(TruthReport(inst, i, tuple(devs[k].tolist()), base, float(costs[k]), float(costs[k] - base)))
    return reports


def truthful(reports: Iterable[TruthReport]) -> bool:
    return all(r.passed for r in reports)


# --- instance generators and adversaries ------------------------------------


def line_two_agent_generator(lo: float = -10.0, hi: float = 10.0):
    def gen(rng: np.random.Generator) -> Instance:
        a, b = rng.uniform(lo, hi, 2)
        while a == b:
            b = rng.uniform(lo, hi)
        return Instance.of([float(a), float(b)])
    return gen


def line_generator(n_min: int = 1, n_max: int = 6, lo: float = -10.0, hi: float = 10.0, ties: float = 0.2):
    """Random line profiles; with probability ``ties`` coordinates are rounded
    to integers so that coincident reports occur."""
    def gen(rng: np.random.Generator) -> Instance:
        n = int(rng.integers(n_min, n_max + 1))
        xs = rng.uniform(lo, hi, n)
        if rng.random() < ties:
            xs = np.round(xs / 4)
        return Instance.of(xs.tolist())
    return gen


def plane_generator(n_min: int = 2, n_max: int = 20, lo: float = -10.0, hi: float = 10.0, ties: float = 0.0):
    def gen(rng: np.random.Generator) -> Instance:
        n = int(rng.integers(n_min, n_max + 1))
        pts = rng.uniform(lo, hi, (n, 2))
        if rng.random() < ties:
            pts = np.round(pts / 4)
        return Instance(2, tuple(map(tuple, pts.tolist())))
    return gen


def facility_grid_adversary(per_axis: int = 101, scale: float = 3.0, far: float = 1e6):
    """F* predictions: a grid over the scaled bounding box plus far-away probes
    in every axis direction (these hit the clamps)."""
    def adv(inst: Instance, rng: np.random.Generator | None = None) -> list[Prediction]:
        lo, hi = _box(inst, scale)
        axes = [np.linspace(lo[c], hi[c], per_axis) for c in range(inst.dim)]
        mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, inst.dim)
        center = (lo + hi) / 2
        reach = far * (1 + float(np.max(hi - lo)))
        dirs = [np.array(d, dtype=float) for d in itertools.product((-1, 0, 1), repeat=inst.dim) if any(d)]
        probes = [center + reach * d for d in dirs]
        return [OptimalFacility(tuple(p)) for p in list(mesh) + probes]
    return adv


def extreme_ids_adversary(exhaustive_n: int = 8, samples: int = 64):
    """All id sets of size 2 and 3 for small n; seeded samples otherwise."""
    def adv(inst: Instance, rng: np.random.Generator | None = None) -> list[Prediction]:
        n = inst.n
        if n <= exhaustive_n:
            sets = list(itertools.combinations(range(n), 2)) + list(itertools.combinations(range(n), 3))
        else:
            rng = rng if rng is not None else np.random.default_rng(0)
            sets = [tuple(sorted(rng.choice(n, size=int(rng.integers(2, 4)), replace=False).tolist()))
                    for _ in range(samples)]
        return [ExtremeIds(s) for s in sets]
    return adv


def estimate_consistency(mech: Mechanism, generator, trials: int, seed: int = 42) -> float:
    """Max approximation ratio over generated instances with accurate predictions."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        inst = generator(rng)
        worst = max(worst, approx_ratio(mech(inst, mech.accurate_prediction(inst)), inst))
    return worst


def estimate_robustness(mech: Mechanism, generator, adversary, trials: int, seed: int = 42) -> float:
    """Max approximation ratio over generated instances x adversarial predictions."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        inst = generator(rng)
        for pred in adversary(inst, rng):
            worst = max(worst, approx_ratio(mech(inst, pred), inst))
    return worst


def tradeoff_sweep(deltas: Sequence[float], trials: int = 200, seed: int = 42) -> list[tuple[float, float, float]]:
    """(delta, consistency, robustness) of the LRM/MinMaxP mixture on two-agent lines."""
    gen = line_two_agent_generator()
    adv = facility_grid_adversary()
    out = []
    for delta in deltas:
        mech = mixed_mechanism(delta)
        out.append((float(delta),
                    estimate_consistency(mech, gen, trials, seed),
                    estimate_robustness(mech, gen, adv, trials, seed)))
    return out


# --- lower-bound probe on the line -------------------------------------------


@dataclass(frozen=True)
class ProbeReport:
    """Quantities behind the two constraints of the line lower bound.

    ``p_leq_l`` and ``p_m`` are measured on the OnlyM rewrite of the
    mechanism's lottery at the base instance with accurate predictions.
    A mechanism better than (2 - delta)-robust needs ``p_leq_l > bound``; one
    that is (1 + delta)-consistent needs ``p_leq_l <= bound``.
    """

    delta: float
    p_leq_l: float
    p_m: float
    bound: float
    consistency_value: float
    robustness_side: bool
    consistency_side: bool
    deviation_ratio: float
    misreport_ratio: float
    cost_before: float
    cost_after: float
    agent_costs_before: tuple[float, float]
    agent_costs_after: tuple[float, float]

    @property
    def feasible(self) -> bool:
        return self.robustness_side and self.consistency_side

    @property
    def binding(self) -> str:
        if not self.robustness_side:
            return "robustness"
        if not self.consistency_side:
            return "consistency"
        return "none"


def probe_lottery(lottery: Lottery, inst: Instance, delta: float) -> tuple[float, float, float]:
    """(P(<= x_L), P(M), E[d(M, .)] / opt) of the OnlyM rewrite of ``lottery``."""
    xl, xr = inst.x_left, inst.x_right
    m = (xl + xr) / 2
    t = line.onlym_transform(lottery, inst)
    p_leq_l = t.mass(lambda p: p[0] <= xl)
    p_m = t.prob_of((m,))
    opt = (xr - xl) / 2
    return p_leq_l, p_m, agent_expected_cost(t, (m,)) / opt


def lower_bound_probe_line(mech: Mechanism, delta: float, base: Instance) -> ProbeReport:
    line.MixtureParam(delta)
    xl, xr = base.x_left, base.x_right
    d = xr - xl
    opt = d / 2
    pred = FullLocations(base.points)
    lot = mech(base, pred)
    after = line.onlym_transform(lot, base)
    p_leq_l, p_m, cons = probe_lottery(lot, base, delta)
    bound = delta - p_m / 2

    # the left agent's misreport x_L - d moves the new midpoint onto x_L
    left_dev = Instance.of([xl - d, xr])
    deviation_ratio = agent_expected_cost(mech(left_dev, pred), (xl,)) / (2 * opt)
    # the right agent's misreport x_R + d makes the prediction look accurate
    right_dev = Instance.of([xl, xr + d])
    misreport_ratio = agent_expected_cost(mech(right_dev, FullLocations(right_dev.points)), (xr,)) / (2 * opt)

    return ProbeReport(
        delta=delta, p_leq_l=p_leq_l, p_m=p_m, bound=bound, consistency_value=cons,
        robustness_side=p_leq_l > bound + 1e-12,
        consistency_side=p_leq_l <= bound + 1e-12,
        deviation_ratio=deviation_ratio, misreport_ratio=misreport_ratio,
        cost_before=egalitarian_cost(lot, base), cost_after=egalitarian_cost(after, base),
        agent_costs_before=(agent_expected_cost(lot, (xl,)), agent_expected_cost(lot, (xr,))),
        agent_costs_after=(agent_expected_cost(after, (xl,)), agent_expected_cost(after, (xr,))),
    )


# --- witness fixtures ---------------------------------------------------------


@dataclass
class WitnessReport:
    name: str
    instances: list[Instance]
    quantity: float
    bound: float
    passed: bool
    derivation: str
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "instances": [[list(p) for p in inst.points] for inst in self.instances],
            "quantity": self.quantity,
            "bound": self.bound,
            "passed": self.passed,
            "derivation": self.derivation,
            "details": self.details,
        }


def _witness_thm2(n: int = 3, step: float = 0.005, tol: float = 1e-3) -> WitnessReport:
    x = Instance(2, ((0.0, 0.0),) + ((0.5, 0.0),) * (n - 2) + ((1.0, 0.0),))
    xp = x.replace(n - 1, (2.0, 0.0))
    opt = optimal_solution(xp)
    pts = np.asarray(xp.points)
    anchor = np.asarray(x.points[-1])  # the deviating agent's true location

    g = np.arange(-1.0, 3.0 + step / 2, step)
    gx, gy = np.meshgrid(g, g - 1.0)
    cand = np.column_stack([gx.ravel(), gy.ravel()])
    theta = np.linspace(0.0, 2 * np.pi, 7201)
    cand = np.vstack([cand, anchor + 0.5 * np.column_stack([np.cos(theta), np.sin(theta)])])

    cost = np.linalg.norm(cand[:, None, :] - pts[None, :, :], axis=2).max(axis=1)
    to_opt = np.linalg.norm(cand - np.asarray(opt.facility), axis=1)
    planar_ok = bool(np.all(cost >= np.sqrt(to_opt**2 + opt.cost**2) - 1e-12))
    feasible = np.linalg.norm(cand - anchor, axis=1) >= 0.5 - 1e-12
    grid_min = float(cost[feasible].min() / opt.cost)
    analytic = math.sqrt(0.5**2 + opt.cost**2) / opt.cost
    passed = grid_min >= math.sqrt(1.25) - tol and abs(grid_min - analytic) <= tol and planar_ok
    return WitnessReport(
        "thm2", [x, xp], grid_min, math.sqrt(1.25), passed,
        "grid + circle-boundary minimum of C(y, x')/opt over d(x_n, y) >= 1/2",
        {"analytic": analytic, "planar_bound_holds": planar_ok, "opt": opt.cost, "grid_points": int(len(cand))},
    )


def _witness_thm4(x_tilde: float = 0.0) -> WitnessReport:
    s = 1 / math.sqrt(2)
    inst = Instance(2, ((x_tilde, 0.0),) * 3 + ((x_tilde - 1, 1.0), (x_tilde - 1 - s, -s)))
    phantoms = [(x_tilde, 11.0)] * 4
    lot = plane.gcm(inst, plane.GcmConfig(tuple(phantoms)))
    out = lot.support[0]
    ratio = approx_ratio(lot, inst)
    target = 1 + math.sqrt(2)
    out_ok = abs(out[0] - x_tilde) <= 1e-12 and abs(out[1] - 1.0) <= 1e-12
    # the same phantoms keep the vertical instance below ratio 2
    vertical = Instance(2, ((0.0, 20.0),) * 4 + ((0.0, 10.0),))
    v_ratio = approx_ratio(plane.gcm(vertical, plane.GcmConfig(tuple((0.0, 11.0) for _ in range(4)))), vertical)
    return WitnessReport(
        "thm4", [inst], ratio, target, out_ok and abs(ratio - target) <= 1e-9,
        "gcm output vs smallest-enclosing-circle optimum",
        {"output": list(out), "x_tilde": x_tilde, "vertical_instance_ratio": v_ratio},
    )


def _witness_thm5(trials: int = 20, seed: int = 42, per_axis: int = 101) -> WitnessReport:
    mech = mbb_mechanism()
    gen = plane_generator(2, 2)
    base = Instance(2, ((0.0, 0.0), (2.0, 0.0)))

    cons = max(approx_ratio(mech(base, OptimalFacility(optimal_solution(base).facility)), base),
               estimate_consistency(mech, gen, trials, seed))
    adv = facility_grid_adversary(per_axis=per_axis)
    rob = max(max(approx_ratio(mech(base, p), base) for p in adv(base)),
              estimate_robustness(mech, gen, adv, trials, seed))
    # randomized lower-bound profiles: <0, 2> predicted, <0, 1> reported
    lie = Instance.of([0.0, 1.0])
    minmax_on_lie = approx_ratio(line.minmaxp(lie, (1.0,)), lie)
    return WitnessReport(
        "thm5", [base], rob, 2.0, abs(cons - 1) <= 1e-9 and rob <= 2 + 1e-9,
        "max ratio of minimum_bounding_box over an F* grid on two-agent instances",
        {"consistency": cons, "robustness": rob, "line_profile_ratio": minmax_on_lie},
    )


def _witness_thm3_det(mech: Mechanism | None = None) -> WitnessReport:
    mech = mech or median_mechanism()
    x = Instance.of([0.0, 1.0])
    lot = mech(x, NoPrediction())
    ratios = [approx_ratio(lot, x)]
    instances = [x]
    violation = False
    y = sum(p[0] * w for p, w in lot.atoms)
    if 0.0 < y < 1.0:
        xp = Instance.of([0.0, y])
        instances.append(xp)
        lot_p = mech(xp, NoPrediction())
        ratios.append(approx_ratio(lot_p, xp))
        violation = agent_expected_cost(lot, (y,)) < agent_expected_cost(lot_p, (y,)) - TRUTH_TOL
    worst = max(ratios)
    return WitnessReport(
        "thm3-det", instances, worst, 2.0, worst >= 2 - 1e-9 or violation,
        f"ratios of {mech.name} on <0,1> and <0,y> (left location predicted at 0)",
        {"ratios": ratios, "truthfulness_violation": violation, "mechanism": mech.name},
    )


def _witness_thm3_rand(mech: Mechanism | None = None) -> WitnessReport:
    mech = mech or lrm_mechanism()
    x = Instance.of([0.0, 1.0])
    lot = mech(x, NoPrediction())
    if agent_expected_cost(lot, (1.0,)) >= 0.5:
        agent, xp = 1.0, Instance.of([0.0, 2.0])
    else:
        agent, xp = 0.0, Instance.of([-1.0, 1.0])
    lot_p = mech(xp, NoPrediction())
    ratios = [approx_ratio(lot, x), approx_ratio(lot_p, xp)]
    violation = agent_expected_cost(lot_p, (agent,)) < agent_expected_cost(lot, (agent,)) - TRUTH_TOL
    worst = max(ratios)
    return WitnessReport(
        "thm3-rand", [x, xp], worst, 1.5, worst >= 1.5 - 1e-9 or violation,
        f"ratios of {mech.name} on <0,1> and the stretched profile (left location predicted at 0)",
        {"ratios": ratios, "truthfulness_violation": violation, "mechanism": mech.name},
    )


WITNESSES = {
    "thm2": _witness_thm2,
    "thm4": _witness_thm4,
    "thm5": _witness_thm5,
    "thm3-det": _witness_thm3_det,
    "thm3-rand": _witness_thm3_rand,
}


def witness(name: str, **kwargs) -> WitnessReport:
    try:
        fn = WITNESSES[name]
    except KeyError:
        raise ValueError(f"unknown witness {name!r}; choose from {sorted(WITNESSES)}") from None
    return fn(**kwargs)
