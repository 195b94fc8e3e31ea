"""Acceptance criteria 1-13, each at its stated tolerance and runtime budget.

A one-line verdict per criterion is printed in the terminal summary.
"""

import itertools
import math
import os
import subprocess
import sys
import time

import numpy as np
import pytest

from facloc import audit
from facloc.geometry import (
    circumcenter_inside,
    distance,
    euler_data,
    min_enclosing_circle,
    min_enclosing_circle_bruteforce,
)
from facloc.line import lrm, minmaxp, onlym_transform, random_lottery
from facloc.model import (
    ExtremeIds,
    Instance,
    OptimalFacility,
    agent_expected_cost,
    approx_ratio,
    egalitarian_cost,
    extreme_ids,
    optimal_solution,
)
from facloc.plane import centroid_all, centroid_extremes

pytestmark = pytest.mark.acceptance
SEED = 42


@pytest.fixture
def report(record_property):
    """Record the criterion id and a summary line, then enforce the budget."""

    def done(number, summary, elapsed, budget):
        record_property("criterion", number)
        record_property("summary", f"{summary} ({elapsed:.2f}s / {budget:g}s)")
        assert elapsed < budget, f"runtime {elapsed:.2f}s exceeds {budget}s"

    return done


def plane_instances(rng, count, n_min, n_max):
    out = []
    for _ in range(count):
        n = int(rng.integers(n_min, n_max + 1))
        out.append(Instance(2, tuple(map(tuple, rng.uniform(-10, 10, (n, 2)).tolist()))))
    return out


def test_c01_lrm_ratio(report):
    t = time.perf_counter()
    gen = audit.line_two_agent_generator()
    rng = np.random.default_rng(SEED)
    err = max(abs(approx_ratio(lrm(inst), inst) - 1.5) for inst in (gen(rng) for _ in range(1000)))
    elapsed = time.perf_counter() - t
    report(1, f"LRM ratio 1.5 on 1000 two-agent lines, max |err| = {err:.1e}", elapsed, 1)
    assert err <= 1e-9


def test_c02_minmaxp(report):
    t = time.perf_counter()
    mech = audit.minmaxp_mechanism()
    rng = np.random.default_rng(SEED)
    insts = [audit.line_generator(2, 6, ties=0.0)(rng) for _ in range(500)]
    cons = max(approx_ratio(minmaxp(i, i.midpoint), i) for i in insts)
    cons = max(cons, audit.estimate_consistency(mech, audit.line_two_agent_generator(), 500, SEED))
    rob = audit.estimate_robustness(mech, audit.line_two_agent_generator(), audit.facility_grid_adversary(), 200, SEED)
    elapsed = time.perf_counter() - t
    report(2, f"MinMaxP consistency {cons:.12g}, robustness {rob:.12g}", elapsed, 5)
    assert abs(cons - 1) <= 1e-9
    assert 2 - 1e-3 <= rob <= 2 + 1e-9


def test_c03_frontier(report):
    t = time.perf_counter()
    deltas = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5]
    curve = audit.tradeoff_sweep(deltas, trials=200, seed=SEED)
    elapsed = time.perf_counter() - t
    worst_c = max(abs(c - (1 + d)) for d, c, _ in curve)
    report(3, f"frontier (1+d, 2-d) for d in 0..0.5, max consistency err {worst_c:.1e}", elapsed, 30)
    for d, c, r in curve:
        assert abs(c - (1 + d)) <= 1e-9
        assert 2 - d - 1e-3 <= r <= 2 - d + 1e-9


def test_c04_onlym(report):
    t = time.perf_counter()
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(1000):
        a, b = sorted(rng.uniform(-10, 10, 2).tolist())
        inst = Instance.of([a, b])
        lot = random_lottery(rng, a - 2, b + 2)
        out = onlym_transform(lot, inst)
        worst = max(worst,
                    abs(egalitarian_cost(out, inst) - egalitarian_cost(lot, inst)),
                    abs(agent_expected_cost(out, (a,)) - agent_expected_cost(lot, (a,))),
                    abs(agent_expected_cost(out, (b,)) - agent_expected_cost(lot, (b,))))
    elapsed = time.perf_counter() - t
    report(4, f"OnlyM preserves total and endpoint costs on 1000 lotteries, max err {worst:.1e}", elapsed, 2)
    assert worst <= 1e-9


SHIPPED = [
    (audit.median_mechanism(), "line"),
    (audit.lrm_mechanism(), "line"),
    (audit.minmaxp_mechanism(), "line"),
    (audit.mixed_mechanism(0.25), "line"),
    (audit.gcm_mechanism([(0.0, 11.0), (0.0, 11.0), (-4.0, 2.5)]), "plane"),
    (audit.mbb_mechanism(), "plane"),
    (audit.centroid_ext_mechanism(), "plane"),
    (audit.centroid_all_mechanism(), "plane"),
]


def test_c05_truthfulness_suite(report):
    t = time.perf_counter()
    worst = {}
    for mech, space in SHIPPED:
        gen = audit.line_generator(1, 6) if space == "line" else audit.plane_generator(2, 8, ties=0.2)
        rng = np.random.default_rng(SEED)
        margin = math.inf
        for _ in range(500):
            inst = gen(rng)
            for r in audit.audit_truthfulness(mech, inst, mech.accurate_prediction(inst)):
                margin = min(margin, r.margin)
        worst[mech.name] = margin
    broken = audit.audit_truthfulness(audit.broken_mechanism(), Instance.of([0.0, 1.0]))
    found = min(broken, key=lambda r: r.margin)
    elapsed = time.perf_counter() - t
    low = min(worst.values())
    report(5, f"8 mechanisms x 500 instances, min margin {low:.1e}; broken fixture gain "
              f"{-found.margin:.3g} at {found.deviation}", elapsed, 120)
    assert all(m >= -1e-9 for m in worst.values()), worst
    assert found.margin < -1e-9


def test_c06_thm2(report):
    t = time.perf_counter()
    rep = audit.witness("thm2")
    elapsed = time.perf_counter() - t
    report(6, f"planar witness grid minimum {rep.quantity:.6f} vs sqrt(1.25) = {math.sqrt(1.25):.6f}", elapsed, 5)
    assert rep.quantity >= 1.1180 - 1e-3
    assert abs(rep.quantity - math.sqrt(1.25)) <= 1e-3
    assert rep.details["planar_bound_holds"]


def test_c07_thm4(report):
    t = time.perf_counter()
    reps = [audit.witness("thm4", x_tilde=x) for x in (0.0, 3.7, -12.0)]
    elapsed = time.perf_counter() - t
    report(7, "GCM witness output (x,1), ratio " + ", ".join(f"{r.quantity:.12f}" for r in reps), elapsed, 1)
    for r, x in zip(reps, (0.0, 3.7, -12.0)):
        out = r.details["output"]
        assert abs(out[0] - x) <= 1e-12 and abs(out[1] - 1.0) <= 1e-12
        assert abs(r.quantity - (1 + math.sqrt(2))) <= 1e-9


def test_c08_euler(report):
    t = time.perf_counter()
    rng = np.random.default_rng(SEED)
    count = 0
    worst = [0.0, 0.0, -math.inf]
    while count < 10_000:
        a, b, c = map(tuple, rng.uniform(-10, 10, (3, 2)).tolist())
        if not circumcenter_inside(a, b, c):
            continue
        rep = euler_data(a, b, c)
        r = rep.radius
        d_og = distance(rep.circumcenter, rep.centroid)
        d_oh = distance(rep.circumcenter, rep.orthocenter)
        worst[0] = max(worst[0], abs(rep.collinearity) / (r * r))
        worst[1] = max(worst[1], abs(3 * d_og - d_oh) / r)
        worst[2] = max(worst[2], d_oh - r)
        count += 1
    elapsed = time.perf_counter() - t
    report(8, f"Euler line on 10^4 triangles: collinearity {worst[0]:.1e}, OG/OH err {worst[1]:.1e}, "
              f"max d(O,H)-R {worst[2]:.3g}", elapsed, 2)
    assert worst[0] <= 1e-9 and worst[1] <= 1e-9 and worst[2] <= 1e-9


def test_c09_centroid_extremes(report):
    t = time.perf_counter()
    rng = np.random.default_rng(SEED)
    correct = 0.0
    for inst in plane_instances(rng, 10_000, 2, 20):
        correct = max(correct, approx_ratio(centroid_extremes(inst, extreme_ids(inst)), inst))

    adversarial = 0.0
    for inst in plane_instances(rng, 1000, 2, 8):
        for k in (2, 3):
            for ids in itertools.combinations(range(inst.n), k):
                adversarial = max(adversarial, approx_ratio(centroid_extremes(inst, ExtremeIds(ids)), inst))

    k2 = []
    for _ in range(200):
        theta = rng.uniform(0, 2 * math.pi)
        c, r = rng.uniform(-5, 5, 2), rng.uniform(0.5, 5)
        u = np.array([math.cos(theta), math.sin(theta)])
        inner = [c + r * 0.9 * np.sqrt(rng.uniform()) * np.array([math.cos(a), math.sin(a)])
                 for a in rng.uniform(0, 2 * math.pi, int(rng.integers(0, 6)))]
        inst = Instance(2, tuple(map(tuple, [c - r * u, c + r * u] + inner)))
        ids = extreme_ids(inst)
        assert ids == (0, 1)
        k2.append(approx_ratio(centroid_extremes(inst, ids), inst))
    k2_err = max(abs(v - 1.5) for v in k2)
    elapsed = time.perf_counter() - t
    report(9, f"centroid-ext correct {correct:.6f} <= 5/3, adversarial {adversarial:.6f} <= 2, "
              f"k=2 |ratio-1.5| {k2_err:.1e}", elapsed, 120)
    assert correct <= 5 / 3 + 1e-9
    assert adversarial <= 2 + 1e-9
    assert k2_err <= 1e-9


def test_c10_centroid_all(report):
    t = time.perf_counter()
    rng = np.random.default_rng(SEED)
    slack = math.inf
    for inst in plane_instances(rng, 10_000, 1, 20):
        slack = min(slack, 2 - 1 / inst.n - approx_ratio(centroid_all(inst), inst))
    elapsed = time.perf_counter() - t
    report(10, f"centroid-all within 2 - 1/n on 10^4 instances, min slack {slack:.3g}", elapsed, 60)
    assert slack >= -1e-9


def test_c11_mec_oracle(report):
    t = time.perf_counter()
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for inst in plane_instances(rng, 1000, 1, 12):
        worst = max(worst, abs(min_enclosing_circle(inst.points).radius
                               - min_enclosing_circle_bruteforce(inst.points).radius))
    elapsed = time.perf_counter() - t
    report(11, f"MEC vs pair/triple oracle on 10^3 instances, max radius err {worst:.1e}", elapsed, 5)
    assert worst <= 1e-9


def test_c12_mbb_two_agents(report):
    t = time.perf_counter()
    mech = audit.mbb_mechanism()
    gen = audit.plane_generator(2, 2)
    rng = np.random.default_rng(SEED)
    cons = 0.0
    for _ in range(1000):
        inst = gen(rng)
        cons = max(cons, approx_ratio(mech(inst, OptimalFacility(optimal_solution(inst).facility)), inst))
    rob = audit.estimate_robustness(mech, gen, audit.facility_grid_adversary(per_axis=101), 20, SEED)
    elapsed = time.perf_counter() - t
    report(12, f"MBB two agents: consistency {cons:.12g}, robustness {rob:.6f}", elapsed, 10)
    assert abs(cons - 1) <= 1e-9
    assert rob <= 2 + 1e-9


def test_c13_sweep_deterministic(report, tmp_path):
    t = time.perf_counter()
    outputs = []
    for k in range(2):
        f = tmp_path / f"frontier{k}.csv"
        subprocess.run([sys.executable, "-m", "facloc", "sweep", "--deltas", "0,0.1,0.2,0.3,0.4,0.5",
                        "--emit-plot-data", str(f), "--format", "csv"],
                       check=True, capture_output=True, env={**os.environ, "FACLOC_SEED": str(SEED)})
        outputs.append(f.read_bytes())
    elapsed = time.perf_counter() - t
    report(13, f"sweep CSV byte-identical across runs ({len(outputs[0])} bytes)", elapsed, 120)
    assert outputs[0] == outputs[1]
    assert outputs[0].startswith(b"delta,consistency,robustness\n")
