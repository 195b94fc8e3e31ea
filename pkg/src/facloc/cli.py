"""Command-line front end.

Exit status: 0 on success or a passing audit, 1 when an audit or witness
fails, 2 on usage errors (bad flags, malformed instance JSON, unknown
mechanism identifiers).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import audit, line
from .geometry import min_enclosing_circle
from .model import (
    Lottery,
    NoPrediction,
    agent_expected_cost,
    approx_ratio,
    egalitarian_cost,
    instance_from_json,
    optimal_solution,
    prediction_to_json,
)

DEFAULT_SEED = 42
DEFAULT_TOL = 1e-9

# frozen CSV column orders, one per report type
COLUMNS = {
    "eval": ["kind", "x", "y", "value"],
    "audit": ["instance", "agent", "truthful_cost", "deviated_cost", "margin", "deviation_x", "deviation_y", "passed"],
    "estimate": ["mechanism", "measure", "trials", "seed", "value"],
    "sweep": ["delta", "consistency", "robustness"],
    "witness": ["name", "quantity", "bound", "passed"],
    "mec": ["center_x", "center_y", "radius"],
    "transform-onlym": ["stage", "x", "prob"],
}


class UsageError(Exception):
    pass


def fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".12g")
    if v is None:
        return ""
    return str(v)


def emit_plot_data(curve: Sequence[Sequence[float]], path, header: Sequence[str] = COLUMNS["sweep"]) -> None:
    """Write one CSV row per curve point, 12 significant digits."""
    if not curve:
        raise ValueError("empty curve")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in curve:
            w.writerow([fmt(float(v)) for v in row])


def _csv(kind: str, rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS[kind])
    for r in rows:
        w.writerow([fmt(v) for v in r])
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _load_instance(path: str):
    try:
        with open(path) as fh:
            data = json.load(fh)
        return instance_from_json(data)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except (json.JSONDecodeError, ValueError, TypeError, KeyError) as exc:
        raise UsageError(f"malformed instance {path}: {exc}") from exc


def _mechanism(ident: str) -> audit.Mechanism:
    try:
        return audit.get_mechanism(ident)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        raise UsageError(str(exc)) from exc


def _prediction_for(mech, inst, pred):
    if isinstance(pred, NoPrediction) and mech.kind != "none":
        return mech.accurate_prediction(inst), True
    return pred, False


def _generator(name: str, n_max: int | None):
    if name == "line2":
        return audit.line_two_agent_generator()
    if name == "line":
        return audit.line_generator(2, n_max or 6)
    if name == "plane":
        return audit.plane_generator(2, n_max or 20)
    if name == "plane2":
        return audit.plane_generator(2, 2)
    raise UsageError(f"unknown generator {name!r}")


def _adversary(mech, grid: int):
    if mech.kind == "facility":
        return audit.facility_grid_adversary(per_axis=grid)
    if mech.kind == "extreme_ids":
        return audit.extreme_ids_adversary()
    return lambda inst, rng=None: [NoPrediction()]


# --- subcommands ---------------------------------------------------------------


def cmd_eval(args) -> tuple[int, str]:
    inst, pred = _load_instance(args.instance)
    mech = _mechanism(args.mech)
    pred, derived = _prediction_for(mech, inst, pred)
    lot = _run(mech, inst, pred)
    cost = egalitarian_cost(lot, inst)
    opt = optimal_solution(inst).cost
    ratio = approx_ratio(lot, inst)
    if args.format == "csv":
        rows = [["atom", p[0], p[1] if len(p) == 2 else None, w] for p, w in lot.atoms]
        rows += [["cost", None, None, cost], ["opt", None, None, opt], ["ratio", None, None, ratio]]
        return 0, _csv("eval", rows)
    return 0, _json({
        "mechanism": mech.name, "lottery": lot.to_json(), "cost": cost, "opt": opt,
        "ratio": ratio if np.isfinite(ratio) else "inf",
        "prediction": prediction_to_json(pred), "prediction_derived": derived,
    })


def _run(mech, inst, pred) -> Lottery:
    try:
        return mech(inst, pred)
    except (ValueError, IndexError) as exc:
        raise UsageError(f"{mech.name}: {exc}") from exc


def cmd_audit(args) -> tuple[int, str]:
    mech = _mechanism(args.mech)
    grid = audit.GridSpec(resolution=args.grid)
    if args.instance:
        inst, pred = _load_instance(args.instance)
        pred, _ = _prediction_for(mech, inst, pred)
        cases = [(inst, pred)]
    else:
        gen = _generator(args.generator or ("plane" if mech.dim == 2 else "line"), args.n_max or 6)
        rng = np.random.default_rng(args.seed)
        cases = []
        for _ in range(args.trials):
            inst = gen(rng)
            cases.append((inst, mech.accurate_prediction(inst)))
    rows = []
    ok = True
    for k, (inst, pred) in enumerate(cases):
        for r in audit.audit_truthfulness(mech, inst, pred, grid):
            ok &= r.margin >= -args.tol
            dev = list(r.deviation) + [None]
            rows.append([k, r.agent, r.truthful_cost, r.deviated_cost, r.margin, dev[0], dev[1], r.margin >= -args.tol])
    status = 0 if ok else 1
    if args.format == "csv":
        return status, _csv("audit", rows)
    return status, _json({
        "mechanism": mech.name, "passed": ok, "instances": len(cases), "tolerance": args.tol,
        "note": "grid audit: violations are exact, compliance holds up to grid resolution",
        "reports": [dict(zip(COLUMNS["audit"], r)) for r in rows],
    })


def cmd_estimate(args, measure: str) -> tuple[int, str]:
    mech = _mechanism(args.mech)
    gen = _generator(args.generator or ("plane" if mech.dim == 2 else "line2"), args.n_max)
    if measure == "consistency":
        value = audit.estimate_consistency(mech, gen, args.trials, args.seed)
    else:
        value = audit.estimate_robustness(mech, gen, _adversary(mech, args.grid), args.trials, args.seed)
    row = [mech.name, measure, args.trials, args.seed, value]
    if args.format == "csv":
        return 0, _csv("estimate", [row])
    return 0, _json(dict(zip(COLUMNS["estimate"], row)))


def _parse_deltas(text: str) -> list[float]:
    try:
        deltas = [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --deltas {text!r}") from exc
    for d in deltas:
        try:
            line.MixtureParam(d)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    if not deltas:
        raise UsageError("no deltas given")
    return deltas


def cmd_sweep(args) -> tuple[int, str]:
    curve = audit.tradeoff_sweep(_parse_deltas(args.deltas), trials=args.trials, seed=args.seed)
    if args.emit_plot_data:
        try:
            emit_plot_data(curve, args.emit_plot_data)
        except OSError as exc:
            raise UsageError(f"cannot write {args.emit_plot_data}: {exc}") from exc
    if args.format == "csv":
        return 0, _csv("sweep", [list(r) for r in curve])
    return 0, _json({"seed": args.seed, "trials": args.trials,
                     "frontier": [dict(zip(COLUMNS["sweep"], r)) for r in curve]})


def cmd_witness(args) -> tuple[int, str]:
    kwargs = {}
    if args.name == "thm4":
        kwargs["x_tilde"] = args.x_tilde
    if args.name in ("thm3-det", "thm3-rand") and args.mech:
        kwargs["mech"] = _mechanism(args.mech)
    if args.name == "thm5":
        kwargs["seed"] = args.seed
    try:
        rep = audit.witness(args.name, **kwargs)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    status = 0 if rep.passed else 1
    if args.format == "csv":
        return status, _csv("witness", [[rep.name, rep.quantity, rep.bound, rep.passed]])
    verdict = "PASS" if rep.passed else "FAIL"
    return status, _json({"verdict": verdict, **rep.to_json()})


def cmd_mec(args) -> tuple[int, str]:
    inst, _ = _load_instance(args.instance)
    pts = inst.points if inst.dim == 2 else [(p[0], 0.0) for p in inst.points]
    circ = min_enclosing_circle(pts)
    row = [circ.center[0], circ.center[1], circ.radius]
    if args.format == "csv":
        return 0, _csv("mec", [row])
    return 0, _json(dict(zip(COLUMNS["mec"], row)))


def cmd_transform(args) -> tuple[int, str]:
    inst, pred = _load_instance(args.instance)
    if args.lottery:
        try:
            with open(args.lottery) as fh:
                data = json.load(fh)
            atoms = data["atoms"] if isinstance(data, dict) else data
            lot = Lottery(tuple((tuple(p) if isinstance(p, list) else (p,), w) for p, w in atoms))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"malformed lottery {args.lottery}: {exc}") from exc
    elif args.mech:
        mech = _mechanism(args.mech)
        pred, _ = _prediction_for(mech, inst, pred)
        lot = _run(mech, inst, pred)
    else:
        raise UsageError("give --lottery FILE or --mech ID")
    try:
        out = line.onlym_transform(lot, inst)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    xl, xr = inst.x_left, inst.x_right
    if args.format == "csv":
        rows = [["input", p[0], w] for p, w in lot.atoms] + [["onlym", p[0], w] for p, w in out.atoms]
        return 0, _csv("transform-onlym", rows)
    return 0, _json({
        "input": lot.to_json(), "onlym": out.to_json(),
        "cost": [egalitarian_cost(lot, inst), egalitarian_cost(out, inst)],
        "left_agent_cost": [agent_expected_cost(lot, (xl,)), agent_expected_cost(out, (xl,))],
        "right_agent_cost": [agent_expected_cost(lot, (xr,)), agent_expected_cost(out, (xr,))],
    })


# --- parser --------------------------------------------------------------------


def _default_seed() -> int:
    raw = os.environ.get("FACLOC_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"FACLOC_SEED must be an integer, got {raw!r}") from None


def build_parser(seed: int) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=seed, help="RNG seed (default 42, or $FACLOC_SEED)")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="pass/fail tolerance (default 1e-9)")
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("-o", "--output", help="write the report here instead of stdout")

    p = argparse.ArgumentParser(prog="facloc", description="Truthful facility-location mechanisms with predictions.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common],
                       help="run a mechanism on an instance",
                       description="Run a mechanism (median, LRM, MinMaxP, the LRM/MinMaxP delta-mixture, GCM with "
                                   "phantom points, Minimum Bounding Box, Centroid on extreme agents, Centroid over "
                                   "all agents) and report its lottery, egalitarian cost and approximation ratio. "
                                   "A missing prediction is replaced by the accurate one.")
    e.add_argument("--mech", required=True)
    e.add_argument("--instance", required=True)

    a = sub.add_parser("audit", parents=[common], help="grid-audit truthfulness in expectation",
                       description="Search unilateral misreports (other reports, midpoints, reflections through the "
                                   "optimum, the doubling deviations, and a grid over the 3x bounding box) and report "
                                   "each agent's best deviation with the prediction held fixed.")
    a.add_argument("--mech", required=True)
    a.add_argument("--instance")
    a.add_argument("--trials", type=int, default=100, help="random instances when no --instance is given")
    a.add_argument("--generator", choices=["line", "line2", "plane", "plane2"])
    a.add_argument("--n-max", type=int, default=None)
    a.add_argument("--grid", type=int, default=41, help="grid points per axis")

    for name, what in (("consistency", "max ratio over instances with accurate predictions"),
                       ("robustness", "max ratio over instances and adversarial predictions (F* grid with clamp "
                                      "probes, or all 2/3-element extreme-id sets)")):
        s = sub.add_parser(name, parents=[common], help=f"estimate {name}", description=f"Estimate {name}: {what}.")
        s.add_argument("--mech", required=True)
        s.add_argument("--trials", type=int, default=200)
        s.add_argument("--generator", choices=["line", "line2", "plane", "plane2"])
        s.add_argument("--n-max", type=int, default=None)
        s.add_argument("--grid", type=int, default=101, help="F* grid points per axis")

    w = sub.add_parser("sweep", parents=[common], help="consistency/robustness frontier of the delta-mixture",
                       description="Sweep the mixture running LRM with probability 2*delta and MinMaxP otherwise; "
                                   "emits (delta, consistency, robustness) along the line frontier.")
    w.add_argument("--deltas", default="0,0.1,0.2,0.3,0.4,0.5")
    w.add_argument("--trials", type=int, default=200)
    w.add_argument("--emit-plot-data", metavar="CSV")

    t = sub.add_parser("witness", parents=[common], help="replay a lower-bound witness instance",
                       description="Replay witness instances from the impossibility arguments: thm2 (planar 1.118 "
                                   "bound), thm4 (GCM phantom instance, ratio 1+sqrt 2), thm5 (Minimum Bounding Box on "
                                   "two agents), thm3-det / thm3-rand (line profiles evaluated on a supplied mechanism).")
    t.add_argument("name", choices=sorted(audit.WITNESSES))
    t.add_argument("--x-tilde", type=float, default=0.0, help="phantom median x for thm4")
    t.add_argument("--mech", help="mechanism for thm3-det / thm3-rand")

    m = sub.add_parser("mec", parents=[common], help="smallest enclosing circle (the egalitarian optimum)",
                       description="Smallest enclosing circle of the instance; its center is the optimal facility "
                                   "and its radius the optimal egalitarian cost.")
    m.add_argument("--instance", required=True)

    o = sub.add_parser("transform-onlym", parents=[common], help="rewrite a two-agent line lottery as OnlyM",
                       description="OnlyM rewrite: move the interior mass of a two-agent line lottery onto x_L, "
                                   "the midpoint M and x_R, keeping each side's mean; reports costs before and after.")
    o.add_argument("--instance", required=True)
    o.add_argument("--lottery", help='JSON {"atoms": [[x, prob], ...]}')
    o.add_argument("--mech")
    return p


HANDLERS = {
    "eval": cmd_eval,
    "audit": cmd_audit,
    "consistency": lambda a: cmd_estimate(a, "consistency"),
    "robustness": lambda a: cmd_estimate(a, "robustness"),
    "sweep": cmd_sweep,
    "witness": cmd_witness,
    "mec": cmd_mec,
    "transform-onlym": cmd_transform,
}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        parser = build_parser(_default_seed())
    except UsageError as exc:
        print(f"facloc: {exc}", file=sys.stderr)
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        status, text = HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"facloc: {exc}", file=sys.stderr)
        return 2
    if args.output:
        try:
            Path(args.output).write_text(text)
        except OSError as exc:
            print(f"facloc: cannot write {args.output}: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
