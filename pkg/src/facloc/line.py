"""Mechanisms on the line and the OnlyM rewrite of two-agent lotteries.

An OnlyM lottery puts no mass strictly inside ``(x_L, x_R)`` except at the
midpoint ``M``. Any lottery on a two-agent instance can be rewritten into one
that keeps the egalitarian cost and both agents' expected costs unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import Instance, Lottery


@dataclass(frozen=True)
class MixtureParam:
    delta: float

    def __post_init__(self):
        if not 0.0 <= self.delta <= 0.5:
            raise ValueError(f"delta must lie in [0, 0.5], got {self.delta!r}")


@dataclass(frozen=True)
class OnlyMDecomposition:
    """Masses strictly inside (x_L, M) and (M, x_R), their conditional means,
    and the convex weights placing each mean between an endpoint and M."""

    p_left: float
    p_right: float
    pi_left: float | None
    pi_right: float | None
    q_left: float | None
    q_right: float | None


def _line(inst: Instance) -> Instance:
    if inst.dim != 1:
        raise ValueError("line mechanisms need a 1-D instance")
    return inst


def median_line(inst: Instance) -> Lottery:
    """Lower median of the reports."""
    xs = sorted(_line(inst).xs())
    return Lottery.point((xs[(len(xs) - 1) // 2],))


def lrm(inst: Instance) -> Lottery:
    _line(inst)
    xl, xr = inst.x_left, inst.x_right
    return Lottery((((xl,), 0.25), ((xr,), 0.25), ((inst.midpoint,), 0.5)))


def minmaxp(inst: Instance, f_star) -> Lottery:
    _line(inst)
    f = f_star[0] if isinstance(f_star, (tuple, list)) else float(f_star)
    return Lottery.point((min(max(f, inst.x_left), inst.x_right),))


def mixed_delta(inst: Instance, f_star, param: MixtureParam | float) -> Lottery:
    """LRM with probability 2*delta, MinMaxP otherwise."""
    if not isinstance(param, MixtureParam):
        param = MixtureParam(float(param))
    w = 2 * param.delta
    return Lottery.mix([(w, lrm(inst)), (1 - w, minmaxp(inst, f_star))])


def _two_agent_line(inst: Instance) -> tuple[float, float, float]:
    _line(inst)
    if inst.n != 2:
        raise ValueError("the OnlyM rewrite is defined for two-agent instances")
    xl, xr = inst.x_left, inst.x_right
    if xl == xr:
        raise ValueError("degenerate instance: x_L == x_R")
    return xl, (xl + xr) / 2, xr


def onlym_decompose(lottery: Lottery, inst: Instance) -> OnlyMDecomposition:
    xl, m, xr = _two_agent_line(inst)
    left = [(p[0], w) for p, w in lottery.atoms if xl < p[0] < m]
    right = [(p[0], w) for p, w in lottery.atoms if m < p[0] < xr]
    p_left = math.fsum(w for _, w in left)
    p_right = math.fsum(w for _, w in right)
    pi_left = q_left = pi_right = q_right = None
    if p_left > 0:
        pi_left = math.fsum(y * w for y, w in left) / p_left
        q_left = (m - pi_left) / (m - xl)
    if p_right > 0:
        pi_right = math.fsum(y * w for y, w in right) / p_right
        q_right = (pi_right - m) / (xr - m)
    return OnlyMDecomposition(p_left, p_right, pi_left, pi_right, q_left, q_right)


def onlym_transform(lottery: Lottery, inst: Instance) -> Lottery:
    """Move interior mass to x_L, M and x_R, preserving each side's mean."""
    xl, m, xr = _two_agent_line(inst)
    dec = onlym_decompose(lottery, inst)
    kept = [(p, w) for p, w in lottery.atoms if not (xl < p[0] < m or m < p[0] < xr)]
    moved = []
    if dec.p_left > 0:
        moved += [((xl,), dec.q_left * dec.p_left), ((m,), (1 - dec.q_left) * dec.p_left)]
    if dec.p_right > 0:
        moved += [((xr,), dec.q_right * dec.p_right), ((m,), (1 - dec.q_right) * dec.p_right)]
    return Lottery(tuple(kept + moved))


def random_lottery(rng: np.random.Generator, lo: float, hi: float, max_support: int = 16) -> Lottery:
    """Seeded test lottery: 1..max_support atoms uniform in [lo, hi]."""
    k = int(rng.integers(1, max_support + 1))
    pts = rng.uniform(lo, hi, k)
    w = rng.uniform(0.05, 1.0, k)
    w /= w.sum()
    return Lottery(tuple(((float(p),), float(q)) for p, q in zip(pts, w)))
