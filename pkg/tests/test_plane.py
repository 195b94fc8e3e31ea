import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from facloc.geometry import min_enclosing_circle
from facloc.model import ExtremeIds, Instance, Lottery, approx_ratio, diameter, extreme_ids, perturb
from facloc.plane import (
    ExtremePrediction,
    GcmConfig,
    accurate_extremes,
    centroid_all,
    centroid_extremes,
    centroid_extremes_perturbed,
    gcm,
    minimum_bounding_box,
)

coord = st.floats(-20, 20, allow_nan=False, allow_infinity=False)
pt = st.tuples(coord, coord)


def test_gcm_examples():
    out = gcm(Instance.of([(0, 0), (2, 2)]), GcmConfig(((1, 5),)))
    assert out == Lottery.point((1.0, 2.0))
    s = 1 / math.sqrt(2)
    inst = Instance.of([(0, 0)] * 3 + [(-1, 1), (-1 - s, -s)])
    out = gcm(inst, GcmConfig(((0, 11),) * 4))
    assert out.support[0] == pytest.approx((0, 1), abs=1e-12)
    assert approx_ratio(out, inst) == pytest.approx(1 + math.sqrt(2), abs=1e-9)
    assert gcm(Instance.of([(3, 4)] * 3), GcmConfig(((100, -100), (-7, 9)))) == Lottery.point((3, 4))


def test_gcm_config_validates():
    with pytest.raises(ValueError):
        GcmConfig(((1,),))


@settings(max_examples=200, deadline=None)
@given(st.lists(pt, min_size=1, max_size=7), st.lists(pt, max_size=5), st.data())
def test_gcm_coordinatewise_monotone(pts, phantoms, data):
    inst = Instance.of(pts)
    cfg = GcmConfig(tuple(phantoms))
    i = data.draw(st.integers(0, len(pts) - 1))
    dx, dy = data.draw(st.floats(0, 10)), data.draw(st.floats(0, 10))
    moved = inst.replace(i, (pts[i][0] + dx, pts[i][1] + dy))
    a, b = gcm(inst, cfg).support[0], gcm(moved, cfg).support[0]
    assert b[0] >= a[0] and b[1] >= a[1]


@pytest.mark.parametrize("f, out", [((1, 1), (1, 1)), ((-1, 3), (0, 2)), ((5, -5), (2, 0))])
def test_mbb_examples(f, out):
    assert minimum_bounding_box(Instance.of([(0, 0), (2, 2)]), f) == Lottery.point(out)


@settings(max_examples=200, deadline=None)
@given(pt, pt, pt)
def test_mbb_two_agents(a, b, f):
    inst = Instance.of([a, b])
    mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
    assert approx_ratio(minimum_bounding_box(inst, mid), inst) == pytest.approx(1, abs=1e-9)
    assert approx_ratio(minimum_bounding_box(inst, f), inst) <= 2 + 1e-9


def test_extreme_prediction_validates():
    with pytest.raises(ValueError):
        ExtremePrediction((1,))
    with pytest.raises(ValueError):
        ExtremePrediction((1, 1))
    with pytest.raises(IndexError):
        centroid_extremes(Instance.of([(0, 0), (1, 0)]), (0, 2))


def test_centroid_extremes_examples():
    inst = Instance.of([(0, 0), (2, 0), (1, 0.3)])
    out = centroid_extremes(inst, ExtremeIds((0, 1)))
    assert out == Lottery((((1, 0), 0.5), ((0, 0), 0.25), ((2, 0), 0.25)))
    assert approx_ratio(out, inst) == pytest.approx(1.5, abs=1e-12)

    eq = Instance.of([(math.cos(t), math.sin(t)) for t in (0, 2 * math.pi / 3, 4 * math.pi / 3)])
    r = approx_ratio(centroid_extremes(eq, (0, 1, 2)), eq)
    assert r == pytest.approx(0.5 + 0.5 * math.sqrt(3), abs=1e-12)


def test_centroid_extremes_uses_reports_and_weights_per_id():
    inst = Instance.of([(0, 0), (0, 0), (4, 0)])
    out = centroid_extremes(inst, (0, 1, 2))
    assert out.prob_of((0, 0)) == pytest.approx(1 / 3)
    assert out.prob_of((4 / 3, 0)) == pytest.approx(0.5)


@settings(max_examples=150, deadline=None)
@given(st.lists(pt, min_size=2, max_size=8, unique=True), st.data())
def test_centroid_support_inside_mec(pts, data):
    inst = Instance.of(pts)
    circ = min_enclosing_circle(inst.points)
    ids = data.draw(st.lists(st.integers(0, len(pts) - 1), min_size=2, max_size=len(pts), unique=True))
    for lot in (centroid_extremes(inst, ids), centroid_all(inst)):
        assert all(circ.contains(p) for p in lot.support)
        assert approx_ratio(lot, inst) <= 2 + 1e-9


@pytest.mark.parametrize("seed", range(30))
def test_correct_extremes_five_thirds(seed):
    rng = np.random.default_rng(seed)
    inst = Instance(2, tuple(map(tuple, rng.uniform(-5, 5, (int(rng.integers(2, 15)), 2)).tolist())))
    pred = accurate_extremes(inst)
    assert approx_ratio(centroid_extremes(inst, pred), inst) <= 5 / 3 + 1e-9


def test_centroid_all_examples():
    assert centroid_all(Instance.of([(2, 3)])) == Lottery.point((2, 3))
    inst = Instance.of([(0, 0), (2, 0)])
    assert centroid_all(inst) == Lottery((((1, 0), 0.5), ((0, 0), 0.25), ((2, 0), 0.25)))
    assert approx_ratio(centroid_all(inst), inst) == pytest.approx(1.5, abs=1e-12)


@pytest.mark.parametrize("seed", range(30))
def test_centroid_all_bound(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 11))
    inst = Instance(2, tuple(map(tuple, rng.normal(size=(n, 2)).tolist())))
    assert approx_ratio(centroid_all(inst), inst) <= 2 - 1 / n + 1e-9


def test_perturbed_wrapper():
    square = Instance.of([(1, 0), (0, 1), (-1, 0), (0, -1), (0.1, 0.1)])
    a = centroid_extremes_perturbed(square)
    assert a == centroid_extremes_perturbed(square)
    seen = []

    def spy(inst):
        seen.append(inst)
        return accurate_extremes(inst)

    centroid_extremes_perturbed(square, seed=3, oracle=spy)
    eps = 1e-7 * diameter(square)
    assert seen[0] == perturb(square, eps, 3)
    k = len(accurate_extremes(seen[0]).ids)
    assert 2 <= k <= 3
    # ids come from the perturbed copy, locations from the original reports
    ids = accurate_extremes(perturb(square, eps, 42)).ids
    assert a == centroid_extremes(square, ids)
    assert approx_ratio(a, square) <= 5 / 3 + 1e-9


def test_perturbed_matches_plain_for_generic_instances():
    inst = Instance.of([(0, 0), (4, 0), (1, 3), (1.5, 1)])
    assert centroid_extremes_perturbed(inst) == centroid_extremes(inst, extreme_ids(inst))


def test_perturbed_unanimous():
    inst = Instance.of([(2, 2)] * 3)
    assert centroid_extremes_perturbed(inst) == Lottery.point((2, 2))


def test_adversarial_sets_stay_below_two():
    rng = np.random.default_rng(5)
    for _ in range(10):
        inst = Instance(2, tuple(map(tuple, rng.uniform(-3, 3, (6, 2)).tolist())))
        for k in (2, 3):
            for ids in itertools.combinations(range(6), k):
                assert approx_ratio(centroid_extremes(inst, ids), inst) <= 2 + 1e-9
