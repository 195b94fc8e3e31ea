"""Truthful facility-location mechanisms with predictions.

Exact lottery arithmetic for the egalitarian social cost, line and plane
mechanisms, truthfulness audits, and replays of lower-bound witness
instances.
"""

from .kernels import BACKEND
from .geometry import (
    Circle,
    DegenerateTriangleError,
    EulerReport,
    centroid,
    circumcircle,
    distance,
    euler_data,
    min_enclosing_circle,
    min_enclosing_circle_bruteforce,
    orthocenter,
)
from .model import (
    ExtremeIds,
    FullLocations,
    Instance,
    Lottery,
    NoPrediction,
    OptimalFacility,
    OptimalSolution,
    agent_expected_cost,
    approx_ratio,
    egalitarian_cost,
    extreme_ids,
    optimal_solution,
    perturb,
)

__version__ = "0.1.0"
