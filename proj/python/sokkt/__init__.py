"""Second-order KKT analysis for C^{1,1} vector optimization problems."""

import json as _json

from ._core import (
    Function,
    Problem,
    catalog_names,
    catalog_problem,
    critical_directions,
    fd_validate,
    membership_l2,
    parse_problem,
    piece_hessians,
    serialize_problem,
    sosd_support,
    tangent2_membership,
    taylor_sandwich,
)
from . import _core as _c

__all__ = [
    "Function",
    "Problem",
    "catalog_names",
    "catalog_problem",
    "certify_sufficient",
    "check_ascq",
    "check_first_order",
    "critical_directions",
    "fd_validate",
    "grid_oracle",
    "membership_l2",
    "necessary_multipliers",
    "parse_problem",
    "piece_hessians",
    "serialize_problem",
    "sosd_support",
    "tangent2_membership",
    "taylor_sandwich",
]


def check_ascq(problem, x, u):
    """ASCQ sufficient certificate report as a dict."""
    return _json.loads(_c.check_ascq_json(problem, x, u))


def check_first_order(problem, x):
    return _json.loads(_c.check_first_order_json(problem, x))


def necessary_multipliers(problem, x, u):
    return _json.loads(_c.necessary_multipliers_json(problem, x, u))


def certify_sufficient(problem, x, samples=64, seed=42):
    return _json.loads(_c.certify_sufficient_json(problem, x, samples, seed))


def grid_oracle(problem, x, radius=0.25, resolution=41, weak=False):
    return _json.loads(_c.grid_oracle_json(problem, x, radius, resolution, weak))
