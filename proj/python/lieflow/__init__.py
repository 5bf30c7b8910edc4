"""Lie-Poisson brackets, shifted-invariant families, and geodesic flows.

The heavy lifting lives in the compiled ``_core`` module; this package adds
a dict-level wrapper around the JSON scenario runner.
"""

import json as _json

from ._core import (
    Biquotient,
    HomogeneousSpace,
    LieAlgebra,
    SubalgebraEmbedding,
    algebra,
    check_kinds,
    embedding,
    euler_flow,
    involutivity_residual,
    orbit_completeness,
    run_scenario_json,
    shift_family_labels,
    version,
)

__version__ = version()

__all__ = [
    "Biquotient",
    "HomogeneousSpace",
    "LieAlgebra",
    "SubalgebraEmbedding",
    "algebra",
    "check_kinds",
    "embedding",
    "euler_flow",
    "involutivity_residual",
    "orbit_completeness",
    "run_scenario",
    "run_scenario_json",
    "shift_family_labels",
    "version",
]


def run_scenario(config):
    """Run a scenario given as a dict; returns the report as a dict."""
    report_text = run_scenario_json(_json.dumps(config))
    return _json.loads(report_text)
