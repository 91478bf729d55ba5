"""Permutation metaheuristics over a shared random-keys genome."""

from .common import (
    KEY_MAX,
    Candidate,
    ConvergenceTrace,
    OptimizerConfig,
    decode,
    decode_keys,
    mean_time_metric,
    population_evaluator,
    run_search,
    scaled_time_to_best,
)
from .ga import run_ga
from .gwo import run_gwo
from .ica import run_ica
from .mfo import run_mfo, spiral_step
from .mvo import run_mvo

#: Registry used by the service and the experiment harness.
ALGORITHMS = {
    "ga": run_ga,
    "ica": run_ica,
    "gwo": run_gwo,
    "mvo": run_mvo,
    "mfo": run_mfo,
}

__all__ = [
    "ALGORITHMS",
    "KEY_MAX",
    "Candidate",
    "ConvergenceTrace",
    "OptimizerConfig",
    "decode",
    "decode_keys",
    "mean_time_metric",
    "population_evaluator",
    "run_ga",
    "run_gwo",
    "run_ica",
    "run_mfo",
    "run_mvo",
    "run_search",
    "scaled_time_to_best",
    "spiral_step",
]
