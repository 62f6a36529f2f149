"""Python front end for the qclab simulator and experiment harness."""
import json

from ._core import (
    CapExceeded,
    ConfigError,
    InvalidArgument,
    InvalidState,
    IoError,
    QclabError,
    experiment_names,
    fidelity,
    haar_state,
    partial_trace,
    qubit_cap,
    random_density_matrix,
    set_qubit_cap,
    trace_distance,
)
from . import _core

__all__ = [
    "CapExceeded", "ConfigError", "InvalidArgument", "InvalidState", "IoError", "QclabError",
    "default_params", "experiment_names", "fidelity", "haar_state", "partial_trace", "qubit_cap",
    "random_density_matrix", "replay_fingerprint", "run_criterion", "run_experiment", "set_qubit_cap",
    "trace_distance",
]


def default_params(experiment):
    return json.loads(_core.default_params(experiment))


def run_experiment(config, write=False):
    """Run an experiment from a config dict; returns the report as a dict."""
    return json.loads(_core.run_experiment_json(json.dumps(config), write))


def run_criterion(criterion, seed=42):
    return json.loads(_core.run_criterion_json(criterion, seed))


def replay_fingerprint(report):
    return _core.replay_fingerprint(json.dumps(report))
