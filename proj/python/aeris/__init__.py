"""Python bindings for the aeris simulator.

Configs travel as JSON text; the helpers below accept dicts and return parsed
results.
"""

import json

from . import _aeris
from ._aeris import ConfigInvalid, Error, ExceedsPMax, NoFeasiblePath, los_blocked, min_power_outage, outage_probability

__all__ = [
    "ConfigInvalid",
    "Error",
    "ExceedsPMax",
    "NoFeasiblePath",
    "default_config",
    "gen_scenario",
    "los_blocked",
    "min_power_outage",
    "outage_probability",
    "plot_data",
    "run",
    "sweep",
]


def _text(config):
    return config if isinstance(config, str) else json.dumps(config)


def default_config():
    return json.loads(_aeris.default_config())


def gen_scenario(config):
    return json.loads(_aeris.gen_scenario(_text(config)))


def run(config, method, seed):
    """Returns (metrics dict, list of event dicts)."""
    metrics, log = _aeris.run(_text(config), method, seed)
    events = [json.loads(line) for line in log.splitlines() if line]
    return json.loads(metrics), events


def sweep(config, loads, methods=("all",), seeds=20, threads=0):
    return _aeris.sweep(_text(config), list(loads), list(methods), seeds, threads)


def plot_data(sweep_csv):
    return _aeris.plot_data(sweep_csv)
