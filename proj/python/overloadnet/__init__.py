"""Python face of the overloadnet C++ core.

The compiled extension does the work; this package adds dict-based wrappers
around its JSON-string interface.
"""

import json

try:
    from . import _core
except ImportError:  # built as a flat extension next to this package
    import _core

ConfigError = _core.ConfigError
InvariantViolation = _core.InvariantViolation

__version__ = _core.__version__

preset_names = _core.preset_names
derivative_bound = _core.derivative_bound
flow_control_rate = _core.flow_control_rate
pseudo_backlog = _core.pseudo_backlog


def preset_config(name):
    """Fully resolved config of a built-in preset, as a dict."""
    return json.loads(_core.preset_config_json(name))


def run(config):
    """Run one experiment; `config` is a config dict. Returns the metrics dict."""
    return json.loads(_core.run_json(json.dumps(config)))


def oracle(config, grid_step=1.0 / 120.0):
    """Optimal throughput for a config's mean arrival rates, as a dict."""
    return json.loads(_core.oracle_json(json.dumps(config), grid_step))
