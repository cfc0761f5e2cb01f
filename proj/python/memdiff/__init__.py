"""Python surface over the C++ core: dict/JSON convenience around _memdiff."""

import json as _json

from . import _memdiff as _core

__version__ = _core.version()


def _as_json(config):
    if isinstance(config, str):
        return config
    return _json.dumps(config)


def validate(config):
    """Return a list of violation dicts (empty means the config is usable)."""
    return _core.validate(_as_json(config))


def solve(config):
    return _core.solve(_as_json(config))


def certify(config, zero_constants=False):
    return _core.certify(_as_json(config), zero_constants)


def oracle_check(config):
    """Max relative deviation of the numeric trajectory from the closed form."""
    return _core.oracle_check(_as_json(config))


def refine_dt(config, dts):
    return _core.refine_dt(_as_json(config), list(dts))


def refine_N(config, Ns):
    return _core.refine_N(_as_json(config), [int(n) for n in Ns])


def weak_residual(config, j=1):
    return _core.weak_residual(_as_json(config), j)


def seed_sweep(config, n_seeds):
    return _core.seed_sweep(_as_json(config), int(n_seeds))


def sample_field(config, realization=0):
    return _core.sample_field(_as_json(config), realization)


def kernel_l1(config):
    return _core.kernel_l1(_as_json(config))


def eigenvalues(config):
    return _core.eigenvalues(_as_json(config))


def config_digest(config):
    return _core.config_digest(_as_json(config))


bainov_root = _core.bainov_root
bainov_root_cprime = _core.bainov_root_cprime
