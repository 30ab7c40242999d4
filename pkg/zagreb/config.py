"""
Config
======

A module for handling the package defaults and user configuration YAML files.

Settings are layered, lowest priority first:

* package defaults (``user_settings.yaml`` shipped with zagreb)
* a user YAML file, passed as ``zagreb --config FILE``
* the ``ZAGREB_BUDGET`` environment variable (enumeration expansion cap)
* command-line flags, applied by the caller on the returned object

Examples
--------
>>> from zagreb.config import get_config
>>> cfg = get_config()
>>> cfg.budget
1000000000
"""

import logging
import os
from importlib import resources

import yaml
from munch import munchify

from .common import load_user_config, validate_file

log = logging.getLogger(__name__)

BUDGET_ENV = "ZAGREB_BUDGET"

with resources.files("zagreb").joinpath("user_settings.yaml").open("r") as f:
    settings = yaml.safe_load(f)

# Unpack defaults used as module constants elsewhere
DEFAULT_BUDGET = settings["budget"]
BRUTE_MAX_PENDANTS = settings["brute_max_pendants"]

# Library limits; not settable from a user file
MAX_VERTICES = 65536
MAX_SCHEME_DEGREE = 64
LOG_SPACE_THRESHOLD = 64  # multiplicative indices switch to log-space above N
TOLERANCE = 1e-9
RELATIVE_TOLERANCE = 1e-12
FLOAT_DIGITS = 12

FIXED_SETTINGS = {
    "max_vertices": MAX_VERTICES,
    "max_scheme_degree": MAX_SCHEME_DEGREE,
    "log_space_threshold": LOG_SPACE_THRESHOLD,
    "tolerance": TOLERANCE,
    "relative_tolerance": RELATIVE_TOLERANCE,
    "float_digits": FLOAT_DIGITS,
}


def _available_threads():
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:  # pragma: no cover
        return os.cpu_count() or 1


def get_config(cfgfile=None):
    """
    Build the run configuration.

    Parameters
    ----------
    cfgfile : str or Path-like, optional
        User YAML file whose keys override the package defaults. Unknown keys
        and fixed library limits are logged and ignored.

    Returns
    -------
    Munch object
    """
    cfg = munchify(dict(settings))

    if cfgfile is not None:
        user_cfg = load_user_config(validate_file(cfgfile))
        fixed = sorted(set(user_cfg) & set(FIXED_SETTINGS))
        if fixed:
            log.warning(f"Ignoring fixed library limits set in {cfgfile}: {fixed}")
        unknown = sorted(set(user_cfg) - set(cfg) - set(FIXED_SETTINGS))
        if unknown:
            log.warning(f"Ignoring unknown configuration keys: {unknown}")
        for k, v in user_cfg.items():
            if k in cfg:
                cfg[k] = v

    env_budget = os.environ.get(BUDGET_ENV)
    if env_budget is not None:
        try:
            cfg.budget = int(env_budget)
        except ValueError:
            raise ValueError(f"{BUDGET_ENV} must be an integer, not {env_budget!r}")
        log.info(f"Enumeration budget set to {cfg.budget} from {BUDGET_ENV}")

    if cfg.threads is None:
        cfg.threads = _available_threads()

    if cfg.budget <= 0:
        raise ValueError(f"budget must be positive, not {cfg.budget}")
    if cfg.brute_max_pendants < 2:
        raise ValueError(f"brute_max_pendants must be at least 2, not {cfg.brute_max_pendants}")

    return cfg
