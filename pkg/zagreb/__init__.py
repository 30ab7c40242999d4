"""
Library and scripts for degree-based topological indices of trees, the trees
that minimize them for a fixed number of pendent vertices, and the lower bounds
those minima are checked against.
"""

import logging
from importlib.metadata import PackageNotFoundError, version

log = logging.getLogger(__name__)

try:
    __version__ = version(__name__)
except PackageNotFoundError:
    # package is not installed
    pass
