"""
JSON records for everything zagreb writes to standard output or to files.
"""

import json
import math

import numpy as np
from munch import Munch

from .common import WitnessError
from .config import FLOAT_DIGITS, TOLERANCE
from .dp_solver import attached_cost
from .indices import WeightScheme, abstract_cost
from .io import write_graph6
from .tree import Tree


def _plain(obj):
    """Convert numpy scalars, trees and nested containers to JSON-ready values."""
    if isinstance(obj, Tree):
        return write_graph6(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        obj = float(obj)
        if not math.isfinite(obj):
            return None
        return round(obj, FLOAT_DIGITS)
    return obj


class Record(Munch):
    """
    A dictionary class with the attribute-style access of Munch, serialized
    deterministically: keys sorted, floats rounded to a fixed number of digits
    and trees written as graph6.
    """

    def to_json(self, indent=None) -> str:
        return json.dumps(_plain(dict(self)), sort_keys=True, indent=indent)

    def save(self, fname):
        """
        Export the record to a JSON file, overwriting existing contents.

        Parameters
        ----------
        fname : str or Path-like
            filename
        """
        with open(fname, "w") as f:
            f.write(self.to_json(indent=4) + "\n")


def json_lines(records) -> str:
    """One compact JSON document per line."""
    return "".join(Record(r).to_json() + "\n" for r in records)


def validate_witness(t: Tree, n: int, value, scheme: WeightScheme):
    """
    Re-check a witness before it is reported.

    Raises
    ------
    WitnessError
        Wrong pendant count, or the index recomputed on `t` differs from
        `value`.
    """
    if t.pendant_count != n:
        raise WitnessError(f"Witness has {t.pendant_count} pendants, expected {n}")
    actual = abstract_cost(t, scheme)
    if abs(actual - value) > TOLERANCE * max(1.0, abs(value)):
        raise WitnessError(f"Witness {scheme.name} is {actual}, reported {value}")


def validate_attached_witness(t: Tree, root: int, p: int, n: int, value, scheme: WeightScheme):
    """
    Re-check an attached-tree witness: `n` pendants below the leaf `root`,
    and attached cost `value` at virtual degree `p`.
    """
    # the root is a leaf of the stored tree but not a pendant of the attached tree
    if t.pendant_count != n + 1:
        raise WitnessError(f"Attached witness has {t.pendant_count - 1} pendants, expected {n}")
    actual = attached_cost(t, root, p, scheme)
    if abs(actual - value) > TOLERANCE * max(1.0, abs(value)):
        raise WitnessError(f"Attached witness cost is {actual}, reported {value}")
