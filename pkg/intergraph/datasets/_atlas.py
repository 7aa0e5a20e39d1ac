# Author: Intergraph developers
#
# License: BSD 3-Clause

import json
import os
from typing import Union

from .._arith import AtlasConstants
from .._utils import _logger
from ..base import ConstantsIntegrityError
from ._base import get_data_dir


def _parse_entries(entries, section):
    out = []
    for entry in entries:
        try:
            name, value, source = entry["name"], entry["value"], entry["source"]
        except (KeyError, TypeError):
            raise ConstantsIntegrityError(f"Malformed entry in '{section}': {entry!r}")
        if not isinstance(value, str) or not value.isdigit():
            raise ConstantsIntegrityError(
                f"'{name}' should be a decimal string, got {value!r}"
            )
        out.append((name, int(value), source))
    return out


def load_atlas_constants(
    path: Union[str, os.PathLike, None] = None,
) -> AtlasConstants:
    """Load the sporadic group orders and re-check their divisibilities.

    Values are stored as decimal strings, each with the reference it was
    transcribed from.

    Parameters
    ----------
    path : str or path-like, default=None
        JSON file to read. If `None`, the file shipped with the package is
        used.

    Returns
    -------
    constants : AtlasConstants
        Verified constants.

    Raises
    ------
    ConstantsIntegrityError
        If the file is malformed or a divisibility check fails.
    """
    if path is None:
        path = get_data_dir() / "atlas_constants.json"
    with open(path) as f:
        try:
            raw = json.load(f)
        except json.JSONDecodeError as e:
            raise ConstantsIntegrityError(f"Invalid constants file {path}: {e}")
    try:
        orders = _parse_entries(raw["orders"], "orders")
        maximals = _parse_entries(raw["m23_maximal_subgroups"], "m23_maximal_subgroups")
        structure = _parse_entries(raw["structure"], "structure")
    except KeyError as e:
        raise ConstantsIntegrityError(f"Missing section {e} in {path}")
    sources = {name: source for name, _, source in orders + structure}
    constants = AtlasConstants(
        orders={name: value for name, value, _ in orders},
        m23_maximal_orders=[(name, value) for name, value, _ in maximals],
        structure={name: value for name, value, _ in structure},
        sources=sources,
    )
    constants.verify()
    _logger.debug(f"Loaded {len(orders) + len(structure)} constants from {path}")
    return constants
