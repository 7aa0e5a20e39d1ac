# Author: Intergraph developers
#
# License: BSD 3-Clause

import logging
import os
from typing import Optional

_logger = logging.getLogger("intergraph")
_logger.setLevel(logging.DEBUG)

# Default caps, overridable per call and (lattice only) through the environment
_DEFAULT_FIELD_CAP = 2**20
_DEFAULT_GROUP_CAP = 20_000
_DEFAULT_LATTICE_CAP = 10_000
_DEFAULT_SUBGROUP_COUNT_CAP = 200_000
_DEFAULT_RATIO_BOUND = 10_000

# Fields up to this size get exp/log tables
_TABLE_FIELD_CAP = 2**16

# Scan for the trace equation below this q, linear algebra above
_TRACE_SCAN_CAP = 64

_LATTICE_CAP_ENV_KEY = "INTERGRAPH_CAP"


def get_lattice_cap(cap: Optional[int] = None) -> int:
    """Return the cap on the group order for subgroup lattice enumeration.

    By default the cap is 10,000. Alternatively, it can be set by the
    'INTERGRAPH_CAP' environment variable or programmatically by giving an
    explicit value.

    Parameters
    ----------
    cap : int, default=None
        Explicit cap. If `None`, the environment variable is looked up and
        the default is used when it is not set.

    Returns
    -------
    cap : int
        The resolved lattice cap.
    """
    if cap is None:
        cap = os.environ.get(_LATTICE_CAP_ENV_KEY, _DEFAULT_LATTICE_CAP)
    try:
        cap = int(cap)
    except (TypeError, ValueError):
        raise ValueError(f"Invalid lattice cap: {cap!r}")
    if cap <= 0:
        raise ValueError(f"Lattice cap should be positive, got {cap}")
    return cap


def _resolve_n_jobs(n_jobs):
    # joblib convention: None means a single worker
    return 1 if n_jobs is None else n_jobs
