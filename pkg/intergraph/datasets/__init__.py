# Author: Intergraph developers
#
# License: BSD 3-Clause

"""
Preset groups and transcribed constants used by the verification runs.
"""

from ._base import get_data_dir, load_report_schema
from ._atlas import load_atlas_constants
from ._presets import (
    PresetFamily,
    list_presets,
    load_preset,
    make_unitary_preset,
    parse_preset,
)

__all__ = [
    "PresetFamily",
    "get_data_dir",
    "list_presets",
    "load_atlas_constants",
    "load_preset",
    "load_report_schema",
    "make_unitary_preset",
    "parse_preset",
]
