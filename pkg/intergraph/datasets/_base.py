# Author: Intergraph developers
#
# License: BSD 3-Clause

import json
from pathlib import Path
from typing import Union

_DATA_DIR = Path(__file__).resolve().parent / "data"


def get_data_dir(subfolder: Union[str, None] = None) -> Path:
    """Return the folder holding the data files shipped with `intergraph`.

    Parameters
    ----------
    subfolder : str, default=None
        Optional subfolder, e.g. 'presets'.

    Returns
    -------
    data_dir : Path
        The path to the data folder.
    """
    path = _DATA_DIR if subfolder is None else _DATA_DIR / subfolder
    if not path.is_dir():
        raise FileNotFoundError(f"No data folder {path}")
    return path


def load_report_schema() -> dict:
    """JSON schema every serialized report validates against."""
    with open(get_data_dir() / "report_schema.json") as f:
        return json.load(f)
