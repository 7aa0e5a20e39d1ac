# Author: Intergraph developers
#
# License: BSD 3-Clause

from enum import Enum
from typing import List, Optional

from sklearn.utils import Bunch

from .._permgrp import Permutation, generate, parse_cycles
from .._unitary3 import make_unitary_action
from .._utils import _logger
from ._base import get_data_dir

_HEADER_KEYS = ("degree", "order", "name", "simple", "family", "large")
_UNITARY_PRESETS = {"u3_3": 3}


class PresetFamily(Enum):
    ALTERNATING = "alternating"
    PSL2 = "psl2"
    SYMMETRIC = "symmetric"
    UNITARY = "unitary"


def _yes_no(value: str, key: str) -> bool:
    if value not in ("yes", "no"):
        raise ValueError(f"'{key}' should be 'yes' or 'no', got {value!r}")
    return value == "yes"


def parse_preset(text: str) -> Bunch:
    """Parse a preset file.

    Header lines ``key value`` (degree first, then order, name, simple,
    family and optionally large) are followed by one generator per line in
    1-based cycle notation. Lines starting with ``#`` are ignored.

    Returns
    -------
    preset : :class:`~sklearn.utils.Bunch`
        With keys `degree`, `expected_order`, `name`, `simple`, `family`,
        `large` and `generators` (list of Permutation).
    """
    header = {}
    generators = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("("):
            if "degree" not in header:
                raise ValueError(f"Line {lineno}: generator before the degree line")
            generators.append(parse_cycles(line, degree=int(header["degree"])))
            continue
        if generators:
            raise ValueError(f"Line {lineno}: header line after the generators")
        key, _, value = line.partition(" ")
        if key not in _HEADER_KEYS:
            raise ValueError(f"Line {lineno}: unknown header key {key!r}")
        if not header and key != "degree":
            raise ValueError(f"Line {lineno}: the first line should be 'degree N'")
        header[key] = value.strip()
    missing = [k for k in _HEADER_KEYS[:-1] if k not in header]
    if missing:
        raise ValueError(f"Preset header misses {missing}")
    return Bunch(
        degree=int(header["degree"]),
        expected_order=int(header["order"]),
        name=header["name"],
        simple=_yes_no(header["simple"], "simple"),
        family=PresetFamily(header["family"]).value,
        large=_yes_no(header.get("large", "no"), "large"),
        generators=generators,
    )


def list_presets() -> List[str]:
    """Names accepted by :func:`load_preset`, in alphabetical order."""
    names = [p.stem for p in get_data_dir("presets").glob("*.txt")]
    return sorted(names + list(_UNITARY_PRESETS))


def _attach_group(preset: Bunch, key: str, cap: Optional[int]) -> Bunch:
    group = generate(
        preset.generators, degree=preset.degree, cap=cap, name=preset.name
    )
    if group.order != preset.expected_order:
        raise ValueError(
            f"Preset '{key}' generates a group of order {group.order}, "
            f"expected {preset.expected_order}"
        )
    preset.group = group
    preset.key = key
    _logger.info(f"Loaded preset '{key}': {group!r}")
    return preset


def make_unitary_preset(q: int = 3, *, cap: Optional[int] = None) -> Bunch:
    """The simple unitary group U_3(q) on its ``q^3 + 1`` isotropic points.

    The generators are computed from the Hermitian geometry over GF(q^2)
    rather than transcribed.

    Parameters
    ----------
    q : int, default=3
        Prime power; only q = 3 is within the default caps.
    cap : int, default=None
        Group order cap passed to :func:`generate`.

    Returns
    -------
    preset : :class:`~sklearn.utils.Bunch`
        Same fields as :func:`load_preset`.
    """
    degree, images, expected = make_unitary_action(q)
    preset = Bunch(
        degree=degree,
        expected_order=expected,
        name=f"U3({q})",
        simple=q > 2,
        family=PresetFamily.UNITARY.value,
        large=True,
        generators=[Permutation(p) for p in images],
    )
    return _attach_group(preset, f"u3_{q}", cap)


def load_preset(
    name: str, *, allow_large: bool = False, cap: Optional[int] = None
) -> Bunch:
    """Load a preset permutation group and confirm its order.

    Parameters
    ----------
    name : str
        One of :func:`list_presets`.
    allow_large : bool, default=False
        Large presets (PSL(2,19), U3(3)) are only loaded when True.
    cap : int, default=None
        Group order cap passed to :func:`generate`.

    Returns
    -------
    preset : :class:`~sklearn.utils.Bunch`
        Dictionary-like object, with the following attributes.

        group : Group
            The generated group.
        name : str
            Display name, e.g. 'PSL(2,7)'.
        degree, expected_order : int
        simple, large : bool
        family : str
            'alternating', 'psl2', 'symmetric' or 'unitary'.
        generators : list of Permutation

    Examples
    --------
    >>> load_preset("a5").group.order
    60
    """
    if name in _UNITARY_PRESETS:
        if not allow_large:
            raise ValueError(f"Preset '{name}' is large, pass allow_large=True")
        return make_unitary_preset(_UNITARY_PRESETS[name], cap=cap)
    path = get_data_dir("presets") / f"{name}.txt"
    if not path.is_file():
        raise ValueError(f"Unknown preset '{name}', expected one of {list_presets()}")
    preset = parse_preset(path.read_text())
    if preset.large and not allow_large:
        raise ValueError(f"Preset '{name}' is large, pass allow_large=True")
    return _attach_group(preset, name, cap)
