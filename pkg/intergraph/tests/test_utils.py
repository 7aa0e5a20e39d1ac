# Author: Intergraph developers
#
# License: BSD 3-Clause

import pytest

from intergraph import get_lattice_cap
from intergraph.utils import (
    check_prime,
    exact_div,
    is_prime_power,
    prime_power_decomposition,
    prime_powers,
)


def test_prime_powers():
    assert prime_powers(2, 16) == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]
    assert prime_powers(17, 20) == [17, 19]
    assert prime_powers(24, 24) == []
    assert len(prime_powers(2, 10000)) == 1280


@pytest.mark.parametrize(
    "n, expected",
    [(2, (2, 1)), (9, (3, 2)), (1024, (2, 10)), (6, None), (1, None), (0, None)],
)
def test_prime_power_decomposition(n, expected):
    assert prime_power_decomposition(n) == expected
    assert is_prime_power(n) == (expected is not None)


def test_exact_div():
    assert exact_div(506, 23) == 22
    with pytest.raises(ValueError, match="Inexact index"):
        exact_div(506, 24, "index")
    with pytest.raises(ValueError):
        exact_div(1, 0)


def test_check_prime():
    assert check_prime(7) == 7
    with pytest.raises(ValueError, match="prime"):
        check_prime(9)
    with pytest.raises(ValueError, match="integer"):
        check_prime(2.5, name="p")


def test_get_lattice_cap(monkeypatch):
    monkeypatch.delenv("INTERGRAPH_CAP", raising=False)
    assert get_lattice_cap() == 10_000
    assert get_lattice_cap(50) == 50
    monkeypatch.setenv("INTERGRAPH_CAP", "120")
    assert get_lattice_cap() == 120
    assert get_lattice_cap(7) == 7


@pytest.mark.parametrize("value", ["many", "0", "-3"])
def test_get_lattice_cap_invalid(monkeypatch, value):
    monkeypatch.setenv("INTERGRAPH_CAP", value)
    with pytest.raises(ValueError):
        get_lattice_cap()
