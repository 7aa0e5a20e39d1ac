# Author: Intergraph developers
#
# License: BSD 3-Clause

import operator
from math import gcd
from typing import List, Optional, Tuple

from sympy import factorint, isprime
from sympy import sieve as _sieve


def prime_power_decomposition(n: int) -> Optional[Tuple[int, int]]:
    """Return ``(p, m)`` with ``n == p**m`` or None if n is not a prime power.

    Examples
    --------
    >>> prime_power_decomposition(9)
    (3, 2)
    >>> prime_power_decomposition(12) is None
    True
    """
    if n < 2:
        return None
    factors = factorint(n)
    if len(factors) != 1:
        return None
    ((p, m),) = factors.items()
    return p, m


def is_prime_power(n: int) -> bool:
    return prime_power_decomposition(n) is not None


def prime_powers(lo: int, hi: int) -> List[int]:
    """All prime powers q with ``lo <= q <= hi`` in increasing order.

    The primes come from a sieve; their powers are then collected up to the
    bound.

    Examples
    --------
    >>> prime_powers(2, 16)
    [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]
    """
    out = []
    for p in _sieve.primerange(2, hi + 1):
        q = p
        while q <= hi:
            if q >= lo:
                out.append(q)
            q *= p
    return sorted(out)


def exact_div(a: int, b: int, what: str = "division") -> int:
    """Integer division asserted to be exact.

    Raises
    ------
    ValueError
        If ``b`` does not divide ``a``.
    """
    if b == 0 or a % b:
        raise ValueError(f"Inexact {what}: {a} / {b}")
    return a // b


def check_prime(p: int, name: str = "p") -> int:
    try:
        p = operator.index(p)
    except TypeError:
        raise ValueError(f"'{name}' should be an integer, got {p!r}")
    if not isprime(p):
        raise ValueError(f"'{name}' should be a prime, got {p}")
    return p


__all__ = [
    "check_prime",
    "exact_div",
    "gcd",
    "is_prime_power",
    "prime_power_decomposition",
    "prime_powers",
]
