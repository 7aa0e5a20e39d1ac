"""
Exact order arithmetic
======================

Group orders, index computations and the counting inequalities used for the
groups far beyond enumeration scale. Only integers and
:class:`fractions.Fraction` are used, never floats.
"""
# Author: Intergraph developers
#
# License: BSD 3-Clause

import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Dict, List, Optional, Tuple

from ._utils import _DEFAULT_RATIO_BOUND, _logger
from .base import ConstantsIntegrityError, HypothesisError, Report, check
from .utils import exact_div, gcd, is_prime_power, prime_powers

_UNITARY_DEGREES = (3, 5, 7, 11, 13)

TOTALLY_SINGULAR = "totally_singular"
NONDEGENERATE = "nondegenerate"


def _check_q(q: int):
    if not is_prime_power(q):
        raise ValueError(f"q should be a prime power, got {q}")


def un_order(n: int, q: int) -> int:
    """Order of the simple unitary group U_n(q).

    ``q^(n(n-1)/2) * prod_{i=2..n} (q^i - (-1)^i) / gcd(n, q + 1)``

    Examples
    --------
    >>> un_order(3, 3)
    6048
    >>> un_order(5, 2)
    13685760
    """
    if n not in _UNITARY_DEGREES:
        raise ValueError(f"n should be one of {_UNITARY_DEGREES}, got {n}")
    _check_q(q)
    num = q ** (n * (n - 1) // 2) * prod(q**i - (-1) ** i for i in range(2, n + 1))
    return exact_div(num, gcd(n, q + 1), f"|U_{n}({q})|")


def su3_order(q: int) -> int:
    """``|SU_3(q)| = q^3 (q^2 - 1)(q^3 + 1)``."""
    _check_q(q)
    return q**3 * (q**2 - 1) * (q**3 + 1)


def unitary_point_stabilizer_order(n: int, q: int, kind: str) -> int:
    """Order of the stabilizer in U_n(q) of a one-dimensional subspace.

    Parameters
    ----------
    n : {3, 5}
        Dimension.
    q : int
        Prime power.
    kind : {'totally_singular', 'nondegenerate'}
        Type of the subspace.
    """
    _check_q(q)
    d = gcd(n, q + 1)
    orders = {
        (3, TOTALLY_SINGULAR): q**3 * (q**2 - 1),
        (3, NONDEGENERATE): q * (q + 1) * (q**2 - 1),
        (5, TOTALLY_SINGULAR): q**10 * (q**2 - 1) ** 2 * (q**3 + 1),
        (5, NONDEGENERATE): q**6 * (q + 1) * (q**2 - 1) * (q**3 + 1) * (q**4 - 1),
    }
    if (n, kind) not in orders:
        raise ValueError(f"Unsupported stabilizer ({n}, {kind!r})")
    return exact_div(orders[n, kind], d, "stabilizer order")


def unitary_singer_order(n: int, q: int) -> int:
    """Order ``(q^n + 1) / ((q + 1) gcd(q + 1, n))`` of a Singer subgroup of U_n(q)."""
    _check_q(q)
    return exact_div(q**n + 1, (q + 1) * gcd(q + 1, n), "Singer order")


def u3_ratio(q: int) -> Fraction:
    return Fraction(q**3 * (q**2 - 1), (q**3 + 1) * gcd(q + 1, 3))


def u5_ratio(q: int, kind: str) -> Fraction:
    d = gcd(q + 1, 5)
    if kind == TOTALLY_SINGULAR:
        return Fraction(
            q**10 * (q**2 - 1) ** 3 * (q**3 + 1), (q**4 - 1) * (q**5 + 1) * d
        )
    if kind == NONDEGENERATE:
        signed = prod(q**i - (-1) ** i for i in range(1, 5))
        return Fraction(q**2 * (q + 1) * signed, (q**5 + 1) * d)
    raise ValueError(f"Unknown kind {kind!r}")


def _bounds_u3(q: int) -> List[Fraction]:
    return [Fraction(q**3 * (q - 1), q**3 + 1), Fraction(1)]


def _bounds_u5(q: int, kind: str) -> List[Fraction]:
    if kind == TOTALLY_SINGULAR:
        lower = Fraction(q**10, (q**4 - 1) * (q**5 + 1))
        if lower != Fraction(q**10, q**9 - q**5 + q**4 - 1):
            raise AssertionError("Expanded denominator mismatch")
        return [lower, Fraction(1)]
    lower = Fraction(q**2 * (q**4 - 1), q**5 + 1)
    if lower != Fraction(q**6 - q**2, q**5 + 1):
        raise AssertionError("Expanded numerator mismatch")
    return [lower, Fraction(1)]


def _scan(name, qs, n, kind, ratio, bounds, strict_first) -> Report:
    """Run one ratio suite over prime powers and record its checks.

    `bounds` gives the chain of lower bounds the ratio is compared against;
    the first comparison is ``>=`` when `strict_first` is False.
    """
    if not qs:
        raise ValueError(f"{name}: no prime power in the requested range")
    violations, chain_failures, cross_failures, singer_failures = [], [], [], []
    ratios = []
    for q in qs:
        r = ratio(q)
        ratios.append(r)
        if not r > 1:
            violations.append({"q": q, "ratio": r})
        chain = [r] + bounds(q)
        links = zip(chain, chain[1:])
        first, rest = next(links), list(links)
        ok = first[0] > first[1] if strict_first else first[0] >= first[1]
        if not ok or not all(a > b for a, b in rest):
            chain_failures.append({"q": q, "chain": chain})
        L = unitary_point_stabilizer_order(n, q, kind)
        G = un_order(n, q)
        if Fraction(L**2, G) != r or L % 2:
            cross_failures.append({"q": q, "L": L, "G": G})
        try:
            unitary_singer_order(n, q)
        except ValueError:
            singer_failures.append({"q": q})

    monotone = all(a < b for a, b in zip(ratios, ratios[1:]))
    # the gcd(q + 1, n) factor makes the raw ratio jump down, so only the
    # ratio scaled by it is expected to increase
    scaled = [r * gcd(q + 1, n) for q, r in zip(qs, ratios)]
    scaled_monotone = all(a < b for a, b in zip(scaled, scaled[1:]))
    if not scaled_monotone:
        warnings.warn(f"{name} ratios are not increasing over the scanned range")
    values = {
        "q_min": qs[0],
        "q_max": qs[-1],
        "first_ratios": {q: r for q, r in zip(qs[:4], ratios[:4])},
        "min_ratio": min(ratios),
        "monotone": monotone,
        "monotone_without_gcd": scaled_monotone,
    }
    counts = {"prime_powers": len(qs)}
    singer = {"singer_order_first": unitary_singer_order(n, qs[0])}
    report = Report(name)
    for suffix, failures, extra in (
        ("ratio", violations, values),
        ("bound_chain", chain_failures, {}),
        ("stabilizer_orders", cross_failures, {}),
        ("singer_order", singer_failures, singer),
    ):
        report.add(
            check(
                f"{name}_{suffix}",
                not failures,
                counts=counts,
                values=extra,
                failures=failures,
            )
        )
    return report


def u3_ratio_check(q_lo: int = 3, q_hi: int = _DEFAULT_RATIO_BOUND) -> Report:
    """Check ``|L|^2 / |G| > 1`` for the totally singular point stabilizer of U_3(q).

    The exact ratio ``q^3(q^2 - 1) / ((q^3 + 1) gcd(q + 1, 3))`` is computed
    for every prime power in ``[q_lo, q_hi]`` together with the lower bound
    ``q^3 (q - 1) / (q^3 + 1) > 1``.

    Examples
    --------
    >>> u3_ratio(3)
    Fraction(54, 7)
    """
    if q_lo <= 2:
        raise HypothesisError(f"U_3(q) needs q > 2, got q_lo = {q_lo}")
    start = time.perf_counter()
    qs = prime_powers(q_lo, q_hi)
    report = _scan("u3", qs, 3, TOTALLY_SINGULAR, u3_ratio, _bounds_u3, False)
    report.config = {"q_lo": q_lo, "q_hi": q_hi}
    report.timings["u3"] = time.perf_counter() - start
    _logger.info(f"u3 ratios checked for {len(qs)} prime powers")
    return report


def u5_ratio_check(q_lo: int = 2, q_hi: int = _DEFAULT_RATIO_BOUND) -> Report:
    """Check both point stabilizer ratios of U_5(q) exceed 1.

    Totally singular points are compared with
    ``q^10 / (q^9 - q^5 + q^4 - 1) > 1`` and non-degenerate points with
    ``(q^6 - q^2) / (q^5 + 1) > 1``, every comparison done exactly.
    """
    if q_lo < 2:
        raise ValueError(f"q_lo should be at least 2, got {q_lo}")
    start = time.perf_counter()
    qs = prime_powers(q_lo, q_hi)
    report = Report("u5", config={"q_lo": q_lo, "q_hi": q_hi})
    for kind, short in ((TOTALLY_SINGULAR, "u5_ts"), (NONDEGENERATE, "u5_nd")):
        sub = _scan(
            short,
            qs,
            5,
            kind,
            lambda q, kind=kind: u5_ratio(q, kind),
            lambda q, kind=kind: _bounds_u5(q, kind),
            True,
        )
        report.extend(sub)
    report.timings["u5"] = time.perf_counter() - start
    return report


@dataclass
class AtlasConstants:
    """Orders of the sporadic groups involved, with their sources.

    Attributes
    ----------
    orders : dict of str to int
        Group orders keyed by name ('B', 'Fi23', 'Co2', 'M23', 'M22').
    m23_maximal_orders : list of (str, int)
        Orders of the maximal subgroups of M23, one entry per class.
    structure : dict of str to int
        Orders inside the baby monster: 'M1' (47:23), 'N_G_H', 'N_K_H',
        'N_L_H', 'N_M1_H' and the index factor 'index_factor'.
    sources : dict of str to str
        Where each value was transcribed from.
    """

    orders: Dict[str, int]
    m23_maximal_orders: List[Tuple[str, int]]
    structure: Dict[str, int]
    sources: Dict[str, str] = field(default_factory=dict)

    def verify(self) -> "AtlasConstants":
        """Re-check the divisibilities the transcription must satisfy.

        Raises
        ------
        ConstantsIntegrityError
            If a value is missing, not positive, or fails a divisibility.
        """
        required = ("B", "Fi23", "Co2", "M23", "M22")
        missing = [k for k in required if k not in self.orders]
        missing += [
            k
            for k in ("M1", "N_G_H", "N_K_H", "N_L_H", "N_M1_H", "index_factor")
            if k not in self.structure
        ]
        if missing or not self.m23_maximal_orders:
            raise ConstantsIntegrityError(f"Missing constants: {missing}")
        values = list(self.orders.values()) + list(self.structure.values())
        values += [m for _, m in self.m23_maximal_orders]
        if any(v <= 0 for v in values):
            raise ConstantsIntegrityError("Constants should be positive")
        o, s = self.orders, self.structure
        problems = []
        if o["B"] % s["M1"]:
            problems.append("|M1| does not divide |B|")
        if o["Fi23"] % s["N_K_H"]:
            problems.append("|N_K(H)| does not divide |Fi23|")
        if o["B"] % (2**23 * o["Co2"]):
            problems.append("2^23 |Co2| does not divide |B|")
        if o["M23"] % o["M22"]:
            problems.append("|M22| does not divide |M23|")
        if any(o["M23"] % m for _, m in self.m23_maximal_orders):
            problems.append("a maximal subgroup order does not divide |M23|")
        if s["M1"] != 47 * 23:
            problems.append("|M1| is not 47 * 23")
        if s["N_G_H"] % s["N_M1_H"] or s["N_G_H"] // s["N_M1_H"] != s["index_factor"]:
            problems.append("|N_G(H) : N_M1(H)| differs from the index factor")
        if problems:
            raise ConstantsIntegrityError("; ".join(problems))
        return self


def _constants(constants: Optional[AtlasConstants]) -> AtlasConstants:
    if constants is None:
        from .datasets import load_atlas_constants

        return load_atlas_constants()
    return constants.verify()


def m23_check(constants: Optional[AtlasConstants] = None) -> Report:
    """Check ``|M1| |L| > |G|`` and ``|M2| |L| > |G|`` for G = M23, L = M22.

    Here M1 is the odd order maximal subgroup 23:11 and M2 runs over every
    maximal subgroup in the constants table.
    """
    c = _constants(constants)
    G, L = c.orders["M23"], c.orders["M22"]
    odd = [(name, m) for name, m in c.m23_maximal_orders if m % 2]
    report = Report("m23")
    if len(odd) != 1:
        raise ConstantsIntegrityError(
            f"Expected one odd order maximal subgroup of M23, got {len(odd)}"
        )
    m1 = odd[0][1]
    report.add(
        check(
            "m1_times_l_exceeds_g",
            m1 * L > G,
            values={"M1": m1, "L": L, "product": m1 * L, "G": G},
        )
    )
    rows = [
        {"name": name, "order": m, "product": m * L, "exceeds": m * L > G}
        for name, m in c.m23_maximal_orders
    ]
    report.add(
        check(
            "every_maximal_times_l_exceeds_g",
            all(r["exceeds"] for r in rows),
            counts={"maximal_classes": len(rows)},
            values={"rows": rows},
            failures=[r for r in rows if not r["exceeds"]],
        )
    )
    return report


def bm_check(constants: Optional[AtlasConstants] = None) -> Report:
    """The counting argument showing two conjugates of 47:23 in B are far apart.

    Four comparisons, all exact:

    - ``|Fi23|^2 > |B|``,
    - ``|N_G(H) : N_M1(H)| = 506 / 23 = 22``,
    - ``|N_G(H) : N_K(H)| = 506 / 253 = 2``,
    - ``47 (2 |K : N_K(H)| + 22 * 47 + |L : N_L(H)|) < |G : M1| / 22`` with
      K = Fi23 and L = 2^(1+22).Co2.

    The slack of the last comparison is recorded but not asserted beyond
    the inequality itself.
    """
    c = _constants(constants)
    o, s = c.orders, c.structure
    B, K, L = o["B"], o["Fi23"], 2**23 * o["Co2"]
    report = Report("bm")
    report.add(
        check(
            "fi23_squared_exceeds_b",
            K**2 > B,
            values={"ratio": Fraction(K**2, B)},
        )
    )
    idx_m1 = exact_div(s["N_G_H"], s["N_M1_H"], "|N_G(H) : N_M1(H)|")
    report.add(
        check(
            "index_in_m1_normalizer",
            idx_m1 == s["index_factor"] == 22,
            values={
                "index": idx_m1,
                "sylow_23": B % 23 == 0 and B % 23**2 != 0,
            },
        )
    )
    idx_k = exact_div(s["N_G_H"], s["N_K_H"], "|N_G(H) : N_K(H)|")
    report.add(check("index_in_k_normalizer", idx_k == 2, values={"index": idx_k}))

    k_index = exact_div(K, s["N_K_H"], "|K : N_K(H)|")
    l_index = exact_div(L, s["N_L_H"], "|L : N_L(H)|")
    left = 47 * (2 * k_index + 22 * 47 + l_index)
    g_index = exact_div(B, s["M1"], "|G : M1|")
    right = Fraction(g_index, s["index_factor"])
    report.add(
        check(
            "conjugate_count_bound",
            left < right,
            values={"left": left, "right": right, "slack": right / left},
        )
    )
    return report
