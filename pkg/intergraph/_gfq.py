"""
Finite fields GF(p^k)
=====================

Exact arithmetic in GF(p^k) with the polynomial representation, and the
quadratic extension GF(q^2)/GF(q) maps (Frobenius, trace, norm) needed for
the Hermitian geometry of :mod:`intergraph._unitary3`.

Elements are encoded as integers ``value = sum(c_i * p**i)`` where
``c_0 + c_1 x + ... + c_{k-1} x^{k-1}`` is the reduced representative.
"""
# Author: Intergraph developers
#
# License: BSD 3-Clause

import itertools
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy import Poly, factorint, symbols

from ._utils import (
    _DEFAULT_FIELD_CAP,
    _TABLE_FIELD_CAP,
    _TRACE_SCAN_CAP,
    _logger,
)
from .base import CapExceededError, HypothesisError
from .utils import check_prime

_X = symbols("x")


def _is_irreducible(monic: Sequence[int], p: int) -> bool:
    # coefficients are given low degree first, sympy wants them high first
    return Poly(list(reversed(monic)), _X, modulus=p).is_irreducible


def _smallest_irreducible(p: int, k: int) -> Tuple[int, ...]:
    """Lexicographically smallest monic irreducible polynomial of degree k.

    Candidates are scanned by the integer encoding of their lower
    coefficients, which orders them from the highest coefficient down.
    """
    if k == 1:
        return (0, 1)
    for m in range(p**k):
        lower = tuple((m // p**i) % p for i in range(k))
        if lower[0] == 0:
            # divisible by x
            continue
        monic = lower + (1,)
        if _is_irreducible(monic, p):
            return monic
    raise RuntimeError(f"No irreducible polynomial of degree {k} over GF({p})")


class Field:
    """The finite field GF(p^k).

    Use :func:`make_field` to build instances: it selects the modulus and the
    primitive element deterministically.

    Parameters
    ----------
    p : int
        Characteristic, a prime.
    k : int
        Degree over the prime field.
    modulus : tuple of int
        Monic irreducible polynomial of degree k, low degree coefficient
        first (length k + 1, last entry 1).
    omega : int
        Integer encoding of a primitive element.

    Attributes
    ----------
    order : int
        Number of elements ``p**k``.
    q : int or None
        Size of the subfield fixed by the Frobenius ``a -> a^q`` when k is
        even, None otherwise.
    """

    def __init__(self, p: int, k: int, modulus: Tuple[int, ...], omega: int):
        self.p = p
        self.k = k
        self.modulus = tuple(modulus)
        self.order = p**k
        self.q = p ** (k // 2) if k % 2 == 0 else None
        self._omega = omega
        self._exp = None
        self._log = None
        self._zech = None
        if self.order <= _TABLE_FIELD_CAP:
            self._build_tables()

    # -- integer level arithmetic ------------------------------------------

    def _coeffs(self, value: int) -> Tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.k):
            value, r = divmod(value, p)
            out.append(r)
        return tuple(out)

    def _value(self, coeffs: Iterable[int]) -> int:
        value = 0
        for c in reversed(tuple(coeffs)):
            value = value * self.p + (c % self.p)
        return value

    def _add_poly(self, x: int, y: int) -> int:
        if self.p == 2:
            return x ^ y
        cx, cy = self._coeffs(x), self._coeffs(y)
        return self._value(a + b for a, b in zip(cx, cy))

    def _neg_int(self, x: int) -> int:
        if self.p == 2:
            return x
        return self._value(-c for c in self._coeffs(x))

    def _mul_poly(self, x: int, y: int) -> int:
        p, k = self.p, self.k
        a, b = self._coeffs(x), self._coeffs(y)
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] = (prod[i + j] + ai * bj) % p
        # reduce by the monic modulus from the top degree down
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d]
            if c:
                prod[d] = 0
                for i in range(k):
                    prod[d - k + i] = (prod[d - k + i] - c * self.modulus[i]) % p
        return self._value(prod[:k])

    def _pow_poly(self, x: int, e: int) -> int:
        result, base = 1, x
        while e:
            if e & 1:
                result = self._mul_poly(result, base)
            base = self._mul_poly(base, base)
            e >>= 1
        return result

    def _build_tables(self):
        n1 = self.order - 1
        exp = [0] * n1
        log = [None] * self.order
        value = 1
        for i in range(n1):
            if log[value] is not None:
                raise RuntimeError(
                    f"Element {self._omega} is not primitive in GF({self.order}); "
                    "the modulus is not irreducible"
                )
            exp[i] = value
            log[value] = i
            value = self._mul_poly(value, self._omega)
        if value != 1:
            raise RuntimeError("Powers of the primitive element do not cycle")
        # Zech logarithms: 1 + w^d = w^zech[d], None when 1 + w^d = 0
        zech = [None] * n1
        for d in range(n1):
            s = self._add_poly(1, exp[d])
            zech[d] = log[s] if s else None
        self._exp, self._log, self._zech = exp, log, zech

    def _add(self, x: int, y: int) -> int:
        if x == 0:
            return y
        if y == 0:
            return x
        if self._zech is None:
            return self._add_poly(x, y)
        n1 = self.order - 1
        lx = self._log[x]
        z = self._zech[(self._log[y] - lx) % n1]
        return 0 if z is None else self._exp[(lx + z) % n1]

    def _mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        if self._exp is None:
            return self._mul_poly(x, y)
        return self._exp[(self._log[x] + self._log[y]) % (self.order - 1)]

    def _pow(self, x: int, e: int) -> int:
        n1 = self.order - 1
        if x == 0:
            if e < 0:
                raise ZeroDivisionError("0 has no inverse in a field")
            return 1 if e == 0 else 0
        if self._exp is None:
            return self._pow_poly(x, e % n1)
        return self._exp[(self._log[x] * e) % n1]

    # -- public API ----------------------------------------------------------

    def element(self, value: int) -> "FieldElement":
        if not 0 <= value < self.order:
            raise ValueError(f"Value {value} out of range for GF({self.order})")
        return FieldElement(self, value)

    def from_coeffs(self, coeffs: Sequence[int]) -> "FieldElement":
        if len(coeffs) > self.k:
            raise ValueError(f"Expected at most {self.k} coefficients")
        return FieldElement(self, self._value(coeffs))

    def from_int(self, n: int) -> "FieldElement":
        """Image of the integer n in the prime subfield."""
        return FieldElement(self, n % self.p)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def omega(self) -> "FieldElement":
        return FieldElement(self, self._omega)

    def elements(self) -> List["FieldElement"]:
        return [FieldElement(self, v) for v in range(self.order)]

    @property
    def is_quadratic_extension(self) -> bool:
        return self.q is not None

    def _check_quadratic(self):
        if self.q is None:
            raise ValueError(
                f"GF({self.p}^{self.k}) is not configured as a quadratic extension"
            )

    @cached_property
    def _subfield_values(self) -> Tuple[int, ...]:
        self._check_quadratic()
        return tuple(
            v for v in range(self.order) if self._pow(v, self.q) == v or v == 0
        )

    def subfield_elements(self) -> List["FieldElement"]:
        """The GF(q) subfield, as the fixed field of the Frobenius."""
        return [FieldElement(self, v) for v in self._subfield_values]

    def describe(self) -> dict:
        return {
            "p": self.p,
            "k": self.k,
            "order": self.order,
            "modulus": list(self.modulus),
            "omega": list(self._coeffs(self._omega)),
        }

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.p == other.p
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"Field(GF({self.p}^{self.k}))"

    def __getstate__(self):
        # tables are cheap to rebuild and heavy to ship to workers
        state = self.__dict__.copy()
        state.pop("_subfield_values", None)
        state["_exp"] = state["_log"] = state["_zech"] = None
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        if self.order <= _TABLE_FIELD_CAP:
            self._build_tables()


class FieldElement:
    """An element of a :class:`Field`.

    Supports ``+ - * / **`` and unary minus. Integers are accepted as the
    other operand and embedded in the prime subfield.
    """

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: int):
        self.field = field
        self.value = value

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return self.field._coeffs(self.value)

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise ValueError(
                    f"Mixed-field operands: {self.field!r} and {other.field!r}"
                )
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field._add(self.value, other.value))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field._neg_int(self.value))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field._mul(self.value, other.value))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in a field")
        return FieldElement(self.field, self.field._pow(self.value, -1))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field._pow(self.value, e))

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.value == other.value and (
            self.field is other.field or self.field == other.field
        )

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.value))

    def __bool__(self):
        return self.value != 0

    def is_zero(self) -> bool:
        return self.value == 0

    def order(self) -> int:
        """Multiplicative order."""
        if self.value == 0:
            raise ValueError("0 has no multiplicative order")
        n1 = self.field.order - 1
        order = n1
        for r in factorint(n1):
            while order % r == 0 and self.field._pow(self.value, order // r) == 1:
                order //= r
        return order

    def __repr__(self):
        return f"FieldElement({self.coeffs}, GF({self.field.p}^{self.field.k}))"


def make_field(p: int, k: int = 1, *, cap: Optional[int] = None) -> Field:
    """Build GF(p^k) with a deterministic model.

    The modulus is the lexicographically smallest monic irreducible
    polynomial of degree k and omega is the smallest element of full
    multiplicative order, checked against the factorization of p^k - 1.

    Parameters
    ----------
    p : int
        A prime.
    k : int, default=1
        Positive degree.
    cap : int, default=None
        Maximum field size, 2**20 when None.

    Returns
    -------
    field : Field

    Examples
    --------
    >>> make_field(3, 2).order
    9
    """
    check_prime(p)
    if k < 1:
        raise ValueError(f"Degree should be positive, got {k}")
    cap = _DEFAULT_FIELD_CAP if cap is None else cap
    if p**k > cap:
        raise CapExceededError(
            f"GF({p}^{k}) has {p**k} elements, above the cap {cap}", cap=cap
        )
    modulus = _smallest_irreducible(p, k)
    # a bare model without tables, just to search for omega
    probe = Field.__new__(Field)
    probe.p, probe.k, probe.modulus = p, k, modulus
    n1 = p**k - 1
    primes = list(factorint(n1)) if n1 > 1 else []
    omega = None
    for value in range(1, p**k):
        if all(probe._pow_poly(value, n1 // r) != 1 for r in primes):
            omega = value
            break
    if omega is None:
        raise RuntimeError(f"No primitive element found in GF({p}^{k})")
    field = Field(p, k, modulus, omega)
    _logger.debug(f"Built GF({p}^{k}) with modulus {modulus} and omega {omega}")
    return field


def _check_same(a: FieldElement, b: FieldElement):
    if a.field is not b.field and a.field != b.field:
        raise ValueError(f"Mixed-field operands: {a.field!r} and {b.field!r}")


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same(a, b)
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same(a, b)
    return a * b


def neg(a: FieldElement) -> FieldElement:
    return -a


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def power(a: FieldElement, e: int) -> FieldElement:
    return a**e


def frobenius(a: FieldElement) -> FieldElement:
    """The automorphism ``a -> a^q`` of GF(q^2)."""
    a.field._check_quadratic()
    return a ** a.field.q


def trace(a: FieldElement) -> FieldElement:
    """``a + a^q``, an element of the subfield GF(q)."""
    return a + frobenius(a)


def norm(a: FieldElement) -> FieldElement:
    """``a^(q+1)``, an element of the subfield GF(q)."""
    return a * frobenius(a)


def in_subfield(a: FieldElement) -> bool:
    return frobenius(a) == a


def lambda_element(field: Field) -> FieldElement:
    """``omega^(q-1)``, of multiplicative order exactly q + 1.

    Raises
    ------
    HypothesisError
        If q <= 2, where the order q + 1 does not exceed 3.
    """
    field._check_quadratic()
    if field.q <= 2:
        raise HypothesisError(f"lambda needs q > 2, got q = {field.q}")
    return field.omega ** (field.q - 1)


def norm_root(c: FieldElement) -> FieldElement:
    """Some s with ``norm(s) == c`` for c in GF(q)*.

    The norm map is onto GF(q)*, so such s always exists.
    """
    field = c.field
    field._check_quadratic()
    if c.is_zero() or not in_subfield(c):
        raise ValueError(f"{c!r} is not a nonzero element of GF({field.q})")
    if field._log is not None:
        lc = field._log[c.value]
        return field.element(field._exp[lc // (field.q + 1)])
    for s in field.elements()[1:]:
        if norm(s) == c:
            return s
    raise RuntimeError("The norm map is not onto GF(q)*")


def _solve_mod_p(matrix: List[List[int]], rhs: List[int], p: int):
    """Particular solution and kernel basis of ``matrix @ v == rhs`` mod p."""
    n_rows, n_cols = len(matrix), len(matrix[0])
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if aug[i][c] % p), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv_p = pow(aug[r][c], -1, p)
        aug[r] = [(x * inv_p) % p for x in aug[r]]
        for i in range(n_rows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(aug[i][-1] % p for i in range(r, n_rows)):
        return None, []
    particular = [0] * n_cols
    for i, c in enumerate(pivots):
        particular[c] = aug[i][-1]
    kernel = []
    for free in (c for c in range(n_cols) if c not in pivots):
        vec = [0] * n_cols
        vec[free] = 1
        for i, c in enumerate(pivots):
            vec[c] = (-aug[i][free]) % p
        kernel.append(vec)
    return particular, kernel


def solve_trace(
    c: FieldElement, excluded: Iterable[FieldElement] = ()
) -> FieldElement:
    """Find beta with ``trace(beta) == c`` and beta not in `excluded`.

    The solutions form a coset of the trace kernel, which has exactly q
    elements, so a solution exists whenever fewer than q elements are
    excluded. Small fields are scanned in canonical order; above q = 64 the
    GF(p)-linear system given by the trace on the coefficient basis is
    solved instead.

    Examples
    --------
    >>> F = make_field(3, 2)
    >>> beta = solve_trace(F.from_int(2), {F.one})
    >>> trace(beta) == 2 and beta != 1
    True
    """
    field = c.field
    field._check_quadratic()
    if not in_subfield(c):
        raise ValueError(f"{c!r} does not lie in GF({field.q})")
    excluded = set(excluded)
    if field.q <= _TRACE_SCAN_CAP:
        candidates = (a for a in field.elements() if trace(a) == c)
    else:
        p, k = field.p, field.k
        basis = [field.element(p**j) for j in range(k)]
        columns = [trace(b).coeffs for b in basis]
        matrix = [[columns[j][i] for j in range(k)] for i in range(k)]
        particular, kernel = _solve_mod_p(matrix, list(c.coeffs), p)
        if particular is None:
            raise RuntimeError("The trace map is not onto GF(q)")

        def _coset():
            for combo in itertools.product(range(p), repeat=len(kernel)):
                vec = list(particular)
                for m, kv in zip(combo, kernel):
                    vec = [(x + m * y) % p for x, y in zip(vec, kv)]
                yield field.from_coeffs(vec)

        candidates = _coset()
    for beta in candidates:
        if beta not in excluded:
            return beta
    raise AssertionError(
        f"No solution of trace(x) = {c!r} outside {len(excluded)} excluded values"
    )
