"""
Hermitian geometry on GF(q^2)^3
===============================

The unitary form with identity Gram matrix, membership in SU3(q), and the
explicit non-scalar matrices fixing a non-degenerate point X and an
arbitrary point Y.

Matrices act on row vectors, ``v -> v A``, so that the displayed witness
matrices fix span(e1) and span(1, b, c) as written.
"""
# Author: Intergraph developers
#
# License: BSD 3-Clause

import time
from collections import Counter
from functools import lru_cache
from itertools import chain, product
from typing import List, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from ._gfq import (
    Field,
    FieldElement,
    frobenius,
    lambda_element,
    make_field,
    norm,
    norm_root,
    solve_trace,
)
from ._utils import _DEFAULT_FIELD_CAP, _logger, _resolve_n_jobs
from .base import HypothesisError, Report, check
from .utils import gcd, prime_power_decomposition

Vector3 = Tuple[FieldElement, FieldElement, FieldElement]

CASE_ZERO_COORDINATE = "zero_coordinate"
CASE_NORM_MINUS_ONE = "norm_minus_one"
CASE_GENERIC = "generic"

_conj = np.vectorize(frobenius, otypes=[object])


def herm(u: Sequence[FieldElement], v: Sequence[FieldElement]) -> FieldElement:
    """The Hermitian form ``sum(u_i * v_i^q)`` with identity Gram matrix."""
    if len(u) != len(v):
        raise ValueError("Vectors of different lengths")
    total = u[0] * frobenius(v[0])
    for a, b in zip(u[1:], v[1:]):
        total = total + a * frobenius(b)
    return total


class Matrix3:
    """A 3x3 matrix over GF(q^2) backed by an object ndarray."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        arr = np.empty((3, 3), dtype=object)
        for i in range(3):
            for j in range(3):
                arr[i, j] = entries[i][j]
        self.entries = arr

    @classmethod
    def diag(cls, a, b, c) -> "Matrix3":
        z = a.field.zero
        return cls([[a, z, z], [z, b, z], [z, z, c]])

    @classmethod
    def scalar(cls, c) -> "Matrix3":
        return cls.diag(c, c, c)

    @classmethod
    def identity(cls, field: Field) -> "Matrix3":
        return cls.scalar(field.one)

    @property
    def field(self) -> Field:
        return self.entries[0, 0].field

    def __matmul__(self, other: "Matrix3") -> "Matrix3":
        return Matrix3(np.dot(self.entries, other.entries))

    def __eq__(self, other):
        if not isinstance(other, Matrix3):
            return NotImplemented
        return all(
            self.entries[i, j] == other.entries[i, j]
            for i in range(3)
            for j in range(3)
        )

    def __hash__(self):
        return hash(tuple(e.value for e in self.entries.flat))

    def det(self) -> FieldElement:
        m = self.entries
        return (
            m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
            - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
            + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
        )

    def conjugate_transpose(self) -> "Matrix3":
        return Matrix3(_conj(self.entries).T)

    def inverse(self) -> "Matrix3":
        d = self.det()
        if d.is_zero():
            raise ZeroDivisionError("Singular matrix")
        m = self.entries
        d_inv = d.inverse()
        adj = [[None] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                rows = [r for r in range(3) if r != j]
                cols = [c for c in range(3) if c != i]
                minor = (
                    m[rows[0], cols[0]] * m[rows[1], cols[1]]
                    - m[rows[0], cols[1]] * m[rows[1], cols[0]]
                )
                adj[i][j] = minor * d_inv if (i + j) % 2 == 0 else -minor * d_inv
        return Matrix3(adj)

    def act(self, v: Sequence[FieldElement]) -> Vector3:
        """Image ``v A`` of a row vector."""
        return tuple(np.dot(np.asarray(v, dtype=object), self.entries))

    def as_coeff_lists(self) -> List[List[List[int]]]:
        return [[list(e.coeffs) for e in row] for row in self.entries]

    def __repr__(self):
        rows = ", ".join(
            "[" + ", ".join(str(e.value) for e in row) + "]" for row in self.entries
        )
        return f"Matrix3([{rows}])"


def _normalize(v: Sequence[FieldElement]) -> Vector3:
    for x in v:
        if not x.is_zero():
            x_inv = x.inverse()
            return tuple(y * x_inv for y in v)
    raise ValueError("The zero vector spans no projective point")


class ProjPoint:
    """A one-dimensional subspace, stored by its normalized representative.

    The first nonzero coordinate of `rep` is 1, which makes the
    representative canonical for the projective class.
    """

    __slots__ = ("rep",)

    def __init__(self, v: Sequence[FieldElement]):
        self.rep = _normalize(v)

    @classmethod
    def e1(cls, field: Field) -> "ProjPoint":
        return cls((field.one, field.zero, field.zero))

    @property
    def key(self) -> Tuple[int, int, int]:
        return tuple(x.value for x in self.rep)

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other):
        return self.key < other.key

    def __repr__(self):
        return f"ProjPoint({self.key})"


def is_special_unitary(A: Matrix3) -> bool:
    """True iff det(A) = 1 and ``A * conj(A)^T = I``."""
    if A.det() != 1:
        return False
    return A @ A.conjugate_transpose() == Matrix3.identity(A.field)


def is_scalar(A: Matrix3) -> bool:
    m = A.entries
    off_diagonal = all(m[i, j].is_zero() for i in range(3) for j in range(3) if i != j)
    return off_diagonal and m[0, 0] == m[1, 1] == m[2, 2]


def is_nondegenerate(X: ProjPoint) -> bool:
    return not herm(X.rep, X.rep).is_zero()


def enumerate_points(field: Field) -> List[ProjPoint]:
    """All ``q^4 + q^2 + 1`` points of the projective plane over GF(q^2).

    Points come in canonical order: ``(1, a, b)``, then ``(0, 1, b)``, then
    ``(0, 0, 1)``, each block in increasing element encoding.
    """
    field._check_quadratic()
    els = field.elements()
    zero, one = field.zero, field.one
    points = [ProjPoint((one, a, b)) for a, b in product(els, els)]
    points += [ProjPoint((zero, one, b)) for b in els]
    points.append(ProjPoint((zero, zero, one)))
    return points


def isotropic_points(field: Field) -> List[ProjPoint]:
    """The ``q^3 + 1`` totally singular points."""
    return [P for P in enumerate_points(field) if not is_nondegenerate(P)]


def stabilizes(A: Matrix3, P: ProjPoint) -> bool:
    if A.det().is_zero():
        raise ValueError("Singular matrices do not act on projective points")
    return _normalize(A.act(P.rep)) == P.rep


def _unit_vector(v: Sequence[FieldElement]) -> Vector3:
    n = herm(v, v)
    s = norm_root(n.inverse())
    return tuple(s * x for x in v)


def move_to_e1(X: ProjPoint) -> Matrix3:
    """A matrix of SU3(q) mapping the non-degenerate point X to span(e1).

    The representative of X is scaled to Hermitian norm 1 and completed to
    an orthonormal basis ``u1, u2, u3`` by Gram-Schmidt. With U the matrix
    with these rows, ``M = conj(U)^T`` sends u1 to e1; its determinant is a
    norm-1 scalar which is cleared by rescaling the last column.

    Raises
    ------
    ValueError
        If X is degenerate.
    """
    if not is_nondegenerate(X):
        raise ValueError(f"{X!r} is degenerate")
    field = X.rep[0].field
    zero, one = field.zero, field.one
    standard = [
        (one, zero, zero),
        (zero, one, zero),
        (zero, zero, one),
    ]

    def _project(e, basis):
        out = list(e)
        for u in basis:
            c = herm(e, u)
            out = [x - c * y for x, y in zip(out, u)]
        return tuple(out)

    u1 = _unit_vector(X.rep)
    spanning = [w for w in (_project(e, [u1]) for e in standard) if any(w)]
    candidates = chain(
        spanning,
        (
            tuple(x + c * y for x, y in zip(w1, w2))
            for w1, w2 in product(spanning, spanning)
            for c in field.elements()
        ),
    )
    # the complement of u1 is a non-degenerate plane, so it holds a non-isotropic
    # vector
    w = next(w for w in candidates if any(w) and not herm(w, w).is_zero())
    u2 = _unit_vector(w)
    w = next(w for w in (_project(e, [u1, u2]) for e in standard) if any(w))
    u3 = _unit_vector(w)

    M = Matrix3([u1, u2, u3]).conjugate_transpose()
    eps = M.det()
    M = M @ Matrix3.diag(one, one, eps.inverse())
    return M


@lru_cache(maxsize=None)
def _field_constants(field: Field):
    lam = lambda_element(field)
    beta = solve_trace(field.from_int(2), {field.one})
    return lam, lam ** -2, beta


def _standard_witness(y: Sequence[FieldElement], field: Field):
    """Witness fixing span(e1) and span(y), with the case that produced it."""
    lam, lam_m2, beta = _field_constants(field)
    a, b, c = y
    zeros = [x.is_zero() for x in y]
    if any(zeros):
        if sum(zeros) >= 2 or zeros[2]:
            W = Matrix3.diag(lam, lam, lam_m2)
        elif zeros[0]:
            W = Matrix3.diag(lam_m2, lam, lam)
        else:
            W = Matrix3.diag(lam, lam_m2, lam)
        return W, CASE_ZERO_COORDINATE

    a_inv = a.inverse()
    b, c = b * a_inv, c * a_inv
    mu = b.inverse() * c
    mu_inv = mu.inverse()
    N = norm(mu)
    zero, one = field.zero, field.one
    if N == -one:
        beta_q = frobenius(beta)
        W = Matrix3(
            [
                [one, zero, zero],
                [zero, beta, mu * (one - beta_q)],
                [zero, mu_inv * (one - beta), beta_q],
            ]
        )
        return W, CASE_NORM_MINUS_ONE

    gamma = lam_m2 * (lam**3 + N) * (one + N).inverse()
    W = Matrix3(
        [
            [lam, zero, zero],
            [zero, gamma, mu * (lam - frobenius(gamma * lam))],
            [zero, mu_inv * (lam - gamma), frobenius(lam * gamma)],
        ]
    )
    return W, CASE_GENERIC


def _check_q(field: Field):
    field._check_quadratic()
    if field.q <= 2:
        raise HypothesisError(
            f"q = {field.q} is out of the Proposition's range (q > 2 required)"
        )


def _witness(X: ProjPoint, Y: ProjPoint, field: Field, M=None, M_inv=None):
    if M is None:
        M = move_to_e1(X)
        M_inv = M.conjugate_transpose()
    y = M.act(Y.rep)
    W, case = _standard_witness(y, field)
    return M @ W @ M_inv, case


def witness(X: ProjPoint, Y: ProjPoint, field: Field) -> Matrix3:
    """A non-scalar matrix of SU3(q) stabilizing both X and Y.

    X is moved to span(e1) with :func:`move_to_e1`, the transported Y is
    split into the zero-coordinate, norm -1 and generic cases, and the
    standard-position witness is conjugated back.

    Parameters
    ----------
    X : ProjPoint
        Non-degenerate point.
    Y : ProjPoint
        Any point.
    field : Field
        GF(q^2) with q > 2.

    Returns
    -------
    A : Matrix3

    Raises
    ------
    HypothesisError
        If q <= 2.
    ValueError
        If X is degenerate.
    """
    _check_q(field)
    if not is_nondegenerate(X):
        raise ValueError(f"{X!r} is degenerate")
    return _witness(X, Y, field)[0]


def _failed_conditions(A: Matrix3, X: ProjPoint, Y: ProjPoint) -> List[str]:
    failed = []
    if not is_special_unitary(A):
        failed.append("special_unitary")
    if is_scalar(A):
        failed.append("non_scalar")
    if A.det().is_zero() or not stabilizes(A, X):
        failed.append("stabilizes_x")
    if A.det().is_zero() or not stabilizes(A, Y):
        failed.append("stabilizes_y")
    return failed


def _check_block(field: Field, X: ProjPoint, ys: List[ProjPoint]):
    M = move_to_e1(X)
    M_inv = M.conjugate_transpose()
    cases = Counter()
    failures = []
    for Y in ys:
        A, case = _witness(X, Y, field, M=M, M_inv=M_inv)
        cases[case] += 1
        failed = _failed_conditions(A, X, Y)
        if failed:
            failures.append(
                {
                    "x": list(X.key),
                    "y": list(Y.key),
                    "case": case,
                    "failed": failed,
                    "matrix": A.as_coeff_lists(),
                }
            )
    return cases, len(ys), failures


def _field_for_q(q: int, cap=None) -> Field:
    decomposition = prime_power_decomposition(q)
    if decomposition is None:
        raise ValueError(f"q should be a prime power, got {q}")
    p, m = decomposition
    return make_field(p, 2 * m, cap=cap)


def verify_proposition(
    q: int, mode: str = "e1", *, n_jobs=None, cap=None, chunk_size: int = 512
) -> Report:
    """Check the stabilizer witness exhaustively over GF(q^2).

    Parameters
    ----------
    q : int
        Prime power greater than 2.
    mode : {'e1', 'all'}, default='e1'
        'e1' fixes X = span(e1) and runs over every point Y; 'all' runs over
        every non-degenerate X as well.
    n_jobs : int, default=None
        Number of joblib workers.
    cap : int, default=None
        Cap on the size of GF(q^2), 2**20 when None.
    chunk_size : int, default=512
        Number of Y points per task.

    Returns
    -------
    report : Report
        One check with the number of pairs, per-case counts and every failing
        matrix.
    """
    if mode not in ("e1", "all"):
        raise ValueError(f"Unknown mode '{mode}', expected 'e1' or 'all'")
    if q <= 2:
        raise HypothesisError(
            f"q = {q} is out of the Proposition's range (q > 2 required)"
        )
    cap = _DEFAULT_FIELD_CAP if cap is None else cap
    start = time.perf_counter()
    field = _field_for_q(q, cap=cap)
    _check_q(field)
    points = enumerate_points(field)
    nondegenerate = [P for P in points if is_nondegenerate(P)]
    xs = [ProjPoint.e1(field)] if mode == "e1" else nondegenerate
    tasks = [
        (X, points[i : i + chunk_size])
        for X in xs
        for i in range(0, len(points), chunk_size)
    ]
    _logger.info(
        f"Checking {len(xs)} x {len(points)} pairs over GF({q}^2) in {len(tasks)} tasks"
    )
    results = Parallel(n_jobs=_resolve_n_jobs(n_jobs))(
        delayed(_check_block)(field, X, ys) for X, ys in tasks
    )
    cases = Counter()
    pairs = 0
    failures = []
    for c, n, f in results:
        cases.update(c)
        pairs += n
        failures.extend(f)
    failures.sort(key=lambda f: (f["x"], f["y"]))

    report = Report("witness", config={"q": q, "mode": mode})
    n_points = q**4 + q**2 + 1
    n_isotropic = q**3 + 1
    report.add(
        check(
            "point_count",
            len(points) == n_points
            and len(points) - len(nondegenerate) == n_isotropic,
            counts={"points": len(points), "nondegenerate": len(nondegenerate)},
            values={"expected_points": n_points, "expected_isotropic": n_isotropic},
        )
    )
    report.add(
        check(
            "proposition",
            not failures and pairs == len(xs) * len(points),
            counts={"pairs_checked": pairs, "failures": len(failures)},
            values={
                "case_counts": {
                    k: cases.get(k, 0)
                    for k in (CASE_ZERO_COORDINATE, CASE_NORM_MINUS_ONE, CASE_GENERIC)
                },
                "field": field.describe(),
            },
            failures=failures,
        )
    )
    report.timings["witness"] = time.perf_counter() - start
    _logger.info(f"Checked {pairs} pairs, {len(failures)} failures")
    return report


def _gu2(field: Field) -> List[Matrix3]:
    """Matrices ``diag(det(B)^-1, B)`` for B in GU2(q): the stabilizer of e1."""
    els = field.elements()
    zero = field.zero
    units = [
        (a, b) for a, b in product(els, els) if herm((a, b), (a, b)) == field.one
    ]
    out = []
    for r1 in units:
        for r2 in units:
            if herm(r1, r2).is_zero():
                det_b = r1[0] * r2[1] - r1[1] * r2[0]
                out.append(
                    Matrix3(
                        [
                            [det_b.inverse(), zero, zero],
                            [zero, r1[0], r1[1]],
                            [zero, r2[0], r2[1]],
                        ]
                    )
                )
    return out


def stabilizer_of_e1(field: Field) -> List[Matrix3]:
    """Every matrix of SU3(q) fixing span(e1).

    There are ``q(q+1)(q^2-1)`` of them, one per element of GU2(q).
    """
    field._check_quadratic()
    return _gu2(field)


def make_unitary_action(q: int):
    """Generators of SU3(q) acting on the ``q^3 + 1`` isotropic points.

    The stabilizer of span(e1) is maximal in SU3(q) for the small q this is
    used with, so together with any element moving e1 it generates the whole
    group. The kernel of the action is the centre, of order gcd(3, q + 1).

    Returns
    -------
    degree : int
        Number of isotropic points.
    generators : list of tuple
        Permutations as 0-based image tuples, deduplicated and sorted.
    expected_order : int
        Order of the permutation group, ``|U3(q)|``.
    """
    field = _field_for_q(q)
    points = isotropic_points(field)
    index = {P.key: i for i, P in enumerate(points)}
    e1 = ProjPoint.e1(field)
    X = next(
        P for P in enumerate_points(field) if is_nondegenerate(P) and P != e1
    )
    matrices = stabilizer_of_e1(field) + [move_to_e1(X)]
    generators = set()
    for A in matrices:
        images = tuple(index[ProjPoint(A.act(P.rep)).key] for P in points)
        generators.add(images)
    generators.discard(tuple(range(len(points))))
    expected = q**3 * (q**2 - 1) * (q**3 + 1) // gcd(3, q + 1)
    return len(points), sorted(generators), expected
