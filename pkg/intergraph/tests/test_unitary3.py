# Author: Intergraph developers
#
# License: BSD 3-Clause

import pytest
from sklearn.utils import check_random_state

from intergraph import (
    CapExceededError,
    HypothesisError,
    Matrix3,
    ProjPoint,
    Verdict,
    enumerate_points,
    herm,
    is_nondegenerate,
    is_scalar,
    is_special_unitary,
    isotropic_points,
    make_field,
    make_unitary_action,
    move_to_e1,
    stabilizer_of_e1,
    stabilizes,
    verify_proposition,
    witness,
)
from intergraph._unitary3 import CASE_GENERIC, CASE_NORM_MINUS_ONE


@pytest.fixture(scope="module")
def gf25():
    return make_field(5, 2)


def test_herm(gf9):
    one, zero, w = gf9.one, gf9.zero, gf9.omega
    e1 = (one, zero, zero)
    assert herm(e1, e1) == 1
    assert herm((one, one, one), (one, one, one)) == 0
    assert herm((w, zero, zero), (w, zero, zero)) == w ** (gf9.q + 1)
    with pytest.raises(ValueError):
        herm((one,), (one, one))


def test_matrix_algebra(gf9):
    w = gf9.omega
    I3 = Matrix3.identity(gf9)
    D = Matrix3.diag(w, w**2, w**5)
    assert D @ I3 == D
    assert D.det() == w**8
    assert D @ D.inverse() == I3
    assert is_scalar(Matrix3.scalar(w))
    assert not is_scalar(D)
    assert D.conjugate_transpose() == Matrix3.diag(w**3, w**6, w**15)
    with pytest.raises(ZeroDivisionError):
        Matrix3.diag(w, gf9.zero, w).inverse()
    assert len(D.as_coeff_lists()) == 3


@pytest.mark.parametrize("q, p, k", [(3, 3, 2), (4, 2, 4), (5, 5, 2)])
def test_point_counts(q, p, k):
    F = make_field(p, k)
    points = enumerate_points(F)
    assert len(points) == q**4 + q**2 + 1
    assert len(set(points)) == len(points)
    assert points[0] == ProjPoint.e1(F)
    assert len(isotropic_points(F)) == q**3 + 1


def test_projective_point_is_normalized(gf9):
    w = gf9.omega
    P = ProjPoint((gf9.zero, w, w**2))
    assert P.rep[1] == 1
    assert P == ProjPoint((gf9.zero, gf9.one, w))
    with pytest.raises(ValueError):
        ProjPoint((gf9.zero, gf9.zero, gf9.zero))


def test_move_to_e1(gf9):
    e1 = ProjPoint.e1(gf9)
    for X in enumerate_points(gf9):
        if not is_nondegenerate(X):
            with pytest.raises(ValueError, match="degenerate"):
                move_to_e1(X)
            continue
        M = move_to_e1(X)
        assert is_special_unitary(M)
        assert ProjPoint(M.act(X.rep)) == e1


def test_stabilizes_singular(gf9):
    Z = Matrix3.diag(gf9.one, gf9.zero, gf9.one)
    with pytest.raises(ValueError):
        stabilizes(Z, ProjPoint.e1(gf9))


def test_witness_random_pairs(gf25):
    rng = check_random_state(0)
    points = enumerate_points(gf25)
    nondegenerate = [P for P in points if is_nondegenerate(P)]
    for i, j in zip(
        rng.randint(len(nondegenerate), size=30), rng.randint(len(points), size=30)
    ):
        X, Y = nondegenerate[i], points[j]
        A = witness(X, Y, gf25)
        assert is_special_unitary(A)
        assert not is_scalar(A)
        assert stabilizes(A, X)
        assert stabilizes(A, Y)


def test_witness_errors(gf9):
    iso = isotropic_points(gf9)[0]
    with pytest.raises(ValueError, match="degenerate"):
        witness(iso, ProjPoint.e1(gf9), gf9)
    F4 = make_field(2, 2)
    with pytest.raises(HypothesisError):
        witness(ProjPoint.e1(F4), ProjPoint.e1(F4), F4)


@pytest.mark.parametrize(
    "q",
    [
        3,
        4,
        5,
        7,
        8,
        9,
        pytest.param(11, marks=pytest.mark.slow),
        pytest.param(13, marks=pytest.mark.slow),
    ],
)
def test_verify_proposition_e1(q):
    report = verify_proposition(q, "e1")
    result = report["proposition"]
    assert report.passed
    assert report["point_count"].passed
    assert result.counts["pairs_checked"] == q**4 + q**2 + 1
    assert result.failures == []
    assert sum(result.values["case_counts"].values()) == q**4 + q**2 + 1


def test_verify_proposition_q3_values():
    report = verify_proposition(3)
    result = report["proposition"]
    assert result.counts["pairs_checked"] == 91
    # in odd characteristic every case occurs
    assert all(v > 0 for v in result.values["case_counts"].values())
    assert result.values["field"]["order"] == 9


@pytest.mark.parametrize("q", [4, 5])
def test_verify_proposition_covers_both_nonzero_cases(q):
    counts = verify_proposition(q)["proposition"].values["case_counts"]
    assert counts[CASE_GENERIC] > 0
    assert counts[CASE_NORM_MINUS_ONE] > 0


@pytest.mark.parametrize(
    "q, n_x", [(3, 63), pytest.param(4, 208, marks=pytest.mark.slow)]
)
def test_verify_proposition_all(q, n_x):
    report = verify_proposition(q, "all")
    n_points = q**4 + q**2 + 1
    assert n_x == n_points - q**3 - 1
    assert report["proposition"].counts["pairs_checked"] == n_x * n_points
    assert report.passed


@pytest.mark.slow
def test_verify_proposition_all_q5():
    report = verify_proposition(5, "all", n_jobs=2)
    assert report["proposition"].counts["pairs_checked"] == 525 * 651
    assert report.passed


def test_verify_proposition_independent_of_workers():
    r1 = verify_proposition(3, "e1", n_jobs=1, chunk_size=10)
    r2 = verify_proposition(3, "e1", n_jobs=2, chunk_size=33)
    assert r1.to_json() == r2.to_json()


@pytest.mark.parametrize("q", [2, 1, 0])
def test_verify_proposition_out_of_range(q):
    with pytest.raises(HypothesisError, match="out of the Proposition's range"):
        verify_proposition(q)


def test_verify_proposition_invalid():
    with pytest.raises(ValueError, match="prime power"):
        verify_proposition(6)
    with pytest.raises(ValueError, match="mode"):
        verify_proposition(3, "some")
    with pytest.raises(CapExceededError):
        verify_proposition(5, cap=20)


def test_stabilizer_of_e1(gf9):
    mats = stabilizer_of_e1(gf9)
    q = gf9.q
    assert len(mats) == q * (q + 1) * (q**2 - 1)
    assert len(set(mats)) == len(mats)
    e1 = ProjPoint.e1(gf9)
    assert all(is_special_unitary(A) and stabilizes(A, e1) for A in mats)


def test_make_unitary_action():
    degree, generators, expected = make_unitary_action(3)
    assert degree == 28
    assert expected == 6048
    assert generators == sorted(generators)
    for g in generators:
        assert sorted(g) == list(range(degree))
        assert g != tuple(range(degree))


def test_report_skips_nothing():
    report = verify_proposition(3)
    assert all(c.verdict == Verdict.PASS for c in report.checks)


def test_special_unitary_preserves_form(gf9):
    rng = check_random_state(0)
    elems = gf9.elements()
    mats = stabilizer_of_e1(gf9)
    points = [P for P in enumerate_points(gf9) if is_nondegenerate(P)]
    mats = [mats[i] for i in rng.choice(len(mats), size=10, replace=False)]
    mats += [move_to_e1(points[i]) for i in rng.choice(len(points), size=10)]
    for A in mats:
        assert is_special_unitary(A)
        for _ in range(5):
            u = tuple(elems[i] for i in rng.randint(len(elems), size=3))
            v = tuple(elems[i] for i in rng.randint(len(elems), size=3))
            assert herm(A.act(u), A.act(v)) == herm(u, v)
