# Author: Intergraph developers
#
# License: BSD 3-Clause

import pickle
from collections import Counter

import pytest
from sklearn.utils import check_random_state

from intergraph import (
    CapExceededError,
    HypothesisError,
    add,
    frobenius,
    in_subfield,
    inv,
    lambda_element,
    make_field,
    mul,
    neg,
    norm,
    norm_root,
    power,
    solve_trace,
    trace,
)


@pytest.mark.parametrize(
    "p, k, order, q",
    [
        (2, 1, 2, None),
        (5, 1, 5, None),
        (2, 2, 4, 2),
        (3, 2, 9, 3),
        (2, 4, 16, 4),
        (5, 2, 25, 5),
        (2, 3, 8, None),
    ],
)
def test_make_field(p, k, order, q):
    F = make_field(p, k)
    assert F.order == order
    assert F.q == q
    assert len(F.elements()) == order
    assert F.omega.order() == order - 1
    assert F.modulus[-1] == 1 and len(F.modulus) == k + 1


def test_make_field_is_deterministic():
    F1, F2 = make_field(3, 2), make_field(3, 2)
    assert F1 == F2
    assert F1.describe() == F2.describe()


@pytest.mark.parametrize("p, k", [(4, 1), (6, 2), (1, 1), (3, 0)])
def test_make_field_invalid(p, k):
    with pytest.raises(ValueError):
        make_field(p, k)


def test_make_field_cap():
    with pytest.raises(CapExceededError) as excinfo:
        make_field(3, 14)
    assert excinfo.value.cap == 2**20
    with pytest.raises(CapExceededError):
        make_field(5, 2, cap=20)


def test_field_axioms(gf9):
    elems = gf9.elements()
    zero, one = gf9.zero, gf9.one
    for a in elems:
        assert a + zero == a
        assert a * one == a
        assert a + neg(a) == zero
        if a:
            assert mul(a, inv(a)) == one
            assert a / a == 1
    for a in elems:
        for b in elems:
            assert add(a, b) == b + a
            assert a * b == b * a
            for c in elems[:3]:
                assert a * (b + c) == a * b + a * c


def test_inverse_of_zero(gf9):
    with pytest.raises(ZeroDivisionError):
        inv(gf9.zero)
    with pytest.raises(ZeroDivisionError):
        gf9.one / gf9.zero


def test_mixed_fields(gf9, gf16):
    with pytest.raises(ValueError, match="Mixed-field"):
        add(gf9.one, gf16.one)
    with pytest.raises(ValueError, match="Mixed-field"):
        gf9.omega * gf16.omega


def test_int_coercion(gf9):
    a = gf9.omega
    assert a + 3 == a
    assert 2 * a == a + a
    assert 1 - a == -(a - 1)
    assert gf9.from_int(4) == 1


def test_element_range(gf9):
    assert gf9.element(8).value == 8
    with pytest.raises(ValueError):
        gf9.element(9)
    with pytest.raises(ValueError):
        gf9.from_coeffs([1, 2, 0])


def test_power_and_order(gf16):
    w = gf16.omega
    assert power(w, 15) == 1
    assert power(w, 0) == 1
    assert power(w, -1) * w == 1
    assert (w**5).order() == 3
    with pytest.raises(ValueError):
        gf16.zero.order()


@pytest.mark.parametrize("p, k", [(3, 2), (2, 4), (5, 2), (7, 2), (2, 6)])
def test_frobenius_trace_norm(p, k):
    F = make_field(p, k)
    q = F.q
    sub = F.subfield_elements()
    assert len(sub) == q
    assert all(in_subfield(s) for s in sub)
    for a in F.elements():
        assert frobenius(frobenius(a)) == a
        assert in_subfield(trace(a))
        assert in_subfield(norm(a))
        assert frobenius(a * a) == frobenius(a) * frobenius(a)


@pytest.mark.parametrize("p, k", [(3, 2), (2, 4), (5, 2), (2, 6), (3, 4)])
def test_lambda_element(p, k):
    F = make_field(p, k)
    lam = lambda_element(F)
    assert lam.order() == F.q + 1
    assert norm(lam) == 1


def test_lambda_element_q2():
    with pytest.raises(HypothesisError):
        lambda_element(make_field(2, 2))


def test_frobenius_needs_quadratic():
    with pytest.raises(ValueError, match="quadratic"):
        frobenius(make_field(2, 3).omega)


def test_norm_root(gf9):
    for c in gf9.subfield_elements():
        if c:
            assert norm(norm_root(c)) == c
    with pytest.raises(ValueError):
        norm_root(gf9.zero)
    with pytest.raises(ValueError):
        norm_root(gf9.omega)


@pytest.mark.parametrize("p, k", [(3, 2), (2, 4), (7, 2)])
def test_solve_trace(p, k):
    F = make_field(p, k)
    for c in F.subfield_elements():
        beta = solve_trace(c, {F.one, F.zero})
        assert trace(beta) == c
        assert beta not in (F.one, F.zero)


def test_solve_trace_linear_algebra_path():
    # q = 81 is above the scan threshold
    F = make_field(3, 8)
    rng = check_random_state(0)
    sub = F.subfield_elements()
    for i in rng.choice(len(sub), size=5, replace=False):
        c = sub[i]
        beta = solve_trace(c, {F.one})
        assert trace(beta) == c


def test_solve_trace_outside_subfield(gf9):
    with pytest.raises(ValueError):
        solve_trace(gf9.omega)


def test_polynomial_arithmetic_without_tables():
    F = make_field(2, 18)
    assert F._exp is None
    rng = check_random_state(0)
    values = rng.randint(1, F.order, size=20)
    for v in values:
        a = F.element(int(v))
        assert a * a.inverse() == 1
        assert a ** (F.order - 1) == 1
        assert frobenius(frobenius(a)) == a
    lam = lambda_element(F)
    assert lam ** (F.q + 1) == 1
    assert lam ** ((F.q + 1) // 3) != 1


def test_field_pickles_without_tables(gf16):
    state = gf16.__getstate__()
    assert state["_exp"] is None
    F = pickle.loads(pickle.dumps(gf16))
    assert F == gf16
    assert F.omega.order() == 15


@pytest.mark.parametrize(
    "p, k", [(3, 2), (2, 4), (5, 2), (7, 2), (2, 6), (3, 4), (11, 2), (13, 2)]
)
def test_trace_and_norm_fibers(p, k):
    F = make_field(p, k)
    q = F.q
    traces = Counter(trace(a) for a in F.elements())
    norms = Counter(norm(a) for a in F.elements())
    assert sorted(traces.values()) == [q] * q
    assert norms.pop(F.zero) == 1
    # onto GF(q)*, each fiber of size q + 1
    assert set(norms) == {c for c in F.subfield_elements() if c}
    assert sorted(norms.values()) == [q + 1] * (q - 1)
    lam = lambda_element(F)
    assert lam == power(F.omega, q - 1)
    assert power(lam, 3) != F.one
