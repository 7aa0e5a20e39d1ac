# Author: Intergraph developers
#
# License: BSD 3-Clause

from itertools import combinations

import numpy as np
import pytest
from numpy.testing import assert_array_equal
from sklearn.utils import check_random_state
from sympy.combinatorics import Permutation as SympyPermutation
from sympy.combinatorics import PermutationGroup

from intergraph import (
    CapExceededError,
    IdentityViolationError,
    Permutation,
    Subgroup,
    all_subgroups,
    centralizer,
    compose,
    conjugate,
    conjugates,
    cyclic_subgroup,
    dihedral_join,
    double_count_check,
    generate,
    identity,
    intersect,
    inverse,
    involutions,
    join,
    maximals,
    normalizer,
    parse_cycles,
    point_stabilizer,
    prime_order_subgroups,
    setwise_stabilizer,
    subgroup_generated,
    subgroups_by_joins,
)
from intergraph.datasets import load_preset


def _group(*cycles, degree):
    return generate([parse_cycles(c, degree=degree) for c in cycles], degree=degree)


@pytest.fixture(scope="module")
def s4():
    return _group("(1 2 3 4)", "(1 2)", degree=4)


@pytest.fixture(scope="module")
def d8():
    return _group("(1 2 3 4)", "(1 3)", degree=4)


def test_parse_cycles():
    p = parse_cycles("(1 2 3)(4 5)")
    assert p.degree == 5
    assert_array_equal(p.images, [1, 2, 0, 4, 3])
    assert parse_cycles("(1,2)", degree=4) == Permutation([1, 0, 2, 3])
    assert parse_cycles("()", degree=3).is_identity()
    assert parse_cycles("", degree=2).is_identity()
    assert p.to_cycles() == "(1 2 3)(4 5)"
    assert p.order() == 6


@pytest.mark.parametrize(
    "text, degree",
    [
        ("(1 2)(1 3)", None),
        ("(1 2", None),
        ("(a b)", None),
        ("(0 1)", None),
        ("(1 5)", 4),
        ("1 2", None),
    ],
)
def test_parse_cycles_invalid(text, degree):
    with pytest.raises(ValueError):
        parse_cycles(text, degree=degree)


def test_permutation_product_applies_left_first():
    p = parse_cycles("(1 2)", degree=3)
    q = parse_cycles("(2 3)", degree=3)
    pq = compose(p, q)
    # 1 -> 2 under p, then 2 -> 3 under q
    assert pq(0) == 2
    assert pq == p * q
    assert pq != q * p
    assert inverse(pq) * pq == identity(3)
    with pytest.raises(ValueError):
        p * identity(4)


def test_permutation_invalid():
    with pytest.raises(ValueError, match="bijection"):
        Permutation([0, 0, 1])
    p = Permutation([1, 0])
    with pytest.raises(ValueError):
        p.images[0] = 1


@pytest.mark.parametrize(
    "cycles, degree",
    [
        (["(1 2 3 4 5)", "(1 2 3)"], 5),
        (["(1 2 3 4)", "(1 2)"], 4),
        (["(1 2 3 4 5 6 7 8)", "(1 3)(2 4)"], 8),
        (["(1 2)(3 4)", "(1 3)(2 4)"], 4),
        (["(1 8)(2 7)(3 4)(5 6)", "(1 2 3 4 5 6 7)"], 8),
    ],
)
def test_generate_matches_sympy(cycles, degree):
    perms = [parse_cycles(c, degree=degree) for c in cycles]
    G = generate(perms)
    oracle = PermutationGroup([SympyPermutation(p.images.tolist()) for p in perms])
    assert G.order == oracle.order()
    assert len(G) == G.order
    assert G.elements[0].tolist() == list(range(degree))
    # lexicographic element order
    rows = [tuple(r) for r in G.elements.tolist()]
    assert rows == sorted(rows)


def test_generate_errors():
    with pytest.raises(ValueError, match="different degrees"):
        generate([Permutation([1, 0]), Permutation([1, 2, 0])])
    with pytest.raises(ValueError, match="degree"):
        generate([])
    with pytest.raises(CapExceededError) as excinfo:
        generate(
            [parse_cycles("(1 2 3 4 5)"), parse_cycles("(1 2)", degree=5)], cap=50
        )
    assert excinfo.value.cap == 50
    assert excinfo.value.reached == 50


def test_trivial_group():
    G = generate([], degree=3)
    assert G.order == 1
    lattice = all_subgroups(G)
    assert len(lattice) == 1


def test_cayley_table(s4):
    table = s4.cayley_table
    rng = check_random_state(0)
    for i, j in rng.randint(s4.order, size=(30, 2)):
        product = s4.element(i) * s4.element(j)
        assert table[i, j] == s4.index_of(product)
    assert_array_equal(table[0], np.arange(s4.order))
    assert_array_equal(table[np.arange(s4.order), s4.inverses], 0)
    assert sorted(np.bincount(s4.element_orders).tolist()) == [0, 1, 6, 8, 9]
    assert not s4.is_abelian()


def test_index_of(s4):
    p = parse_cycles("(1 3)", degree=4)
    assert p in s4
    assert s4.element(s4.index_of(p)) == p
    assert parse_cycles("(1 2)", degree=5) not in s4
    with pytest.raises(ValueError):
        s4.index_of(parse_cycles("(1 2)", degree=5))


def test_subgroup_lagrange(s4):
    with pytest.raises(ValueError, match="Lagrange"):
        Subgroup(s4, [0, 1, 2, 3, 4])


def test_subgroup_operations(s4):
    c4 = cyclic_subgroup(s4, parse_cycles("(1 2 3 4)", degree=4))
    v4 = subgroup_generated(
        s4, [parse_cycles("(1 2)(3 4)", degree=4), parse_cycles("(1 3)(2 4)", degree=4)]
    )
    assert c4.order == 4 and v4.order == 4
    meet = intersect(c4, v4)
    assert meet.order == 2
    assert meet <= c4 and meet < v4
    assert join(c4, v4).order == 8
    assert normalizer(s4, v4).is_whole()
    assert normalizer(s4, c4).order == 8
    assert len(conjugates(c4)) == 3
    assert len(conjugates(v4)) == 1
    g = parse_cycles("(1 2)", degree=4)
    assert conjugate(c4, g) != c4
    assert centralizer(s4, parse_cycles("(1 2)", degree=4)).order == 4
    assert involutions(s4.whole).size == 9


def test_mixed_parents(s4, d8):
    with pytest.raises(ValueError, match="different parent"):
        intersect(s4.whole, d8.whole)


def test_stabilizers(s4):
    assert point_stabilizer(s4, 0).order == 6
    assert setwise_stabilizer(s4, [0, 1]).order == 4
    with pytest.raises(ValueError):
        point_stabilizer(s4, 4)


def test_dihedral_join(s4):
    x = parse_cycles("(1 2)", degree=4)
    y = parse_cycles("(2 3)", degree=4)
    assert dihedral_join(s4, x, y).order == 6
    assert dihedral_join(s4, x, x).order == 2
    with pytest.raises(ValueError, match="involutions"):
        dihedral_join(s4, x, parse_cycles("(1 2 3)", degree=4))


@pytest.mark.parametrize(
    "cycles, degree, n_subgroups",
    [
        (["(1 2 3 4 5)"], 5, 2),
        (["(1 2 3)"], 3, 2),
        (["(1 2 3 4)", "(1 2)"], 4, 30),
        (["(1 2 3 4)", "(1 3)"], 4, 10),
        (["(1 2 3 4 5 6 7 8 9 10 11 12)"], 12, 6),
        (["(1 2)(3 4)", "(1 2 3)"], 4, 10),
    ],
)
def test_all_subgroups_counts(cycles, degree, n_subgroups):
    G = _group(*cycles, degree=degree)
    lattice = all_subgroups(G)
    assert len(lattice) == n_subgroups
    assert lattice.trivial.is_trivial()
    assert lattice.whole.is_whole()
    keys = {S.key for S in subgroups_by_joins(G)}
    assert keys == {S.key for S in lattice}


def test_a5_lattice(a5_lattice):
    assert len(a5_lattice) == 59
    assert a5_lattice.order_counts() == {
        1: 1, 2: 15, 3: 10, 4: 5, 5: 6, 6: 10, 10: 6, 12: 5, 60: 1
    }
    sizes = sorted(len(c) for c in a5_lattice.conjugacy_classes())
    assert sizes == [1, 1, 5, 5, 6, 6, 10, 10, 15]
    assert len(a5_lattice.proper_nontrivial()) == 57


def test_a5_lattice_matches_joins(a5_preset, a5_lattice):
    joins = subgroups_by_joins(a5_preset.group)
    assert [S.key for S in joins] == [S.key for S in a5_lattice]


def test_a5_maximals(a5_lattice):
    orders = sorted({M.order for M in a5_lattice.maximals()})
    assert orders == [6, 10, 12]
    assert len(a5_lattice.maximals()) == 21
    # the recorded classes agree with the containment definition
    fallback = maximals(subgroups_by_joins(a5_lattice.group))
    assert sorted(M.key for M in fallback) == sorted(
        M.key for M in a5_lattice.maximals()
    )


def test_a5_sylow_normalizer(a5_preset, a5_lattice):
    G = a5_preset.group
    P = next(S for S in a5_lattice if S.order == 5)
    assert normalizer(G, P).order == 10
    assert len(conjugates(P)) == 6


def test_prime_order_subgroups(a5_lattice, s3_lattice):
    assert len(prime_order_subgroups(a5_lattice)) == 31
    assert len(prime_order_subgroups(s3_lattice)) == 4


def test_maximals_of_prime_cyclic():
    lattice = all_subgroups(_group("(1 2 3 4 5)", degree=5))
    assert maximals(lattice) == []


def test_psl2_7_lattice(psl2_7_lattice):
    assert len(psl2_7_lattice) == 179
    assert len(psl2_7_lattice.conjugacy_classes()) == 15
    assert sorted({M.order for M in psl2_7_lattice.maximals()}) == [21, 24]


def test_all_subgroups_caps(a5_preset):
    G = a5_preset.group
    with pytest.raises(CapExceededError) as excinfo:
        all_subgroups(G, cap=50)
    assert excinfo.value.reached == 60
    with pytest.raises(CapExceededError):
        all_subgroups(G, count_cap=20)


def test_lattice_cap_from_env(monkeypatch, a5_preset):
    monkeypatch.setenv("INTERGRAPH_CAP", "30")
    with pytest.raises(CapExceededError):
        all_subgroups(a5_preset.group)


def test_subgroups_by_joins_cap():
    G = load_preset("a6").group
    with pytest.raises(CapExceededError):
        subgroups_by_joins(G)


def test_double_count(a5_preset, a5_lattice):
    G = a5_preset.group
    for H in a5_lattice.class_representatives():
        for M in a5_lattice:
            if H <= M:
                report = double_count_check(G, H, M, strict=True)
                assert report.passed
    H = next(S for S in a5_lattice if S.order == 2)
    M = next(S for S in a5_lattice if S.order == 12 and H <= S)
    values = double_count_check(G, H, M)["double_count"].values
    # 15 involutions, 5 copies of A4 with 3 involutions each
    assert values["left"] == values["right"] == 15
    assert values["H_inside_M"] == 3


def test_double_count_errors(a5_lattice):
    G = a5_lattice.group
    P5 = next(S for S in a5_lattice if S.order == 5)
    A4 = next(S for S in a5_lattice if S.order == 12)
    with pytest.raises(ValueError, match="H <= M"):
        double_count_check(G, P5, A4)


def test_identity_violation_error_is_assertion():
    assert issubclass(IdentityViolationError, AssertionError)


@pytest.mark.slow
def test_a6_lattice():
    lattice = all_subgroups(load_preset("a6").group)
    assert len(lattice) == 501
    assert len(lattice.conjugacy_classes()) == 22


_PRESETS_UP_TO_1000 = [
    "s3",
    "a5",
    "psl2_7",
    pytest.param("a6", marks=pytest.mark.slow),
    pytest.param("psl2_11", marks=pytest.mark.slow),
]


@pytest.mark.parametrize("name", _PRESETS_UP_TO_1000)
def test_lattice_closure_invariants(name):
    G = load_preset(name).group
    lattice = all_subgroups(G)
    keys = {S.key for S in lattice}
    for S in lattice:
        assert G.order % S.order == 0
        assert len(conjugates(S)) * normalizer(G, S).order == G.order
        for g in G.generator_indices:
            assert conjugate(S, g).key in keys
    for S, T in combinations(lattice, 2):
        assert intersect(S, T).key in keys


@pytest.mark.parametrize("name", _PRESETS_UP_TO_1000)
def test_double_count_on_presets(name):
    G = load_preset(name).group
    lattice = all_subgroups(G)
    class_of = lattice.class_of()
    n_pairs = 0
    for H in lattice.class_representatives():
        if H.is_trivial():
            continue
        seen = set()
        for M in lattice:
            k = int(class_of[lattice.position(M)])
            if k in seen or not H <= M:
                continue
            seen.add(k)
            assert double_count_check(G, H, M, strict=True).passed
            n_pairs += 1
    assert n_pairs > 0
