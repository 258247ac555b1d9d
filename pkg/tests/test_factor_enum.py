import pytest
from sympy import Rational
from sympy.utilities.iterables import partitions

from errors import CapExceededError, NotParabolicQuasiCoxeterError, QcoxError, UnsupportedGroupError
from factor_enum import (
    COLORED_PAIR,
    SINGLE_COLORED_CYCLE,
    SYMMETRIC_CYCLE,
    count_full_min,
    count_reduced,
    cycle_type_of,
    dps_cacti_count,
    dps_formula,
    dps_identity,
    enumerate_full_min,
    enumerate_reduced,
    exponents,
    fred_formula_pqc,
    fred_formula_qc,
    full_count_formula,
    generalized_cycles,
    hurwitz_number,
    regular_fred_check_dn,
)
from hurwitz import FactorTuple
from lengths import full_refl_length, refl_length
from oracles import brute_cacti, brute_dps, brute_transitive_count
from pqc_rgs import is_parabolic_qc
from wreath_core import (
    GroupParams,
    all_elements,
    colored_cycles,
    element_from_cycles,
    identity,
    parse_element,
    product,
    transposition,
)

S3 = GroupParams(1, 1, 3)

QC_EXAMPLES = [
    ("G(5,5,2):[1 2;1,4]", 5),
    ("G(2,2,4):[2 1 4 3;1,0,1,0]", 192),
    ("G(1,1,4):[2 3 4 1;0,0,0,0]", 16),
    ("G(3,1,3):[2 3 1;1,0,0]", 27),
    ("G(2,2,3):[2 1 3;1,0,1]", 16),
    ("G(2,1,2):[2 1;1,0]", 4),
    ("G(2,2,4):[2 3 1 4;1,0,0,1]", 162),
]


def test_reduced_of_identity():
    params = GroupParams(2, 1, 3)
    assert enumerate_reduced(identity(params)) == [FactorTuple(params, ())]
    assert count_reduced(identity(params)) == 1


def test_reduced_of_three_cycle():
    g = element_from_cycles(S3, [((1, 2, 3), 0)])
    reduced = enumerate_reduced(g)
    assert len(reduced) == 3
    assert all(t.product == g for t in reduced)
    assert reduced == sorted(reduced)


def test_reduced_products_and_lengths():
    params = GroupParams(3, 1, 2)
    for g in all_elements(params):
        reduced = enumerate_reduced(g)
        assert len(reduced) == count_reduced(g)
        assert len(set(reduced)) == len(reduced)
        for t in reduced:
            assert len(t) == refl_length(g)
            assert product(t.elements, params) == g


def test_reduced_depth_cap():
    g = element_from_cycles(GroupParams(1, 1, 5), [((1, 2, 3, 4, 5), 0)])
    with pytest.raises(CapExceededError):
        enumerate_reduced(g, depth_cap=3)
    with pytest.raises(CapExceededError):
        enumerate_reduced(g, cap=10)


@pytest.mark.parametrize("text, expected", QC_EXAMPLES)
def test_fred_of_quasi_coxeter(text, expected):
    g = parse_element(text)
    assert fred_formula_qc(g) == expected
    assert count_reduced(g) == expected


def test_fred_qc_needs_quasi_coxeter():
    with pytest.raises(NotParabolicQuasiCoxeterError):
        fred_formula_qc(parse_element("G(1,1,4):[2 1 4 3;0,0,0,0]"))
    with pytest.raises(UnsupportedGroupError):
        fred_formula_qc(identity(GroupParams(4, 2, 2)))


@pytest.mark.parametrize(
    "text, expected",
    [
        ("G(1,1,4):[2 1 4 3;0,0,0,0]", 2),
        ("G(1,1,5):[2 3 1 5 4;0,0,0,0,0]", 9),
        ("G(1,1,4):[2 3 4 1;0,0,0,0]", 16),
        ("G(2,2,2):[1 2;1,1]", 2),
        ("G(2,1,3):[2 1 3;0,0,1]", 2),
        ("G(3,1,3):[1 2 3;0,0,0]", 1),
    ],
)
def test_fred_of_parabolic_quasi_coxeter(text, expected):
    g = parse_element(text)
    assert fred_formula_pqc(g) == expected
    assert count_reduced(g) == expected


@pytest.mark.parametrize("triple", [(1, 1, 4), (2, 1, 3), (3, 1, 2), (2, 2, 3), (3, 3, 3)])
def test_fred_formula_matches_enumeration(triple):
    for g in all_elements(GroupParams(*triple)):
        if is_parabolic_qc(g).is_pqc:
            assert fred_formula_pqc(g) == count_reduced(g), str(g)


def test_generalized_cycles():
    g = parse_element("G(1,1,5):[2 3 1 5 4;0,0,0,0,0]")
    components = generalized_cycles(g).components
    assert [(c.tag, c.support) for c in components] == [(SYMMETRIC_CYCLE, (1, 2, 3)), (SYMMETRIC_CYCLE, (4, 5))]

    g = parse_element("G(2,2,4):[2 1 4 3;1,0,1,0]")
    (component,) = generalized_cycles(g).components
    assert component.tag == COLORED_PAIR
    assert component.support == (1, 2, 3, 4)
    assert component.lengths == (2, 2)

    g = parse_element("G(3,1,3):[2 3 1;1,0,0]")
    (component,) = generalized_cycles(g).components
    assert component.tag == SINGLE_COLORED_CYCLE
    assert component.element == g

    with pytest.raises(NotParabolicQuasiCoxeterError):
        generalized_cycles(parse_element("G(2,1,2):[1 2;1,1]"))


def test_generalized_cycles_multiply_back():
    g = parse_element("G(3,1,5):[2 1 3 5 4;0,0,2,0,0]")
    decomposition = generalized_cycles(g)
    assert len(decomposition) == 3
    assert product((c.element for c in decomposition), g.params) == g


def test_full_factorizations_of_transposition():
    g = element_from_cycles(S3, [((1, 2), 0)])
    found = enumerate_full_min(g)
    assert len(found) == 8
    assert all(len(t) == 3 and t.product == g for t in found)
    assert count_full_min(g) == full_count_formula(g) == 8


def test_full_factorizations_of_identity_in_s2():
    params = GroupParams(1, 1, 2)
    r = transposition(params, 1, 2)
    assert enumerate_full_min(identity(params)) == [FactorTuple(params, (r, r))]


def test_full_factorizations_of_trivial_group():
    params = GroupParams(2, 2, 1)
    assert enumerate_full_min(identity(params)) == [FactorTuple(params, ())]
    assert full_count_formula(identity(params)) == 1


@pytest.mark.parametrize(
    "text, expected",
    [
        ("G(3,1,1):[1;1]", 1),
        ("G(3,1,1):[1;0]", 2),
        ("G(2,1,2):[1 2;0,0]", 48),
        ("G(2,1,2):[2 1;1,0]", 4),
    ],
)
def test_full_count_examples(text, expected):
    g = parse_element(text)
    assert full_count_formula(g) == expected
    assert count_full_min(g) == expected


@pytest.mark.parametrize("triple", [(1, 1, 3), (1, 1, 4), (2, 1, 2), (3, 1, 2), (2, 2, 2), (2, 2, 3)])
def test_full_count_formula_matches_enumeration(triple):
    params = GroupParams(*triple)
    for g in all_elements(params):
        try:
            formula = full_count_formula(g)
        except UnsupportedGroupError:
            continue
        found = enumerate_full_min(g)
        assert len(found) == formula, str(g)
        assert all(len(t) == full_refl_length(g) for t in found)


def test_full_count_needs_coprime_colors():
    with pytest.raises(UnsupportedGroupError):
        full_count_formula(identity(GroupParams(2, 2, 2)))


@pytest.mark.parametrize("parts, expected", [((1,), 1), ((2,), 1), ((3,), 3), ((4,), 16), ((2, 1), 8), ((1, 1), 1)])
def test_hurwitz_number(parts, expected):
    assert hurwitz_number(parts) == expected


def test_hurwitz_number_matches_transitive_count():
    for n in range(1, 5):
        for p in partitions(n):
            parts = tuple(sorted((k for k, v in p.items() for _ in range(v)), reverse=True))
            assert hurwitz_number(parts) == brute_transitive_count(parts), parts


def test_hurwitz_number_rejects_bad_partition():
    with pytest.raises(QcoxError):
        hurwitz_number(())
    with pytest.raises(QcoxError):
        hurwitz_number((2, 0))


def test_exponents():
    vector = exponents(identity(GroupParams(2, 1, 3)))
    assert vector.order == 1 and vector.exponents == (0, 0, 0)

    vector = exponents(element_from_cycles(S3, [((1, 2, 3), 0)]))
    assert vector.order == 3
    assert vector.exponents == (1, 2)

    vector = exponents(identity(S3))
    assert vector.order == 1 and vector.exponents == (0, 0)

    vector = exponents(element_from_cycles(GroupParams(1, 1, 4), [((1, 2), 0), ((3, 4), 0)]))
    assert vector.order == 2
    assert vector.exponents == (0, 1, 1)

    vector = exponents(parse_element("G(2,1,2):[2 1;1,0]"))
    assert vector.order == 4
    assert vector.exponents == (1, 3)


@pytest.mark.parametrize("n, fred, delta", [(2, 192, 2), (3, 2 * 5 * 6 * 27 * 27, 3), (4, 18350080, 4)])
def test_regular_fred_check(n, fred, delta):
    check = regular_fred_check_dn(n)
    assert check.fred == fred
    assert check.delta == delta
    assert check.fred == check.base * check.delta


def test_regular_fred_check_cap():
    with pytest.raises(CapExceededError):
        regular_fred_check_dn(9)


def test_cycle_type_of():
    assert cycle_type_of((2, 1)) == (2, 1, 1)
    assert cycle_type_of((0, 0, 1)) == (3,)


@pytest.mark.parametrize("mvec", [(0, 1), (2,), (1, 1), (3,), (1, 1, 1), (2, 1), (0, 2, 1), (4,), (2, 0, 1)])
def test_dps_formula_matches_trees(mvec):
    assert dps_formula(mvec) == brute_dps(mvec)
    assert dps_identity(mvec)


@pytest.mark.parametrize("mvec, expected", [((0, 1), 1), ((2,), 1), ((3,), 1), ((1, 1, 1), 12), ((4,), 4), ((2, 1), 4)])
def test_dps_cacti_count(mvec, expected):
    assert dps_cacti_count(mvec) == expected


@pytest.mark.parametrize("n", range(1, 6))
def test_dps_cacti_count_matches_enumeration(n):
    for p in partitions(n):
        mvec = tuple(p.get(i, 0) for i in range(1, n + 1))
        assert dps_cacti_count(mvec) == brute_cacti(mvec), mvec


def test_dps_formula_values():
    assert dps_formula((0, 1)) == Rational(1, 2)
    assert dps_formula((2,)) == Rational(1, 2)


@pytest.mark.parametrize("mvec", [(), (0, 0), (-1, 2), (1.5,)])
def test_dps_rejects_malformed(mvec):
    with pytest.raises(QcoxError):
        dps_formula(mvec)


def test_colored_pair_lengths():
    g = parse_element("G(2,2,4):[2 3 1 4;1,0,0,1]")
    (component,) = generalized_cycles(g).components
    assert component.lengths == (3, 1)
    assert component.size == sum(c.length for c in colored_cycles(g))
