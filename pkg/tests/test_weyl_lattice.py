import itertools

import pytest
import sympy

from errors import ParamsMismatchError, ParseError, QcoxError
from factor_enum import count_full_min, count_reduced
from pqc_rgs import generates_group, is_parabolic_qc
from weyl_lattice import (
    WeylType,
    abc_degree,
    cartan_report,
    connection_index,
    coxeter_element,
    coxeter_number,
    full_count_weyl,
    hermite_basis,
    integer_matrix,
    lattice_index,
    pairing_det,
    pdet_abs,
    root_of,
    weyl_group_order,
    weyl_group_params,
    weyl_pqc_crosscheck,
)
from wreath_core import (
    GroupParams,
    all_elements,
    all_reflections,
    diagonal,
    element_from_cycles,
    identity,
    parse_element,
    transposition,
)

A2, A3, B2, B3, D4 = (WeylType.parse(t) for t in ("A2", "A3", "B2", "B3", "D4"))


def test_weyl_type_parse():
    assert WeylType.parse(" B5 ") == WeylType("B", 5)
    assert str(WeylType("D", 4)) == "D4"
    for bad in ("E8", "A", "B-1", "D1"):
        with pytest.raises(ParseError):
            WeylType.parse(bad)


@pytest.mark.parametrize(
    "weyl_type, params, order, h",
    [
        (A2, GroupParams(1, 1, 3), 6, 3),
        (B2, GroupParams(2, 1, 2), 8, 4),
        (B3, GroupParams(2, 1, 3), 48, 6),
        (D4, GroupParams(2, 2, 4), 192, 6),
    ],
)
def test_realizations(weyl_type, params, order, h):
    assert weyl_group_params(weyl_type) == params
    assert weyl_group_order(weyl_type) == order
    assert coxeter_number(weyl_type) == h


def test_coxeter_elements():
    assert coxeter_element(A2) == element_from_cycles(GroupParams(1, 1, 3), [((1, 2, 3), 0)])
    assert coxeter_element(B2) == parse_element("G(2,1,2):[2 1;1,0]")
    assert coxeter_element(D4) == parse_element("G(2,2,4):[2 3 1 4;1,0,0,1]")


def test_integer_matrix():
    matrix = integer_matrix(parse_element("G(2,1,2):[2 1;1,0]"))
    assert matrix.tolist() == [[0, 1], [-1, 0]]
    with pytest.raises(ParamsMismatchError):
        integer_matrix(identity(GroupParams(3, 1, 2)))


def test_roots():
    s3 = GroupParams(1, 1, 3)
    pair = root_of(transposition(s3, 1, 2), A2)
    assert pair.root == pair.coroot == (1, -1, 0)

    b2 = GroupParams(2, 1, 2)
    pair = root_of(diagonal(b2, 1, 1), B2)
    assert pair.root == (1, 0) and pair.coroot == (2, 0)
    assert pair.pairing == 2

    d4 = GroupParams(2, 2, 4)
    assert root_of(transposition(d4, 1, 2, 1), D4).root == (1, 1, 0, 0)

    with pytest.raises(ParamsMismatchError):
        root_of(transposition(s3, 1, 2), B2)


@pytest.mark.parametrize("weyl_type", [A2, B2, B3, D4])
def test_reflect_matches_group_action(weyl_type):
    params = weyl_group_params(weyl_type)
    for t in all_reflections(params):
        pair = root_of(t, weyl_type)
        matrix = integer_matrix(t.element)
        assert pair.reflect(pair.root) == tuple(-x for x in pair.root)
        assert tuple(matrix * sympy.Matrix(pair.root)) == tuple(-x for x in pair.root)


def test_simple_system_determinants():
    s3 = GroupParams(1, 1, 3)
    assert pairing_det([transposition(s3, 1, 2), transposition(s3, 2, 3)], A2) == 3

    d4 = GroupParams(2, 2, 4)
    simple = [transposition(d4, 1, 2), transposition(d4, 2, 3), transposition(d4, 3, 4), transposition(d4, 3, 4, 1)]
    assert pairing_det(simple, D4) == 4

    b2 = GroupParams(2, 1, 2)
    report = cartan_report([transposition(b2, 1, 2), diagonal(b2, 2, 1)], B2)
    assert report.pairing_matrix == ((2, -2), (-1, 2))
    assert report.determinant == 2

    t = transposition(s3, 1, 2)
    assert pairing_det([t, t], A2) == 0

    with pytest.raises(QcoxError):
        cartan_report([t], A2)


@pytest.mark.parametrize("weyl_type", [A2, A3, B2, B3])
def test_determinant_detects_generation(weyl_type):
    params = weyl_group_params(weyl_type)
    index = connection_index(weyl_type)
    for subset in itertools.combinations(all_reflections(params), weyl_type.rank):
        by_det = abs(pairing_det(subset, weyl_type)) == index
        assert by_det == generates_group([t.element for t in subset], params), [str(t) for t in subset]


def test_connection_index():
    assert connection_index(A3) == 4
    assert connection_index(WeylType("B", 5)) == 2
    assert connection_index(D4) == 4
    assert connection_index(WeylType("A", 1), WeylType("A", 1)) == 4
    assert connection_index() == 1


def test_hermite_basis():
    assert hermite_basis([(2, 0), (0, 2), (1, 1)]) == ((1, 1), (0, 2))
    assert hermite_basis([(1, -1, 0), (0, 1, -1), (1, 0, -1)]) == ((1, 0, -1), (0, 1, -1))
    assert hermite_basis([]) == ()
    assert hermite_basis([(0, 0)]) == ()


def test_lattice_index():
    assert lattice_index(all_reflections(GroupParams(2, 2, 4)), D4, closed=True) == 4
    assert lattice_index(all_reflections(GroupParams(2, 1, 2)), B2, closed=True) == 2
    assert lattice_index(all_reflections(GroupParams(1, 1, 4)), A3, closed=True) == 4
    assert lattice_index((), B2) == 1
    b2 = GroupParams(2, 1, 2)
    # two diagonals generate A1 x A1 with short roots
    assert lattice_index([diagonal(b2, 1, 1), diagonal(b2, 2, 1)], B2) == 4


@pytest.mark.parametrize(
    "g, weyl_type, expected",
    [
        (identity(GroupParams(2, 1, 3)), B3, 1),
        (element_from_cycles(GroupParams(1, 1, 3), [((1, 2, 3), 0)]), A2, 3),
        (parse_element("G(2,1,2):[2 1;1,0]"), B2, 2),
        (parse_element("G(2,1,3):[2 3 1;1,0,0]"), B3, 2),
        (parse_element("G(2,1,2):[1 2;1,1]"), B2, 4),
        (parse_element("G(1,1,4):[2 1 4 3;0,0,0,0]"), A3, 4),
    ],
)
def test_pdet_abs(g, weyl_type, expected):
    assert pdet_abs(g) == expected


@pytest.mark.parametrize("weyl_type", [A2, A3, B2, B3])
def test_crosscheck_agrees(weyl_type):
    for g in all_elements(weyl_group_params(weyl_type)):
        report = weyl_pqc_crosscheck(g, weyl_type)
        assert report.agree, f"{g}: {report}"


def test_crosscheck_on_non_pqc():
    report = weyl_pqc_crosscheck(parse_element("G(2,1,2):[1 2;1,1]"), B2)
    assert not report.is_pqc
    assert not report.lattice_bases
    assert (report.pdet, report.closure_index) == (4, 2)
    assert report.agree


def test_crosscheck_rejects_other_groups():
    with pytest.raises(ParamsMismatchError):
        weyl_pqc_crosscheck(identity(GroupParams(2, 2, 2)), B2)


@pytest.mark.parametrize("weyl_type, expected", [(A2, 3), (A3, 16), (B2, 4), (B3, 27), (D4, 162)])
def test_abc_degree(weyl_type, expected):
    assert abc_degree(weyl_type) == expected
    assert count_reduced(coxeter_element(weyl_type)) == expected


@pytest.mark.parametrize(
    "g, weyl_type, expected",
    [
        (element_from_cycles(GroupParams(1, 1, 3), [((1, 2), 0)]), A2, 8),
        (identity(GroupParams(2, 1, 2)), B2, 48),
        (parse_element("G(2,1,2):[2 1;1,0]"), B2, 4),
    ],
)
def test_full_count_weyl(g, weyl_type, expected):
    assert full_count_weyl(g, weyl_type) == expected
    assert count_full_min(g) == expected


@pytest.mark.parametrize("weyl_type", [A2, B2, A3])
def test_full_count_weyl_matches_enumeration(weyl_type):
    for g in all_elements(weyl_group_params(weyl_type)):
        if not is_parabolic_qc(g).is_pqc:
            continue
        assert full_count_weyl(g, weyl_type) == count_full_min(g), str(g)
