import pytest

from errors import ParamsMismatchError, UnsupportedGroupError
from lengths import (
    absolute_leq,
    codim_fixed,
    full_refl_length,
    is_left_descent,
    length_report,
    reduced_factorization,
    refl_length,
    v_m,
)
from oracles import brute_full_length, cayley_distances, eigen_fixed_dim
from pqc_rgs import is_parabolic_qc
from wreath_core import (
    Element,
    GroupParams,
    all_elements,
    element_from_cycles,
    identity,
    parse_element,
    product,
    rank,
    transposition,
)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("G(3,1,3):[1 2 3;0,0,0]", 0),
        ("G(3,1,3):[1 2 3;1,1,1]", 3),
        ("G(2,2,2):[1 2;1,1]", 2),
        ("G(1,1,4):[2 3 4 1;0,0,0,0]", 3),
        ("G(2,1,2):[2 1;0,1]", 2),
    ],
)
def test_refl_length_examples(text, expected):
    assert refl_length(parse_element(text)) == expected


@pytest.mark.parametrize("triple", [(1, 1, 4), (2, 1, 2), (3, 1, 2), (2, 2, 3), (3, 3, 3), (4, 4, 2)])
def test_refl_length_is_cayley_distance(triple):
    params = GroupParams(*triple)
    distances = cayley_distances(params)
    for g in all_elements(params):
        assert refl_length(g) == distances[g], str(g)


def test_refl_length_intermediate_p_is_refused():
    with pytest.raises(UnsupportedGroupError, match="intermediate p"):
        refl_length(identity(GroupParams(4, 2, 2)))


@pytest.mark.parametrize(
    "text, expected",
    [
        ("G(2,2,2):[1 2;0,0]", 2),
        ("G(2,2,2):[1 2;1,1]", 1),
        ("G(3,3,3):[1 2 3;1,1,1]", 1),
        ("G(4,4,4):[1 2 3 4;1,3,2,2]", 2),
    ],
)
def test_v_m(text, expected):
    assert v_m(parse_element(text)) == expected


@pytest.mark.parametrize(
    "text, expected",
    [
        ("G(2,2,3):[1 2 3;0,0,0]", 6),
        ("G(3,3,2):[1 2;0,0]", 4),
        ("G(1,1,3):[2 1 3;0,0,0]", 3),
        ("G(4,2,2):[1 2;0,0]", 6),
        ("G(1,1,1):[1;0]", 0),
        ("G(3,1,1):[1;1]", 1),
        ("G(3,1,1):[1;0]", 2),
        ("G(4,2,1):[1;2]", 1),
    ],
)
def test_full_length_examples(text, expected):
    assert full_refl_length(parse_element(text)) == expected


@pytest.mark.parametrize("triple", [(1, 1, 3), (2, 1, 2), (2, 2, 2), (3, 1, 2), (3, 3, 2)])
def test_full_length_matches_search(triple):
    for g in all_elements(GroupParams(*triple)):
        assert full_refl_length(g) == brute_full_length(g), str(g)


@pytest.mark.parametrize("triple", [(2, 1, 3), (3, 1, 2), (2, 2, 3), (4, 4, 2)])
def test_codim_matches_eigenspace(triple):
    params = GroupParams(*triple)
    for g in all_elements(params):
        assert codim_fixed(g) == params.n - eigen_fixed_dim(g), str(g)


def test_codim_of_long_cycle():
    g = element_from_cycles(GroupParams(3, 1, 4), [((1, 2, 3, 4), 0)])
    assert codim_fixed(g) == 3
    assert codim_fixed(parse_element("G(3,1,3):[1 2 3;1,1,1]")) == 3


def test_absolute_order():
    s3 = GroupParams(1, 1, 3)
    cycle = element_from_cycles(s3, [((1, 2, 3), 0)])
    t = transposition(s3, 1, 2).element
    assert absolute_leq(identity(s3), cycle)
    assert absolute_leq(cycle, cycle)
    assert absolute_leq(t, cycle)
    assert not absolute_leq(cycle, t)
    with pytest.raises(ParamsMismatchError):
        absolute_leq(t, identity(GroupParams(1, 1, 4)))


@pytest.mark.parametrize("triple", [(1, 1, 3), (2, 1, 2), (3, 1, 2), (2, 2, 3)])
def test_absolute_order_is_a_partial_order(triple):
    elements = list(all_elements(GroupParams(*triple)))
    leq = {(u, v): absolute_leq(u, v) for u in elements for v in elements}
    for u in elements:
        assert leq[u, u], str(u)
        for v in elements:
            if u != v:
                assert not (leq[u, v] and leq[v, u]), f"{u} and {v}"
            if not leq[u, v]:
                continue
            for w in elements:
                if leq[v, w]:
                    assert leq[u, w], f"{u} <= {v} <= {w}"


@pytest.mark.parametrize("triple", [(1, 1, 4), (2, 1, 3), (3, 1, 2), (2, 2, 3), (2, 2, 4), (3, 3, 3)])
def test_lengths_bound_twice_the_rank(triple):
    params = GroupParams(*triple)
    for g in all_elements(params):
        total = refl_length(g) + full_refl_length(g)
        assert total >= 2 * rank(params), str(g)
        assert (total == 2 * rank(params)) == is_parabolic_qc(g).is_pqc, str(g)


@pytest.mark.parametrize("triple", [(1, 1, 4), (2, 1, 3), (2, 2, 3), (3, 3, 3)])
def test_reduced_factorization(triple):
    params = GroupParams(*triple)
    for g in all_elements(params):
        factors = reduced_factorization(g)
        assert len(factors) == refl_length(g)
        assert product((t.element for t in factors), params) == g
        if factors:
            assert is_left_descent(factors[0], g)


def test_length_report():
    report = length_report(parse_element("G(3,1,3):[1 2 3;1,1,1]"))
    assert (report.refl_length, report.full_length, report.codim_fixed, report.v_m) == (3, 6, 3, None)

    report = length_report(parse_element("G(2,2,2):[1 2;1,1]"))
    assert report.v_m == 1

    report = length_report(Element(GroupParams(4, 2, 2), (1, 2), (0, 0)))
    assert report.refl_length is None
    assert report.full_length == 6
