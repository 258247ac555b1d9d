import random

import pytest

from errors import CapExceededError, QcoxError
from factor_enum import enumerate_reduced
from hurwitz import FactorTuple, braid_act, hurwitz_orbit, is_hurwitz_transitive_on_reduced
from wreath_core import GroupParams, all_reflections, diagonal, element_from_cycles, parse_element, transposition

S3 = GroupParams(1, 1, 3)


def tuple_of(params, *factors):
    return FactorTuple(params, tuple(factors))


def test_factor_tuple():
    t = tuple_of(S3, transposition(S3, 1, 2), transposition(S3, 2, 3))
    assert len(t) == 2
    assert t.product == element_from_cycles(S3, [((1, 2, 3), 0)])
    assert t.to_json() == ["[(1 2);0]", "[(2 3);0]"]
    assert str(t) == "([(1 2);0], [(2 3);0])"


def test_braid_move_example():
    t = tuple_of(S3, transposition(S3, 1, 2), transposition(S3, 2, 3))
    assert braid_act(1, t) == tuple_of(S3, transposition(S3, 2, 3), transposition(S3, 1, 3))


def test_braid_moves_invert_each_other():
    params = GroupParams(3, 1, 3)
    t = tuple_of(params, transposition(params, 1, 2, 1), diagonal(params, 2, 1), transposition(params, 2, 3, 2))
    for i in (1, 2):
        assert braid_act(i, braid_act(i, t), inverse_move=True) == t
        assert braid_act(i, braid_act(i, t, inverse_move=True)) == t
        assert braid_act(i, t).product == t.product


def test_braid_move_fixes_equal_factors():
    r = transposition(S3, 1, 3)
    assert braid_act(1, tuple_of(S3, r, r)) == tuple_of(S3, r, r)


@pytest.mark.parametrize("i", [0, 2])
def test_braid_index_out_of_range(i):
    t = tuple_of(S3, transposition(S3, 1, 2), transposition(S3, 2, 3))
    with pytest.raises(QcoxError):
        braid_act(i, t)


def test_trivial_orbits():
    empty = tuple_of(S3)
    assert hurwitz_orbit(empty) == [empty]
    single = tuple_of(S3, transposition(S3, 1, 2))
    assert hurwitz_orbit(single) == [single]


def test_orbit_of_three_cycle():
    g = element_from_cycles(S3, [((1, 2, 3), 0)])
    reduced = enumerate_reduced(g)
    assert len(reduced) == 3
    assert hurwitz_orbit(reduced[0]) == reduced


def test_orbit_of_commuting_diagonals():
    params = GroupParams(3, 1, 3)
    t = tuple_of(params, diagonal(params, 1, 1), diagonal(params, 2, 1), diagonal(params, 3, 1))
    orbit = hurwitz_orbit(t, check=True)
    assert len(orbit) == 6
    assert {frozenset(x.factors) for x in orbit} == {frozenset(t.factors)}
    assert is_hurwitz_transitive_on_reduced(parse_element("G(3,1,3):[1 2 3;1,1,1]"))


def test_orbit_invariants_hold():
    g = parse_element("G(2,2,4):[2 1 4 3;1,0,1,0]")
    orbit = hurwitz_orbit(enumerate_reduced(g)[0], check=True)
    assert all(x.product == g for x in orbit)


def test_orbit_cap():
    g = element_from_cycles(GroupParams(1, 1, 4), [((1, 2, 3, 4), 0)])
    with pytest.raises(CapExceededError):
        hurwitz_orbit(enumerate_reduced(g)[0], cap=5)


@pytest.mark.parametrize(
    "text",
    [
        "G(1,1,3):[2 3 1;0,0,0]",
        "G(1,1,4):[2 3 4 1;0,0,0,0]",
        "G(1,1,5):[2 3 4 5 1;0,0,0,0,0]",
        "G(3,1,2):[2 1;1,0]",
        "G(2,2,3):[2 1 3;1,0,1]",
        "G(1,1,5):[2 3 1 5 4;0,0,0,0,0]",
    ],
)
def test_transitive_on_reduced(text):
    assert is_hurwitz_transitive_on_reduced(parse_element(text))


def _random_tuple(rng, params, length):
    reflections = all_reflections(params)
    return FactorTuple(params, tuple(rng.choice(reflections) for _ in range(length)))


@pytest.mark.parametrize("triple", [(1, 1, 5), (3, 1, 3), (4, 4, 3), (2, 2, 4)])
def test_braid_relations(triple):
    rng = random.Random(sum(triple))
    params = GroupParams(*triple)
    for _ in range(50):
        t = _random_tuple(rng, params, 5)
        for i in range(1, 4):
            left = braid_act(i, braid_act(i + 1, braid_act(i, t)))
            right = braid_act(i + 1, braid_act(i, braid_act(i + 1, t)))
            assert left == right, (i, str(t))
        for i in range(1, 5):
            for j in range(i + 2, 5):
                assert braid_act(i, braid_act(j, t)) == braid_act(j, braid_act(i, t)), (i, j, str(t))


def test_closure_cap_reaches_the_invariant_check():
    params = GroupParams(3, 1, 3)
    t = tuple_of(params, transposition(params, 1, 2), transposition(params, 2, 3, 1), diagonal(params, 1, 1))
    assert len(hurwitz_orbit(t, check=True)) > 1
    with pytest.raises(CapExceededError):
        hurwitz_orbit(t, check=True, closure_cap=5)
