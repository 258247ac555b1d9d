"""Enumeration and counting of reduced and full reflection factorizations.

Reduced factorizations are found left to right: t can come first exactly
when it is a left descent of what remains, so the cycle-color length
formulas prune the search perfectly.  Minimum full factorizations use the
length as a lower bound mid-branch and the closure oracle at the leaves.
All closed forms are evaluated with exact sympy arithmetic.
"""
import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import sympy
from sympy import Rational

from errors import CapExceededError, MismatchError, NotParabolicQuasiCoxeterError, QcoxError, UnsupportedGroupError
from hurwitz import FactorTuple
from lengths import codim_fixed, full_refl_length, is_left_descent, refl_length
from pqc_rgs import generates_group, is_parabolic_qc, weighted_cayley
from settings import DEFAULT_CLOSURE_CAP, DEFAULT_DEPTH_CAP, DEFAULT_ORBIT_CAP
from wreath_core import (
    Element,
    GroupParams,
    all_reflections,
    colored_cycles,
    element_order,
    group_order,
    inverse,
    multiply,
    weight,
)

logger = logging.getLogger(__name__)

SYMMETRIC_CYCLE = "SymmetricCycle"
COLORED_PAIR = "ColoredPair"
SINGLE_COLORED_CYCLE = "SingleColoredCycle"


def _require_well_generated(params):
    if not (params.well_generated or params.m == 1):
        raise UnsupportedGroupError(f"{params} is not well generated (1 < p < m)")


# -------------------------------
# Reduced factorizations
# -------------------------------
def enumerate_reduced(g, depth_cap=DEFAULT_DEPTH_CAP, cap=DEFAULT_ORBIT_CAP):
    """Every reduced reflection factorization of g, in canonical order"""
    params = g.params
    _require_well_generated(params)
    length = refl_length(g)
    if length > depth_cap:
        raise CapExceededError("reflection length", depth_cap)
    reflections = all_reflections(params)
    found = []

    def extend(prefix, remaining, left):
        if not left:
            found.append(FactorTuple(params, tuple(prefix)))
            if len(found) > cap:
                raise CapExceededError("reduced factorizations", cap)
            return
        for t in reflections:
            if is_left_descent(t, remaining, left):
                prefix.append(t)
                extend(prefix, multiply(inverse(t.element), remaining), left - 1)
                prefix.pop()

    extend([], g, length)
    logger.debug("%s: %d reduced factorizations of length %d", g, len(found), length)
    return found


@lru_cache(maxsize=1 << 18)
def _count_reduced(g, length):
    if not length:
        return 1
    return sum(
        _count_reduced(multiply(inverse(t.element), g), length - 1)
        for t in all_reflections(g.params)
        if is_left_descent(t, g, length)
    )


def count_reduced(g, depth_cap=DEFAULT_DEPTH_CAP):
    _require_well_generated(g.params)
    length = refl_length(g)
    if length > depth_cap:
        raise CapExceededError("reflection length", depth_cap)
    return _count_reduced(g, length)


# -------------------------------
# Generalized cycles
# -------------------------------
@dataclass(frozen=True)
class GeneralizedCycle:
    support: tuple
    element: Element
    tag: str
    lengths: tuple

    @property
    def size(self):
        return len(self.support)


@dataclass(frozen=True)
class GeneralizedCycleDecomposition:
    components: tuple

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)


def _restrict(g, support):
    perm = list(range(1, g.params.n + 1))
    colors = [0] * g.params.n
    for k in support:
        perm[k - 1] = g.perm[k - 1]
        colors[k - 1] = g.colors[k - 1]
    return Element(g.params, tuple(perm), tuple(colors))


def generalized_cycles(g):
    """Cycles of g, the two colored cycles of G(m,m,n) merged; fixed points skipped"""
    params = g.params
    _require_well_generated(params)
    if not is_parabolic_qc(g).is_pqc:
        raise NotParabolicQuasiCoxeterError(f"{g} is not parabolic quasi-Coxeter")
    cycles = colored_cycles(g)
    components = [
        GeneralizedCycle(c.support, _restrict(g, c.support), SYMMETRIC_CYCLE, (c.length,))
        for c in cycles.zero
        if c.length > 1
    ]
    nonzero = cycles.nonzero
    if len(nonzero) == 1:
        c = nonzero[0]
        components.append(GeneralizedCycle(c.support, _restrict(g, c.support), SINGLE_COLORED_CYCLE, (c.length,)))
    elif len(nonzero) == 2:
        support = tuple(sorted(nonzero[0].support + nonzero[1].support))
        lengths = (nonzero[0].length, nonzero[1].length)
        components.append(GeneralizedCycle(support, _restrict(g, support), COLORED_PAIR, lengths))
    components.sort(key=lambda comp: min(comp.support))
    return GeneralizedCycleDecomposition(tuple(components))


def component_length(component):
    if component.tag == SYMMETRIC_CYCLE:
        return component.size - 1
    return component.size


def component_fred(component, m):
    size = component.size
    if component.tag == SYMMETRIC_CYCLE:
        return size ** (size - 2) if size > 1 else 1
    if component.tag == SINGLE_COLORED_CYCLE:
        return size**size
    a, b = component.lengths
    return m * (size - 1) * int(sympy.binomial(size - 2, a - 1)) * a**a * b**b


# -------------------------------
# Closed forms for Fred
# -------------------------------
def fred_formula_qc(g):
    params = g.params
    _require_well_generated(params)
    if not is_parabolic_qc(g).is_qc:
        raise NotParabolicQuasiCoxeterError(f"{g} is not quasi-Coxeter")
    components = generalized_cycles(g).components
    if not components:
        return 1
    return component_fred(components[0], params.m)


def fred_formula_pqc(g):
    """Multinomial over the component lengths times the component Fred values"""
    components = generalized_cycles(g).components
    lengths = [component_length(c) for c in components]
    total = math.factorial(sum(lengths))
    for length in lengths:
        total //= math.factorial(length)
    for component in components:
        total *= component_fred(component, g.params.m)
    return total


# -------------------------------
# Minimum full factorizations
# -------------------------------
def _length_bound(x):
    if x.params.well_generated or x.params.m == 1:
        return refl_length(x)
    return codim_fixed(x)


def enumerate_full_min(g, depth_cap=DEFAULT_DEPTH_CAP, cap=DEFAULT_ORBIT_CAP, closure_cap=DEFAULT_CLOSURE_CAP):
    """Reflection factorizations of g of length full_refl_length(g) that generate the group"""
    params = g.params
    if group_order(params) > closure_cap:
        raise CapExceededError(f"order of {params}", closure_cap)
    length = full_refl_length(g)
    if length > depth_cap:
        raise CapExceededError("full reflection length", depth_cap)
    reflections = all_reflections(params)
    found = []
    nodes = 0

    def extend(prefix, remaining, left):
        nonlocal nodes
        nodes += 1
        if not left:
            if remaining.is_identity and generates_group((t.element for t in prefix), params, closure_cap):
                found.append(FactorTuple(params, tuple(prefix)))
                if len(found) > cap:
                    raise CapExceededError("full factorizations", cap)
            return
        for t in reflections:
            rest = multiply(inverse(t.element), remaining)
            if _length_bound(rest) <= left - 1:
                prefix.append(t)
                extend(prefix, rest, left - 1)
                prefix.pop()

    extend([], g, length)
    logger.debug("%s: %d full factorizations of length %d (%d nodes)", g, len(found), length, nodes)
    return found


@lru_cache(maxsize=1024)
def count_full_min(g, depth_cap=DEFAULT_DEPTH_CAP, cap=DEFAULT_ORBIT_CAP, closure_cap=DEFAULT_CLOSURE_CAP):
    return len(enumerate_full_min(g, depth_cap, cap, closure_cap))


def hurwitz_number(parts):
    """Genus-0 Hurwitz number n^(k-3) (n+k-2)! prod l^l/(l-1)!"""
    parts = tuple(parts)
    if not parts or any(part < 1 for part in parts):
        raise QcoxError(f"{parts} is not a partition")
    n, k = sum(parts), len(parts)
    value = Rational(n) ** (k - 3) * math.factorial(n + k - 2)
    for part in parts:
        value *= Rational(part**part, math.factorial(part - 1))
    if not value.is_integer:
        raise MismatchError(f"Hurwitz number of {parts} came out fractional: {value}")
    return int(value)


def full_count_formula(g):
    """Number of minimum full factorizations when the cycle colors and p are coprime"""
    params = g.params
    m, p, n = params.m, params.p, params.n
    if group_order(params) == 1:
        return 1
    cycles = colored_cycles(g)
    if math.gcd(p, *(c.color for c in cycles)) != 1:
        raise UnsupportedGroupError(f"no closed form for {g}: cycle colors share a factor with p = {p}")
    k = len(cycles)
    base = hurwitz_number(sorted((c.length for c in cycles), reverse=True))
    if m == p:
        value = Rational(m) ** (k - 1) * base
    else:
        a = math.gcd(weight(g), m) // p
        if a == 1:
            value = n * (n + k - 1) * Rational(m) ** (k - 1) * base
        else:
            value = n**2 * (n + k) * (n + k - 1) * Rational(m) ** k / 2 * sympy.totient(a) / (p * a) * base
    if not value.is_integer:
        raise MismatchError(f"full count for {g} came out fractional: {value}")
    return int(value)


# -------------------------------
# Exponents and regular elements
# -------------------------------
@dataclass(frozen=True)
class ExponentVector:
    order: int
    exponents: tuple


def exponents(g):
    """Eigenvalues of g on the reflection representation as multiples of 1/|g|, sorted

    For m = 1 the all-ones vector spans a trivial summand of the monomial
    representation; its zero is left out so S_n acts in rank n - 1.
    """
    m = g.params.m
    order = element_order(g)
    values = []
    for cycle in colored_cycles(g):
        for t in range(cycle.length):
            rotation = (Rational(cycle.color, m) + t) / cycle.length
            values.append(int(rotation * order))
    values.sort()
    if m == 1:
        values.remove(0)
    return ExponentVector(order, tuple(values))


@dataclass(frozen=True)
class RegularFredCheck:
    fred: int
    base: Rational
    delta: Rational


def regular_fred_check_dn(n, max_rank=16):
    """Two n-cycles of color 1 in G(2,2,2n) against |g|^N N! / prod(e_j + 1)"""
    rank_ = 2 * n
    if rank_ > max_rank:
        raise CapExceededError("rank of the regular element check", max_rank)
    params = GroupParams(2, 2, rank_)
    perm = tuple(list(range(2, n + 1)) + [1] + list(range(n + 2, rank_ + 1)) + [n + 1])
    colors = (1,) + (0,) * (n - 1) + (1,) + (0,) * (n - 1)
    g = Element(params, perm, colors)
    fred = fred_formula_qc(g)
    vector = exponents(g)
    base = Rational(vector.order) ** rank_ * math.factorial(rank_)
    for e in vector.exponents:
        base /= e + 1
    return RegularFredCheck(fred=fred, base=base, delta=fred / base)


# -------------------------------
# Cayley cacti
# -------------------------------
def _check_composition(mvec):
    mvec = tuple(mvec)
    if not mvec or any(not isinstance(x, int) or x < 0 for x in mvec) or not sum(mvec):
        raise QcoxError(f"malformed composition {mvec}")
    return mvec


def cycle_type_of(mvec):
    """(1^m_1, 2^m_2, ...) sorted decreasingly"""
    mvec = _check_composition(mvec)
    return tuple(sorted((i for i, count in enumerate(mvec, start=1) for _ in range(count)), reverse=True))


def dps_formula(mvec):
    mvec = _check_composition(mvec)
    k = sum(mvec)
    n = sum(i * count for i, count in enumerate(mvec, start=1))
    multinomial = Rational(math.factorial(k), math.prod(math.factorial(c) for c in mvec))
    return multinomial * Rational(n) ** (k - 2) / k


def dps_cacti_count(mvec):
    """Number of Cayley cacti of the given type

    One polygon, or two joined by the single edge, form exactly one cactus
    since rotating a polygon moves the edge to any corner. The closed form
    undercounts those by their symmetry and is integral from three polygons on.
    """
    mvec = _check_composition(mvec)
    if sum(mvec) <= 2:
        return 1
    value = dps_formula(mvec)
    if not value.is_integer:
        raise MismatchError(f"cactus count for {mvec} came out fractional: {value}")
    return int(value)


def dps_identity(mvec):
    """multinomial(k; m) * RT(lambda) == k * prod(lambda) * DPS(m)"""
    mvec = _check_composition(mvec)
    parts = cycle_type_of(mvec)
    k = len(parts)
    multinomial = Rational(math.factorial(k), math.prod(math.factorial(c) for c in mvec))
    relative_trees = weighted_cayley(parts)
    return multinomial * relative_trees == k * math.prod(parts) * dps_formula(mvec)
