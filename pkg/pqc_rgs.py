"""Parabolic quasi-Coxeter elements and relative generating sets.

Covers the cycle-color classification, the parabolic closure W_g and its
fixed space, the subgroup closure oracle, relative generating sets (by
brute force and by the relative-graph criterion), their closed-form counts,
and the four-way characterization check.
"""
import itertools
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache, partial
from typing import Optional

import sympy
from sympy import Rational

from errors import (
    CapExceededError,
    MismatchError,
    NotParabolicQuasiCoxeterError,
    UnsupportedGroupError,
)
from graphset import (
    ROOTED_TREE,
    TREE,
    UNICYCLE,
    SetPartition,
    classify_relative,
    graph_of,
)
from lengths import absolute_leq, codim_fixed, full_refl_length, reduced_factorization, refl_length
from settings import DEFAULT_CLOSURE_CAP
from wreath_core import (
    Element,
    GroupParams,
    all_elements,
    all_reflections,
    colored_cycles,
    conjugate,
    group_order,
    identity,
    inverse,
    multiply,
    product,
    rank,
    reflection_of,
)
from workers import parallel_map

logger = logging.getLogger(__name__)

BRUTE = "brute"
GRAPH = "graph"
BOTH = "both"
ROUTES = (BRUTE, GRAPH, BOTH)


def _require_well_generated(params):
    if not (params.well_generated or params.m == 1):
        raise UnsupportedGroupError(f"{params} is not well generated (1 < p < m)")


# -------------------------------
# Subgroup closure
# -------------------------------
@dataclass(frozen=True)
class Closure:
    elements: frozenset

    @property
    def order(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self.elements


def subgroup_closure(generators, params, cap=DEFAULT_CLOSURE_CAP):
    """BFS closure of the identity under left multiplication by S and S^-1"""
    generators = list(generators)
    steps = set(generators) | {inverse(x) for x in generators}
    start = identity(params)
    seen = {start}
    frontier = [start]
    while frontier:
        layer = []
        for x in frontier:
            for s in steps:
                y = multiply(s, x)
                if y not in seen:
                    seen.add(y)
                    layer.append(y)
        if len(seen) > cap:
            raise CapExceededError("subgroup closure", cap)
        frontier = layer
    return Closure(frozenset(seen))


@lru_cache(maxsize=1 << 16)
def _closure_order(generators, params, cap):
    return subgroup_closure(generators, params, cap).order


def generates_group(elements, params, cap=DEFAULT_CLOSURE_CAP):
    if group_order(params) > cap:
        raise CapExceededError(f"order of {params}", cap)
    return _closure_order(frozenset(elements), params, cap) == group_order(params)


# -------------------------------
# Classification
# -------------------------------
@dataclass
class PqcVerdict:
    is_pqc: bool
    is_qc: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def agree(self):
        return all(flag == self.is_pqc for flag in self.witnesses.values())


def is_parabolic_qc(g):
    """Cycle-color route"""
    params = g.params
    _require_well_generated(params)
    m = params.m
    cycles = colored_cycles(g)
    nonzero = cycles.nonzero
    if m == 1:
        return PqcVerdict(is_pqc=True, is_qc=len(cycles) == 1)
    if params.p == 1:
        primitive = len(nonzero) == 1 and math.gcd(nonzero[0].color, m) == 1
        return PqcVerdict(is_pqc=not nonzero or primitive, is_qc=primitive and len(cycles) == 1)
    if rank(params) == 0:
        return PqcVerdict(is_pqc=True, is_qc=True)
    # two nonzero cycles in G(m,m,n) always carry opposite colors
    primitive = len(nonzero) == 2 and math.gcd(nonzero[0].color, m) == 1
    return PqcVerdict(is_pqc=not nonzero or primitive, is_qc=primitive and len(cycles) == 2)


@dataclass(frozen=True)
class ParabolicType:
    family: Optional[str]
    lambda0: Optional[int]
    symmetric_parts: tuple
    partition: SetPartition
    rank: int
    order: int


def parabolic_closure_type(g):
    params = g.params
    _require_well_generated(params)
    m = params.m
    cycles = colored_cycles(g)
    zero, nonzero = cycles.zero, cycles.nonzero
    blocks = [c.support for c in zero]
    order = 1
    for c in zero:
        order *= math.factorial(c.length)
    lambda0 = family = None
    if nonzero:
        lambda0 = sum(c.length for c in nonzero)
        blocks.append(tuple(i for c in nonzero for i in c.support))
        if params.p == 1:
            family = f"G({m},1)"
            order *= m**lambda0 * math.factorial(lambda0)
        else:
            family = f"G({m},{m})"
            order *= m ** (lambda0 - 1) * math.factorial(lambda0)
    return ParabolicType(
        family=family,
        lambda0=lambda0,
        symmetric_parts=tuple(sorted((c.length for c in zero), reverse=True)),
        partition=SetPartition(tuple(blocks)),
        rank=codim_fixed(g),
        order=order,
    )


def fixed_space(g):
    """Basis of V^g: one twisted indicator per color-0 cycle

    A vector is a dict {k: s_k} standing for sum_k zeta^(s_k) e_k.
    """
    m = g.params.m
    basis = []
    for cycle in colored_cycles(g).zero:
        exponents = {}
        s = 0
        for k in cycle.support:
            exponents[k] = s
            s = (s + g.colors[k - 1]) % m
        basis.append(exponents)
    return basis


def fixes_pointwise(h, basis):
    m = h.params.m
    for vector in basis:
        for k, s in vector.items():
            target = h.perm[k - 1]
            if vector.get(target) != (s + h.colors[k - 1]) % m:
                return False
    return True


def is_parabolic_qc_definitional(g, cap=DEFAULT_CLOSURE_CAP):
    """One reduced factorization must be a good generating set of W_g"""
    _require_well_generated(g.params)
    if refl_length(g) != codim_fixed(g):
        return False
    factors = [t.element for t in reduced_factorization(g)]
    basis = fixed_space(g)
    if not all(fixes_pointwise(t, basis) for t in factors):
        return False
    target = parabolic_closure_type(g).order
    return subgroup_closure(factors, g.params, cap).order == target


def standard_form_conjugator(g):
    """Diagonal d in G(m,1,n) making every color-0 cycle of d g d^-1 colorless"""
    params = g.params
    shifts = [0] * params.n
    for cycle in colored_cycles(g).zero:
        s = 0
        for k in cycle.support:
            shifts[k - 1] = s
            s = (s - g.colors[k - 1]) % params.m
    return Element(GroupParams(params.m, 1, params.n), tuple(range(1, params.n + 1)), tuple(shifts))


# -------------------------------
# Relative generating sets
# -------------------------------
@dataclass(frozen=True, order=True)
class RGSet:
    reflections: tuple

    def __str__(self):
        return "{" + ", ".join(str(r) for r in self.reflections) + "}"


def _brute_member(subset, base, params, cap):
    return generates_group(base + tuple(r.element for r in subset), params, cap)


def _tree_member(subset, partition, params):
    return classify_relative(graph_of(subset, params), partition).tag == TREE


def _rooted_member(subset, partition, params):
    shape = classify_relative(graph_of(subset, params), partition)
    return shape.tag == ROOTED_TREE and math.gcd(shape.loop_color, params.m) == 1


def _unicycle_member(subset, partition, params):
    shape = classify_relative(graph_of(subset, params), partition)
    return shape.tag == UNICYCLE and math.gcd(shape.delta, params.m) == 1


def _rgs_size(g):
    return rank(g.params) - refl_length(g)


def _select(test, candidates, jobs):
    verdicts = parallel_map(test, candidates, jobs)
    return [subset for subset, ok in zip(candidates, verdicts) if ok]


def _rgs_brute(g, cap, jobs, factorization=None):
    params = g.params
    size = _rgs_size(g)
    if size < 0:
        return []
    base = tuple(t.element for t in (factorization or reduced_factorization(g)))
    candidates = list(itertools.combinations(all_reflections(params), size))
    logger.debug("brute RGS route: %d candidate subsets of size %d", len(candidates), size)
    chosen = _select(partial(_brute_member, base=base, params=params, cap=cap), candidates, jobs)
    return sorted(RGSet(tuple(sorted(s))) for s in chosen)


def _rgs_graph(g, jobs):
    params = g.params
    if not is_parabolic_qc(g).is_pqc:
        return []
    if rank(params) == 0:
        return [RGSet(())]
    size = _rgs_size(g)
    ptype = parabolic_closure_type(g)
    partition = ptype.partition
    candidates = list(itertools.combinations(all_reflections(params), size))
    if params.m == 1 or ptype.lambda0 is not None:
        test = partial(_tree_member, partition=partition, params=params)
    elif params.p == 1:
        test = partial(_rooted_member, partition=partition, params=params)
    else:
        # the unicycle color condition only holds for colorless cycles
        d = standard_form_conjugator(g)
        logger.info("graph RGS route: conjugating %s by %s", g, d)
        d_inverse = inverse(d)
        test = partial(_unicycle_member, partition=partition, params=params)
        chosen = _select(test, candidates, jobs)
        return sorted(
            RGSet(tuple(sorted(reflection_of(conjugate(r.element, d_inverse)) for r in s)))
            for s in chosen
        )
    return sorted(RGSet(tuple(s)) for s in _select(test, candidates, jobs))


def enumerate_rgs(g, route=BRUTE, cap=DEFAULT_CLOSURE_CAP, jobs=1, factorization=None):
    """All relative generating sets of g, sorted

    route "both" runs the two routes and raises MismatchError if they differ.
    The brute route completes factorization (a reduced factorization of g,
    the first one in canonical order by default).
    """
    _require_well_generated(g.params)
    if route == BRUTE:
        return _rgs_brute(g, cap, jobs, factorization)
    if route == GRAPH:
        return _rgs_graph(g, jobs)
    if route == BOTH:
        brute = _rgs_brute(g, cap, jobs)
        graph = _rgs_graph(g, jobs)
        if brute != graph:
            raise MismatchError(f"RGS routes disagree for {g}: brute {len(brute)}, graph {len(graph)}")
        return brute
    raise ValueError(f"unknown route {route!r}; expected one of {', '.join(ROUTES)}")


def _elementary_symmetric(values):
    e = [1]
    for x in values:
        e = [1] + [e[j] + x * e[j - 1] for j in range(1, len(e))] + [x * e[-1]]
    return e


def count_rgs_formula(g):
    params = g.params
    if not is_parabolic_qc(g).is_pqc:
        raise NotParabolicQuasiCoxeterError(f"{g} is not parabolic quasi-Coxeter")
    if rank(params) == 0:
        return 1
    m, n = params.m, params.n
    ptype = parabolic_closure_type(g)
    parts = ptype.symmetric_parts
    k = len(parts)
    weight = math.prod(parts)
    if m == 1:
        value = Rational(n) ** (k - 2) * weight
    elif ptype.lambda0 is not None:
        value = Rational(m) ** k * Rational(n) ** (k - 1) * ptype.lambda0 * weight
    elif params.p == 1:
        value = sympy.totient(m) * Rational(m) ** (k - 1) * Rational(n) ** (k - 1) * weight
    else:
        e = _elementary_symmetric(parts)
        correction = sum(math.factorial(j - 2) * Rational(n) ** (k - j) * e[j] for j in range(2, k + 1))
        bracket = Rational(n) ** k - Rational(n) ** (k - 1) - correction
        value = sympy.totient(m) * Rational(m) ** (k - 1) / 2 * bracket * weight
    if not value.is_integer:
        raise MismatchError(f"RGS count for {g} came out fractional: {value}")
    return int(value)


def color_distribution(g, rgs_list=None, cap=DEFAULT_CLOSURE_CAP, jobs=1):
    """How often each primitive color labels the diagonal reflection of an RGS"""
    params = g.params
    if rgs_list is None:
        rgs_list = enumerate_rgs(g, BRUTE, cap, jobs)
    counts = {c: 0 for c in range(1, params.m) if math.gcd(c, params.m) == 1}
    for rgs in rgs_list:
        for r in rgs.reflections:
            if r.is_diagonal and r.color in counts:
                counts[r.color] += 1
    return counts


def weighted_cayley(xs):
    """Sum over trees on {0..k} of prod x_i^deg(i): x_0...x_k (sum x_i)^(k-1)"""
    values = [sympy.sympify(x) for x in xs]
    return sympy.prod(values) * sympy.Add(*values) ** (len(values) - 2)


# -------------------------------
# Characterization
# -------------------------------
def _below_quasi_coxeter(g, rgs_list):
    if rgs_list:
        factors = reduced_factorization(g) + rgs_list[0].reflections
        w = product((t.element for t in factors), g.params)
        if is_parabolic_qc(w).is_qc and absolute_leq(g, w):
            return True
        logger.warning("constructed witness %s failed for %s; scanning the group", w, g)
    return any(is_parabolic_qc(w).is_qc and absolute_leq(g, w) for w in all_elements(g.params))


def characterization_check(g, cap=DEFAULT_CLOSURE_CAP, jobs=1):
    """Classification plus the four equivalent characterizations as witnesses"""
    verdict = is_parabolic_qc(g)
    rgs_list = enumerate_rgs(g, BRUTE, cap, jobs)
    verdict.witnesses = {
        "definitional": is_parabolic_qc_definitional(g, cap),
        "rgs_nonempty": bool(rgs_list),
        "below_quasi_coxeter": _below_quasi_coxeter(g, rgs_list),
        "full_length": full_refl_length(g) == 2 * rank(g.params) - refl_length(g),
    }
    return verdict
