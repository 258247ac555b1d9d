"""Root and coroot lattices of the Weyl groups A_n, B_n and D_n.

A_n acts on Z^(n+1) as G(1,1,n+1); B_n and D_n act on Z^n as G(2,1,n) and
G(2,2,n).  [(i j); k] has root e_i - (-1)^k e_j and is its own coroot; the
diagonal reflection of B_n has the short root e_i with coroot 2 e_i.
"""
import logging
import math
import re
from dataclasses import dataclass
from functools import lru_cache

import sympy
from sympy import Rational

from errors import MismatchError, ParamsMismatchError, ParseError, QcoxError
from factor_enum import component_fred, component_length, generalized_cycles
from lengths import full_refl_length, reduced_factorization
from pqc_rgs import count_rgs_formula, fixed_space, fixes_pointwise, is_parabolic_qc, subgroup_closure
from settings import DEFAULT_CLOSURE_CAP
from wreath_core import (
    GroupParams,
    all_reflections,
    element_from_cycles,
    group_order,
)

logger = logging.getLogger(__name__)

FAMILIES = ("A", "B", "D")
TYPE_PATTERN = re.compile(r"^\s*([ABD])\s*(\d+)\s*$")


@dataclass(frozen=True, order=True)
class WeylType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParseError(f"unknown Weyl family {self.family!r}")
        if self.rank < (2 if self.family == "D" else 1):
            raise ParseError(f"{self.family}{self.rank} has too small a rank")

    def __str__(self):
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, text):
        match = TYPE_PATTERN.match(text)
        if not match:
            raise ParseError(f"cannot parse Weyl type {text!r}; expected e.g. A3, B2, D4")
        return cls(match.group(1), int(match.group(2)))


def weyl_group_params(weyl_type):
    r = weyl_type.rank
    if weyl_type.family == "A":
        return GroupParams(1, 1, r + 1)
    if weyl_type.family == "B":
        return GroupParams(2, 1, r)
    return GroupParams(2, 2, r)


def weyl_group_order(weyl_type):
    return group_order(weyl_group_params(weyl_type))


def coxeter_number(weyl_type):
    r = weyl_type.rank
    return {"A": r + 1, "B": 2 * r, "D": 2 * r - 2}[weyl_type.family]


def coxeter_element(weyl_type):
    """A: the long cycle; B: the long cycle of color 1; D: cycles of lengths n-1 and 1, both of color 1"""
    params = weyl_group_params(weyl_type)
    n = params.n
    if weyl_type.family == "A":
        return element_from_cycles(params, [(range(1, n + 1), 0)])
    if weyl_type.family == "B":
        return element_from_cycles(params, [(range(1, n + 1), 1)])
    return element_from_cycles(params, [(range(1, n), 1), ((n,), 1)])


def integer_matrix(g):
    """Monomial matrix of g over Z, zeta = -1"""
    if g.params.m > 2:
        raise ParamsMismatchError(f"{g.params} has no integer form")
    n = g.params.n
    matrix = sympy.zeros(n, n)
    for k in range(n):
        matrix[g.perm[k] - 1, k] = (-1) ** g.colors[k]
    return matrix


# -------------------------------
# Roots
# -------------------------------
@dataclass(frozen=True)
class RootPair:
    root: tuple
    coroot: tuple

    @property
    def pairing(self):
        return _dot(self.root, self.coroot)

    def reflect(self, v):
        """v - <v, coroot> root"""
        c = _dot(v, self.coroot)
        return tuple(x - c * r for x, r in zip(v, self.root))


@dataclass(frozen=True)
class CartanReport:
    pairing_matrix: tuple
    determinant: int


def _dot(x, y):
    return sum(a * b for a, b in zip(x, y))


def _unit(n, i, scale=1):
    return tuple(scale if k == i else 0 for k in range(1, n + 1))


def root_of(t, weyl_type):
    params = weyl_group_params(weyl_type)
    if t.params != params:
        raise ParamsMismatchError(f"{t} is not a reflection of {weyl_type} = {params}")
    n = params.n
    if t.is_diagonal:
        return RootPair(_unit(n, t.i), _unit(n, t.i, 2))
    sign = -1 if t.color == 0 else 1
    root = tuple(1 if k == t.i else sign if k == t.j else 0 for k in range(1, n + 1))
    return RootPair(root, root)


def cartan_report(reflections, weyl_type):
    reflections = list(reflections)
    if len(reflections) != weyl_type.rank:
        raise QcoxError(f"{weyl_type} needs {weyl_type.rank} reflections, got {len(reflections)}")
    pairs = [root_of(t, weyl_type) for t in reflections]
    matrix = sympy.Matrix([[_dot(a.root, b.coroot) for b in pairs] for a in pairs])
    return CartanReport(
        pairing_matrix=tuple(tuple(int(x) for x in matrix.row(i)) for i in range(matrix.rows)),
        determinant=int(matrix.det(method="bareiss")),
    )


def pairing_det(reflections, weyl_type):
    return cartan_report(reflections, weyl_type).determinant


def connection_index(*weyl_types):
    """A_n: n+1, B_n: 2, D_n: 4; multiplicative over products"""
    index = 1
    for weyl_type in weyl_types:
        index *= {"A": weyl_type.rank + 1, "B": 2, "D": 4}[weyl_type.family]
    return index


def pdet_abs(g):
    """|product of the nonzero eigenvalues of g - I|"""
    matrix = integer_matrix(g) - sympy.eye(g.params.n)
    coefficients = matrix.charpoly().all_coeffs()
    lowest = next(c for c in reversed(coefficients) if c != 0)
    return abs(int(lowest))


# -------------------------------
# Lattices
# -------------------------------
def hermite_basis(vectors):
    """Row Hermite normal form: a canonical Z-basis of the lattice spanned by vectors"""
    rows = [list(v) for v in vectors]
    width = len(rows[0]) if rows else 0
    basis = []
    pivots = []
    for col in range(width):
        active = [r for r in rows if r[col]]
        rows = [r for r in rows if not r[col]]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            pivot = active[0]
            rest = []
            for r in active[1:]:
                q = r[col] // pivot[col]
                r = [x - q * y for x, y in zip(r, pivot)]
                (rest if r[col] else rows).append(r)
            active = [pivot] + rest
        if active:
            pivot = active[0]
            if pivot[col] < 0:
                pivot = [-x for x in pivot]
            basis.append(pivot)
            pivots.append(col)
    for i, col in enumerate(pivots):
        for j in range(i):
            q = basis[j][col] // basis[i][col]
            if q:
                basis[j] = [x - q * y for x, y in zip(basis[j], basis[i])]
    return tuple(tuple(r) for r in basis)


def _lattice_bases(reflections, weyl_type):
    pairs = [root_of(t, weyl_type) for t in reflections]
    return hermite_basis([p.root for p in pairs]), hermite_basis([p.coroot for p in pairs])


def subgroup_reflections(reflections, weyl_type, cap=DEFAULT_CLOSURE_CAP):
    """Every reflection of the subgroup generated by the given reflections"""
    params = weyl_group_params(weyl_type)
    closure = subgroup_closure([t.element for t in reflections], params, cap)
    return tuple(t for t in all_reflections(params) if t.element in closure)


def lattice_index(reflections, weyl_type, cap=DEFAULT_CLOSURE_CAP, closed=False):
    """Connection index of the reflection subgroup generated by reflections

    |det| of the pairing between Z-bases of its root and coroot lattices.
    With closed=True the reflections are taken to be all of the subgroup's.
    """
    reflections = tuple(reflections)
    if not reflections:
        return 1
    if not closed:
        reflections = subgroup_reflections(reflections, weyl_type, cap)
    roots, coroots = _lattice_bases(reflections, weyl_type)
    if len(roots) != len(coroots):
        raise MismatchError(f"root rank {len(roots)} and coroot rank {len(coroots)} differ")
    matrix = sympy.Matrix([[_dot(a, b) for b in coroots] for a in roots])
    return abs(int(matrix.det(method="bareiss")))


def parabolic_reflections(g, weyl_type):
    """Reflections of W_g: those fixing the fixed space of g pointwise"""
    basis = fixed_space(g)
    return tuple(t for t in all_reflections(weyl_group_params(weyl_type)) if fixes_pointwise(t.element, basis))


@dataclass(frozen=True)
class WeylCrosscheck:
    is_pqc: bool
    lattice_bases: bool
    pdet: int
    closure_index: int

    @property
    def pdet_matches(self):
        return self.pdet == self.closure_index

    @property
    def agree(self):
        return self.is_pqc == self.lattice_bases == self.pdet_matches


def weyl_pqc_crosscheck(g, weyl_type):
    """Cycle-color verdict against the lattice-basis and pseudo-determinant tests"""
    if g.params != weyl_group_params(weyl_type):
        raise ParamsMismatchError(f"{g} is not in {weyl_type}")
    factors = reduced_factorization(g)
    closure = parabolic_reflections(g, weyl_type)
    target = _lattice_bases(closure, weyl_type) if closure else ((), ())
    found = _lattice_bases(factors, weyl_type) if factors else ((), ())
    report = WeylCrosscheck(
        is_pqc=is_parabolic_qc(g).is_pqc,
        lattice_bases=found == target,
        pdet=pdet_abs(g),
        closure_index=lattice_index(closure, weyl_type, closed=True),
    )
    logger.debug("%s in %s: %s", g, weyl_type, report)
    return report


# -------------------------------
# Counting
# -------------------------------
def abc_degree(weyl_type):
    """h^n n! / |W|"""
    n = weyl_type.rank
    value = Rational(coxeter_number(weyl_type) ** n * math.factorial(n), weyl_group_order(weyl_type))
    if not value.is_integer:
        raise MismatchError(f"Coxeter factorization count of {weyl_type} came out fractional: {value}")
    return int(value)


@lru_cache(maxsize=None)
def _ambient_index(weyl_type):
    return lattice_index(all_reflections(weyl_group_params(weyl_type)), weyl_type, closed=True)


def full_count_weyl(g, weyl_type):
    """Minimum full factorizations of a parabolic quasi-Coxeter element

    full length! * #RGS * I(W_g) / I(W) * prod Fred(g_i) / l_R(g_i)!
    """
    if g.params != weyl_group_params(weyl_type):
        raise ParamsMismatchError(f"{g} is not in {weyl_type}")
    value = Rational(math.factorial(full_refl_length(g)) * count_rgs_formula(g))
    value *= Rational(lattice_index(parabolic_reflections(g, weyl_type), weyl_type, closed=True), _ambient_index(weyl_type))
    for component in generalized_cycles(g):
        value *= Rational(component_fred(component, g.params.m), math.factorial(component_length(component)))
    if not value.is_integer:
        raise MismatchError(f"full count for {g} came out fractional: {value}")
    return int(value)

