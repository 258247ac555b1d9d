"""Exact algebra of the groups G(m,p,n).

An element is the pair [u; a] of a one-line permutation u of {1..n} and a
color vector a of residues mod m.  As a monomial matrix it sends e_k to
zeta^(a_k) e_(u(k)), which gives the product rule

    [u; a] . [v; b] = [uv; v(a) + b],   (uv)(i) = u(v(i)),  v(a)_i = a_(v(i)).

Everything here is an immutable value; all functions are pure.
"""
import itertools
import json
import logging
import math
import re
from dataclasses import dataclass
from functools import lru_cache

from errors import MembershipError, ParamsMismatchError, ParseError

logger = logging.getLogger(__name__)

TRANSPOSITION = 0
DIAGONAL = 1

ELEMENT_PATTERN = re.compile(
    r"^\s*G\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*:\s*\[([^;\]]*);([^\]]*)\]\s*$"
)


# -------------------------------
# Group parameters
# -------------------------------
@dataclass(frozen=True, order=True)
class GroupParams:
    m: int
    p: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.p < 1 or self.n < 1:
            raise MembershipError(f"{self}: m, p and n must be positive")
        if self.m % self.p:
            raise MembershipError(f"{self}: p must divide m")

    def __str__(self):
        return f"G({self.m},{self.p},{self.n})"

    @property
    def well_generated(self):
        return self.p == 1 or self.p == self.m

    @property
    def is_symmetric(self):
        return self.m == 1


def group_order(params):
    """m^n n! / p"""
    return params.m ** params.n * math.factorial(params.n) // params.p


def rank(params):
    """Size of a minimum reflection generating set"""
    if params.m == 1:
        return params.n - 1
    if params.p == params.m and params.n == 1:
        return 0
    return params.n


# -------------------------------
# Elements
# -------------------------------
@dataclass(frozen=True, order=True)
class Element:
    params: GroupParams
    perm: tuple
    colors: tuple

    def __post_init__(self):
        n, m, p = self.params.n, self.params.m, self.params.p
        if len(self.perm) != n or sorted(self.perm) != list(range(1, n + 1)):
            raise MembershipError(f"{self.perm} is not a permutation of 1..{n}")
        if len(self.colors) != n:
            raise MembershipError(f"expected {n} colors, got {len(self.colors)}")
        if any(not 0 <= c < m for c in self.colors):
            raise MembershipError(f"colors {self.colors} not reduced mod {m}")
        if sum(self.colors) % p:
            raise MembershipError(f"color sum {sum(self.colors)} is not 0 mod {p} in {self.params}")

    @classmethod
    def _trusted(cls, params, perm, colors):
        obj = object.__new__(cls)
        object.__setattr__(obj, "params", params)
        object.__setattr__(obj, "perm", perm)
        object.__setattr__(obj, "colors", colors)
        return obj

    def __mul__(self, other):
        return multiply(self, other)

    def __str__(self):
        return format_element(self)

    @property
    def is_identity(self):
        return self.perm == tuple(range(1, self.params.n + 1)) and not any(self.colors)


def identity(params):
    return Element._trusted(params, tuple(range(1, params.n + 1)), (0,) * params.n)


def _mul_raw(u, a, v, b, m):
    perm = tuple(u[k - 1] for k in v)
    colors = tuple((a[k - 1] + c) % m for k, c in zip(v, b))
    return perm, colors


def _inverse_raw(u, a, m):
    inv = [0] * len(u)
    for i, image in enumerate(u, start=1):
        inv[image - 1] = i
    colors = tuple((-a[k - 1]) % m for k in inv)
    return tuple(inv), colors


def multiply(x, y):
    """[u; a][v; b] = [uv; v(a) + b]"""
    if x.params != y.params:
        raise ParamsMismatchError(f"cannot multiply {x.params} by {y.params}")
    perm, colors = _mul_raw(x.perm, x.colors, y.perm, y.colors, x.params.m)
    return Element._trusted(x.params, perm, colors)


def inverse(x):
    perm, colors = _inverse_raw(x.perm, x.colors, x.params.m)
    return Element._trusted(x.params, perm, colors)


def product(elements, params):
    result = identity(params)
    for x in elements:
        result = multiply(result, x)
    return result


def conjugate(x, by):
    """by . x . by^-1, where `by` may come from G(m,1,n) around G(m,p,n)"""
    if (by.params.m, by.params.n) != (x.params.m, x.params.n):
        raise ParamsMismatchError(f"cannot conjugate {x.params} by {by.params}")
    m = x.params.m
    perm, colors = _mul_raw(by.perm, by.colors, x.perm, x.colors, m)
    inv_perm, inv_colors = _inverse_raw(by.perm, by.colors, m)
    perm, colors = _mul_raw(perm, colors, inv_perm, inv_colors, m)
    return Element._trusted(x.params, perm, colors)


def weight(x):
    """wt(x): total color mod m"""
    return sum(x.colors) % x.params.m


def all_elements(params):
    """Every element of G(m,p,n), ordered by perm then colors"""
    m, p, n = params.m, params.p, params.n
    color_vectors = [c for c in itertools.product(range(m), repeat=n) if sum(c) % p == 0]
    for perm in itertools.permutations(range(1, n + 1)):
        for colors in color_vectors:
            yield Element._trusted(params, perm, colors)


def element_from_cycles(params, cycles):
    """Build an element from (cycle, color) pairs; unlisted points are fixed

    The color of each cycle is carried by its first entry.
    """
    n, m = params.n, params.m
    perm = list(range(1, n + 1))
    colors = [0] * n
    seen = set()
    for cycle, color in cycles:
        cycle = list(cycle)
        if seen.intersection(cycle) or len(set(cycle)) != len(cycle):
            raise MembershipError(f"cycles overlap at {sorted(seen.intersection(cycle))}")
        seen.update(cycle)
        for pos, i in enumerate(cycle):
            perm[i - 1] = cycle[(pos + 1) % len(cycle)]
        colors[cycle[0] - 1] = color % m
    return Element(params, tuple(perm), tuple(colors))


def element_order(x):
    m = x.params.m
    order = 1
    for cycle in colored_cycles(x):
        order = math.lcm(order, cycle.length * (m // math.gcd(cycle.color, m)))
    return order


# -------------------------------
# Cycle structure
# -------------------------------
@dataclass(frozen=True)
class Cycle:
    support: tuple
    length: int
    color: int


@dataclass(frozen=True)
class ColoredCycles:
    cycles: tuple

    def __iter__(self):
        return iter(self.cycles)

    def __len__(self):
        return len(self.cycles)

    @property
    def zero(self):
        return tuple(c for c in self.cycles if c.color == 0)

    @property
    def nonzero(self):
        return tuple(c for c in self.cycles if c.color != 0)


def colored_cycles(x):
    """Orbits of the permutation with their summed colors, ordered by first point"""
    m = x.params.m
    seen = set()
    cycles = []
    for start in range(1, x.params.n + 1):
        if start in seen:
            continue
        support = []
        color = 0
        i = start
        while i not in seen:
            seen.add(i)
            support.append(i)
            color += x.colors[i - 1]
            i = x.perm[i - 1]
        cycles.append(Cycle(tuple(support), len(support), color % m))
    return ColoredCycles(tuple(cycles))


def conjugacy_key(x):
    """Sorted (length, color) multiset; constant on G(m,1,n)-classes"""
    return tuple(sorted((c.length, c.color) for c in colored_cycles(x)))


# -------------------------------
# Reflections
# -------------------------------
@dataclass(frozen=True, order=True)
class Reflection:
    kind: int
    i: int
    j: int
    color: int
    params: GroupParams

    @property
    def is_diagonal(self):
        return self.kind == DIAGONAL

    @property
    def element(self):
        return _reflection_element(self)

    def __str__(self):
        if self.is_diagonal:
            return f"[id;{self.color}e{self.i}]"
        return f"[({self.i} {self.j});{self.color}]"


def transposition(params, i, j, color=0):
    """[(i j); color], normalized so that i < j"""
    if i > j:
        i, j, color = j, i, -color
    return Reflection(TRANSPOSITION, i, j, color % params.m, params)


def diagonal(params, i, color):
    color %= params.m
    if not color or color % params.p:
        raise MembershipError(f"no diagonal reflection of color {color} in {params}")
    return Reflection(DIAGONAL, i, i, color, params)


@lru_cache(maxsize=None)
def _reflection_element(r):
    params = r.params
    perm = list(range(1, params.n + 1))
    colors = [0] * params.n
    if r.is_diagonal:
        colors[r.i - 1] = r.color
    else:
        perm[r.i - 1], perm[r.j - 1] = r.j, r.i
        colors[r.i - 1] = r.color
        colors[r.j - 1] = (-r.color) % params.m
    return Element._trusted(params, tuple(perm), tuple(colors))


@lru_cache(maxsize=None)
def all_reflections(params):
    """Transposition-like by (i, j, k), then diagonal by (i, k)"""
    m, p, n = params.m, params.p, params.n
    refls = [
        Reflection(TRANSPOSITION, i, j, k, params)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        for k in range(m)
    ]
    refls += [
        Reflection(DIAGONAL, i, i, c, params)
        for i in range(1, n + 1)
        for c in range(p, m, p)
    ]
    return tuple(refls)


@lru_cache(maxsize=None)
def _reflection_index(params):
    return {r.element: r for r in all_reflections(params)}


def reflection_of(x):
    """The Reflection equal to x, or None when x is not a reflection"""
    return _reflection_index(x.params).get(x)


# -------------------------------
# Text and JSON forms
# -------------------------------
def parse_element(text):
    match = ELEMENT_PATTERN.match(text)
    if not match:
        raise ParseError(f"cannot parse element {text!r}; expected G(m,p,n):[u1 ... un;a1,...,an]")
    m, p, n = (int(g) for g in match.group(1, 2, 3))
    try:
        perm = tuple(int(tok) for tok in match.group(4).split())
        colors = tuple(int(tok) for tok in match.group(5).split(","))
    except ValueError as e:
        raise ParseError(f"non-integer entry in {text!r}") from e
    params = GroupParams(m, p, n)
    if any(not 0 <= c < m for c in colors):
        raise ParseError(f"colors {colors} must lie in 0..{m - 1}")
    return Element(params, perm, colors)


def format_element(x):
    params = x.params
    perm = " ".join(str(u) for u in x.perm)
    colors = ",".join(str(a) for a in x.colors)
    return f"G({params.m},{params.p},{params.n}):[{perm};{colors}]"


def element_to_json(x):
    return {
        "m": x.params.m,
        "p": x.params.p,
        "n": x.params.n,
        "perm": list(x.perm),
        "colors": list(x.colors),
    }


def element_from_json(data):
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid element JSON: {e}") from e
    try:
        params = GroupParams(int(data["m"]), int(data["p"]), int(data["n"]))
        return Element(params, tuple(data["perm"]), tuple(data["colors"]))
    except (KeyError, TypeError) as e:
        raise ParseError(f"element JSON needs m, p, n, perm and colors: {e}") from e
