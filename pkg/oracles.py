"""Brute-force oracles.

Nothing here uses the closed forms it is compared against: distances come
from a BFS of the reflection Cayley graph, products from multiplying
monomial matrices over Z[z]/(z^m - 1), fixed spaces from a rank over a
finite field holding the m-th roots of unity, tree sums from Pruefer
sequences, and cactus counts from canonical forms under polygon
relabeling and rotation.
"""
import itertools
import logging
import math
from collections import Counter, deque
from functools import lru_cache

import sympy
from sympy import FiniteField, Rational, nextprime, primitive_root
from sympy.polys.domainmatrix import DomainMatrix

from errors import CapExceededError
from pqc_rgs import generates_group
from settings import DEFAULT_CLOSURE_CAP
from wreath_core import (
    Element,
    GroupParams,
    all_reflections,
    element_from_cycles,
    group_order,
    identity,
    inverse,
    multiply,
)

logger = logging.getLogger(__name__)

Z = sympy.Symbol("z")


@lru_cache(maxsize=32)
def cayley_distances(params, cap=DEFAULT_CLOSURE_CAP):
    """Word length in the reflections for every element, by BFS from the identity"""
    if group_order(params) > cap:
        raise CapExceededError(f"order of {params}", cap)
    steps = [t.element for t in all_reflections(params)]
    start = identity(params)
    distances = {start: 0}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for s in steps:
            y = multiply(s, x)
            if y not in distances:
                distances[y] = distances[x] + 1
                queue.append(y)
    logger.debug("Cayley graph of %s: %d elements, diameter %d", params, len(distances), max(distances.values()))
    return distances


def brute_full_length(g, cap=DEFAULT_CLOSURE_CAP):
    """Shortest reflection factorization of g generating the group, by search"""
    params = g.params
    distances = cayley_distances(params, cap)
    reflections = all_reflections(params)
    ceiling = 2 * params.n + 2

    def exists(prefix, remaining, left):
        if not left:
            return remaining.is_identity and generates_group(prefix, params, cap)
        for t in reflections:
            rest = multiply(inverse(t.element), remaining)
            if distances[rest] <= left - 1 and exists(prefix + (t.element,), rest, left - 1):
                return True
        return False

    for length in range(distances[g], ceiling + 1):
        if exists((), g, length):
            return length
    raise CapExceededError("full length search", ceiling)


def brute_transitive_count(parts):
    """Minimum-length transitive transposition factorizations of a permutation of cycle type parts"""
    parts = tuple(sorted(parts, reverse=True))
    n, k = sum(parts), len(parts)
    params = GroupParams(1, 1, n)
    cycles, start = [], 1
    for part in parts:
        cycles.append((range(start, start + part), 0))
        start += part
    g = element_from_cycles(params, cycles)
    distances = cayley_distances(params)
    transpositions = all_reflections(params)

    @lru_cache(maxsize=None)
    def count(remaining, blocks, left):
        if not left:
            return int(remaining.is_identity and len(blocks) == 1)
        total = 0
        for t in transpositions:
            rest = multiply(inverse(t.element), remaining)
            if distances[rest] > left - 1:
                continue
            total += count(rest, _merge(blocks, t.i, t.j), left - 1)
        return total

    singletons = tuple(frozenset((v,)) for v in range(1, n + 1))
    return count(g, singletons, n + k - 2)


def _merge(blocks, i, j):
    first = next(b for b in blocks if i in b)
    if j in first:
        return blocks
    second = next(b for b in blocks if j in b)
    merged = [b for b in blocks if b is not first and b is not second] + [first | second]
    return tuple(sorted(merged, key=min))


# -------------------------------
# Matrix models
# -------------------------------
def _poly_matrix(x):
    n, m = x.params.n, x.params.m
    matrix = sympy.zeros(n, n)
    for k in range(n):
        matrix[x.perm[k] - 1, k] = Z ** x.colors[k]
    return matrix, m


def matrix_product_oracle(x, y):
    """x * y computed from the monomial matrices with entries in Z[z]/(z^m - 1)"""
    mx, m = _poly_matrix(x)
    my, _ = _poly_matrix(y)
    product = mx * my
    n = x.params.n
    perm, colors = [0] * n, [0] * n
    for k in range(n):
        for row in range(n):
            entry = sympy.rem(sympy.expand(product[row, k]), Z**m - 1, Z)
            if entry != 0:
                perm[k] = row + 1
                colors[k] = int(sympy.degree(entry, Z))
    return Element(x.params, tuple(perm), tuple(colors))


@lru_cache(maxsize=None)
def _root_of_unity_field(m):
    """A prime q = 1 mod m and an element of order exactly m in GF(q)"""
    q = nextprime(max(m, 1000))
    while (q - 1) % m:
        q = nextprime(q)
    zeta = pow(primitive_root(q), (q - 1) // m, q)
    return q, zeta


def eigen_fixed_dim(g):
    """dim of the fixed space: n - rank(M - I) over GF(q)"""
    n, m = g.params.n, g.params.m
    q, zeta = _root_of_unity_field(m)
    field = FiniteField(q)
    rows = [[0] * n for _ in range(n)]
    for k in range(n):
        rows[g.perm[k] - 1][k] = pow(zeta, g.colors[k], q)
    for k in range(n):
        rows[k][k] -= 1
    matrix = DomainMatrix.from_list([[v % q for v in row] for row in rows], field)
    return n - matrix.rank()


# -------------------------------
# Trees
# -------------------------------
def prufer_trees(k):
    """Edge lists of every labeled tree on {0, ..., k}"""
    vertices = k + 1
    if vertices == 1:
        yield ()
        return
    for sequence in itertools.product(range(vertices), repeat=vertices - 2):
        degree = [1] * vertices
        for v in sequence:
            degree[v] += 1
        edges = []
        for v in sequence:
            leaf = min(u for u in range(vertices) if degree[u] == 1)
            edges.append((leaf, v))
            degree[leaf] -= 1
            degree[v] -= 1
        u, w = (x for x in range(vertices) if degree[x] == 1)
        edges.append((u, w))
        yield tuple(edges)


def _degrees(edges, vertices):
    degree = [0] * vertices
    for u, w in edges:
        degree[u] += 1
        degree[w] += 1
    return degree


@lru_cache(maxsize=None)
def _degree_sequences(k):
    return Counter(tuple(_degrees(edges, k + 1)) for edges in prufer_trees(k))


def brute_weighted_cayley(xs):
    """Sum over trees on {0..k} of prod x_i^deg(i)"""
    xs = list(xs)
    return sum(
        count * math.prod(x**d for x, d in zip(xs, degree))
        for degree, count in _degree_sequences(len(xs) - 1).items()
    )


def brute_dps(mvec):
    """(1/k) sum over polygon placements and vertex-labeled trees of prod lambda^(deg-1)

    Rational for one polygon or two equal ones, where cacti have symmetries.
    """
    parts = [i for i, count in enumerate(mvec, start=1) for _ in range(count)]
    k = len(parts)
    placements = set(itertools.permutations(parts))
    total = Rational(0)
    for edges in prufer_trees(k - 1):
        degree = _degrees(edges, k)
        for placement in placements:
            term = Rational(1)
            for size, d in zip(placement, degree):
                term *= Rational(size) ** (d - 1)
            total += term
    return total / k


def _cactus_symmetries(sizes):
    """Polygon relabelings preserving sizes, each paired with a rotation of every polygon"""
    k = len(sizes)
    relabelings = [s for s in itertools.permutations(range(k)) if all(sizes[s[v]] == sizes[v] for v in range(k))]
    rotations = list(itertools.product(*(range(size) for size in sizes)))
    return [(s, r) for s in relabelings for r in rotations]


def _canonical_cactus(edges, sizes, symmetries):
    forms = []
    for relabel, rotate in symmetries:
        image = []
        for label, ends in edges:
            moved = sorted((relabel[v], (corner + rotate[v]) % sizes[v]) for v, corner in ends)
            image.append((label, tuple(moved)))
        forms.append(tuple(sorted(image)))
    return min(forms)


def brute_cacti(mvec):
    """Count Cayley cacti of type mvec up to isomorphism

    A cactus is m_i oriented i-gons joined into a tree by k - 1 edges
    labeled 1..k-1, each edge ending on a corner of a polygon.
    """
    sizes = tuple(sorted((i for i, count in enumerate(mvec, start=1) for _ in range(count)), reverse=True))
    k = len(sizes)
    symmetries = _cactus_symmetries(sizes)
    seen = set()
    for tree in prufer_trees(k - 1):
        corner_choices = [itertools.product(range(sizes[u]), range(sizes[v])) for u, v in tree]
        for corners in itertools.product(*corner_choices):
            for labels in itertools.permutations(range(1, k)):
                edges = [
                    (label, ((u, cu), (v, cv)))
                    for label, (u, v), (cu, cv) in zip(labels, tree, corners)
                ]
                seen.add(_canonical_cactus(edges, sizes, symmetries))
    logger.debug("cacti of type %s: %d", tuple(mvec), len(seen))
    return len(seen)
