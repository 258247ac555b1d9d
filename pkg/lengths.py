"""Reflection length, full reflection length and the absolute order.

refl_length follows the cycle-color formulas for G(m,1,n) (n minus the
number of color-0 cycles) and G(m,m,n) (n + #cycles - 2 v_m).  The full
length formula covers every G(m,p,n) with n >= 2; for n = 1 the group is
cyclic and handled directly.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from errors import CapExceededError, ParamsMismatchError, UnsupportedGroupError
from wreath_core import (
    all_reflections,
    colored_cycles,
    group_order,
    inverse,
    multiply,
    weight,
)

logger = logging.getLogger(__name__)

MAX_NONZERO_CYCLES = 16


@dataclass(frozen=True)
class LengthReport:
    refl_length: Optional[int]
    full_length: int
    codim_fixed: int
    v_m: Optional[int] = None


def refl_length(g):
    params = g.params
    cycles = colored_cycles(g)
    if params.m == 1:
        return params.n - len(cycles)
    if params.p == 1:
        return params.n - len(cycles.zero)
    if params.p == params.m:
        return params.n + len(cycles) - 2 * v_m(g)
    raise UnsupportedGroupError(f"reflection length is not implemented for intermediate p in {params}")


def v_m(g):
    """Most parts in a partition of the cycles into blocks of total color 0"""
    params = g.params
    if params.p != params.m:
        raise UnsupportedGroupError(f"v_m is defined for G(m,m,n), not {params}")
    cycles = colored_cycles(g)
    nonzero = tuple(sorted(c.color for c in cycles.nonzero))
    if len(nonzero) > MAX_NONZERO_CYCLES:
        raise CapExceededError("nonzero-color cycles for v_m", MAX_NONZERO_CYCLES)
    blocks = _zero_sum_blocks(nonzero, params.m)
    return len(cycles.zero) + (blocks or 0)


@lru_cache(maxsize=None)
def _zero_sum_blocks(colors, m):
    # None when the multiset cannot be split into zero-sum blocks at all
    if not colors:
        return 0
    first, rest = colors[0], colors[1:]
    best = None
    tried = set()
    for size in range(len(rest) + 1):
        for picked in itertools.combinations(range(len(rest)), size):
            if (first + sum(rest[i] for i in picked)) % m:
                continue
            remaining = tuple(c for i, c in enumerate(rest) if i not in picked)
            if remaining in tried:
                continue
            tried.add(remaining)
            sub = _zero_sum_blocks(remaining, m)
            if sub is not None and (best is None or sub + 1 > best):
                best = sub + 1
    return best


def full_refl_length(g):
    """Minimum length of a reflection factorization of g generating the whole group"""
    params = g.params
    m, p, n = params.m, params.p, params.n
    if group_order(params) == 1:
        return 0
    if n == 1:
        return _cyclic_full_length(g)
    cycles = colored_cycles(g)
    k = len(cycles)
    d = math.gcd(p, *(c.color for c in cycles))
    if m == p:
        return n + k - 2 if d == 1 else n + k
    weight_hits = math.gcd(weight(g), m) == p
    if d == 1:
        return n + k - 1 if weight_hits else n + k
    return n + k + 1 if weight_hits else n + k + 2


def _cyclic_full_length(g):
    # G(m,p,1) is cyclic of order m/p, generated by colors c with gcd(c, m) = p
    color = g.colors[0]
    if color and math.gcd(color, g.params.m) == g.params.p:
        return 1
    return 2


def codim_fixed(g):
    """n minus the number of color-0 cycles"""
    return g.params.n - len(colored_cycles(g).zero)


def absolute_leq(u, v):
    if u.params != v.params:
        raise ParamsMismatchError(f"cannot compare {u.params} with {v.params}")
    return refl_length(u) + refl_length(multiply(inverse(u), v)) == refl_length(v)


def is_left_descent(t, g, length=None):
    """True when the reflection t can start a reduced factorization of g"""
    if length is None:
        length = refl_length(g)
    return refl_length(multiply(inverse(t.element), g)) == length - 1


def reduced_factorization(g):
    """The first reduced factorization of g in canonical reflection order"""
    factors = []
    remaining = g
    length = refl_length(g)
    while length:
        for t in all_reflections(g.params):
            if is_left_descent(t, remaining, length):
                factors.append(t)
                remaining = multiply(inverse(t.element), remaining)
                length -= 1
                break
    return tuple(factors)


def length_report(g):
    params = g.params
    supported = params.well_generated or params.m == 1
    return LengthReport(
        refl_length=refl_length(g) if supported else None,
        full_length=full_refl_length(g),
        codim_fixed=codim_fixed(g),
        v_m=v_m(g) if params.p == params.m else None,
    )
