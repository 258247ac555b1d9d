"""Hurwitz braid action on tuples of reflections."""
import logging
from collections import Counter, deque
from dataclasses import dataclass

from errors import CapExceededError, MismatchError, QcoxError
from pqc_rgs import subgroup_closure
from settings import DEFAULT_CLOSURE_CAP, DEFAULT_DEPTH_CAP, DEFAULT_ORBIT_CAP
from wreath_core import GroupParams, conjugacy_key, conjugate, inverse, product, reflection_of

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class FactorTuple:
    """Reflections t_1, ..., t_k whose product is taken left to right"""
    params: GroupParams
    factors: tuple

    def __len__(self):
        return len(self.factors)

    def __str__(self):
        return "(" + ", ".join(str(t) for t in self.factors) + ")"

    @property
    def elements(self):
        return tuple(t.element for t in self.factors)

    @property
    def product(self):
        return product(self.elements, self.params)

    def to_json(self):
        return [str(t) for t in self.factors]


def braid_act(i, t, inverse_move=False):
    """sigma_i (or its inverse) on positions i, i+1 (1-based)

    sigma_i:    (a, b) -> (b, b^-1 a b)
    sigma_i^-1: (a, b) -> (a b a^-1, a)
    """
    if not 1 <= i < len(t):
        raise QcoxError(f"braid index {i} out of range for a tuple of length {len(t)}")
    a, b = t.factors[i - 1], t.factors[i]
    if inverse_move:
        moved = (reflection_of(conjugate(b.element, a.element)), a)
    else:
        moved = (b, reflection_of(conjugate(a.element, inverse(b.element))))
    return FactorTuple(t.params, t.factors[: i - 1] + moved + t.factors[i + 1:])


def _class_multiset(t):
    return Counter(conjugacy_key(x) for x in t.elements)


def hurwitz_orbit(t, cap=DEFAULT_ORBIT_CAP, check=False, closure_cap=DEFAULT_CLOSURE_CAP):
    """Orbit of t under every sigma_i^(+-1), sorted

    With check=True each new tuple is compared with t on its product, the
    classes of its factors and the order of the subgroup they generate.
    """
    if cap < 1:
        raise QcoxError("orbit cap must be positive")
    if check:
        target = t.product
        classes = _class_multiset(t)
        closure_orders = {}

        def closure_order(x):
            key = frozenset(x.elements)
            if key not in closure_orders:
                closure_orders[key] = subgroup_closure(key, x.params, closure_cap).order
            return closure_orders[key]

        subgroup_order = closure_order(t)

    seen = {t}
    queue = deque([t])
    while queue:
        current = queue.popleft()
        for i in range(1, len(current)):
            for inverse_move in (False, True):
                image = braid_act(i, current, inverse_move)
                if image in seen:
                    continue
                if check:
                    if image.product != target:
                        raise MismatchError(f"braid move changed the product: {image}")
                    if _class_multiset(image) != classes:
                        raise MismatchError(f"braid move changed the factor classes: {image}")
                    if closure_order(image) != subgroup_order:
                        raise MismatchError(f"braid move changed the generated subgroup: {image}")
                seen.add(image)
                if len(seen) > cap:
                    raise CapExceededError("Hurwitz orbit", cap)
                queue.append(image)
    logger.debug("Hurwitz orbit of %s has %d tuples", t, len(seen))
    return sorted(seen)


def is_hurwitz_transitive_on_reduced(g, cap=DEFAULT_ORBIT_CAP, depth_cap=DEFAULT_DEPTH_CAP):
    # factor_enum builds on FactorTuple, so it is imported here
    from factor_enum import enumerate_reduced

    reduced = enumerate_reduced(g, depth_cap=depth_cap, cap=cap)
    orbit = hurwitz_orbit(reduced[0], cap)
    logger.info("%s: %d reduced factorizations, orbit of the first has %d", g, len(reduced), len(orbit))
    return orbit == reduced
