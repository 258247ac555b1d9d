"""Acceptance sweeps: closed forms against enumeration and brute-force oracles."""
import itertools
import logging
import time
from dataclasses import dataclass, field

from sympy.utilities.iterables import partitions

from errors import MismatchError, QcoxError
from factor_enum import (
    count_full_min,
    count_reduced,
    dps_cacti_count,
    dps_formula,
    dps_identity,
    enumerate_reduced,
    fred_formula_pqc,
    fred_formula_qc,
    full_count_formula,
    hurwitz_number,
    regular_fred_check_dn,
)
from hurwitz import hurwitz_orbit
from lengths import full_refl_length, refl_length
from oracles import (
    brute_cacti,
    brute_dps,
    brute_full_length,
    brute_transitive_count,
    brute_weighted_cayley,
    cayley_distances,
)
from pqc_rgs import (
    BOTH,
    characterization_check,
    count_rgs_formula,
    enumerate_rgs,
    is_parabolic_qc,
    subgroup_closure,
    weighted_cayley,
)
from weyl_lattice import (
    WeylType,
    abc_degree,
    connection_index,
    coxeter_element,
    lattice_index,
    pairing_det,
    pdet_abs,
    weyl_group_params,
)
from workers import parallel_map
from wreath_core import GroupParams, all_elements, all_reflections, conjugacy_key, element_from_cycles, group_order

logger = logging.getLogger(__name__)

SUITES = ("core", "full")

CHARACTERIZATION_GROUPS = ((1, 1, 4), (2, 1, 3), (3, 1, 2), (2, 2, 3), (2, 2, 4), (3, 3, 3))
FULL_LENGTH_GROUPS = ((1, 1, 3), (1, 1, 4), (2, 1, 2), (2, 2, 2), (2, 2, 3), (3, 1, 2), (4, 2, 2))
FULL_COUNT_GROUPS = ((1, 1, 3), (1, 1, 4), (2, 1, 2), (3, 1, 2), (2, 2, 2), (2, 2, 3))
WEYL_GENSET_TYPES = ("A2", "A3", "B2", "B3", "D4")
WEYL_PDET_TYPES = ("B2", "B3", "A3")
WEYL_ABC_TYPES = ("A2", "A3", "A4", "B2", "B3", "D4")


@dataclass
class CriterionResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self):
        return {"name": self.name, "passed": self.passed, "details": self.details, "seconds": round(self.seconds, 3)}


@dataclass(frozen=True)
class SweepContext:
    suite: str
    max_order: int
    jobs: int

    def groups(self, triples):
        chosen = [GroupParams(*t) for t in triples]
        if self.suite == "core":
            chosen = [p for p in chosen if group_order(p) <= self.max_order]
        return chosen


def _mismatch_details(checked, failures):
    return {"checked": checked, "mismatches": len(failures), "examples": failures[:5]}


# -------------------------------
# Per-element checks (module level so workers can pickle them)
# -------------------------------
def _characterization_row(g):
    verdict = characterization_check(g)
    flags = list(verdict.witnesses.values())
    if all(flag == verdict.is_pqc for flag in flags):
        return None
    return {"element": str(g), "is_pqc": verdict.is_pqc, "witnesses": verdict.witnesses}


def _rgs_row(g):
    if not is_parabolic_qc(g).is_pqc:
        return None
    found = len(enumerate_rgs(g, BOTH))
    formula = count_rgs_formula(g)
    return None if found == formula else {"element": str(g), "enumerated": found, "formula": formula}


def _length_row(g):
    distance = cayley_distances(g.params)[g]
    length = refl_length(g)
    return None if distance == length else {"element": str(g), "bfs": distance, "formula": length}


def _full_length_row(g):
    brute = brute_full_length(g)
    formula = full_refl_length(g)
    return None if brute == formula else {"element": str(g), "search": brute, "formula": formula}


def _transitivity_row(g):
    if not is_parabolic_qc(g).is_pqc:
        return None
    reduced = enumerate_reduced(g)
    try:
        orbit = hurwitz_orbit(reduced[0], check=True)
    except MismatchError as e:
        return {"element": str(g), "invariant": str(e)}
    orders = {subgroup_closure(t.elements, g.params).order for t in reduced}
    if orbit == reduced and len(orders) == 1:
        return None
    return {"element": str(g), "reduced": len(reduced), "orbit": len(orbit), "closure_orders": sorted(orders)}


def _fred_pqc_row(g):
    if not is_parabolic_qc(g).is_pqc:
        return None
    count = count_reduced(g)
    formula = fred_formula_pqc(g)
    return None if count == formula else {"element": str(g), "count": count, "formula": formula}


def _full_count_row(g):
    try:
        formula = full_count_formula(g)
    except QcoxError:
        return None
    count = count_full_min(g)
    return None if count == formula else {"element": str(g), "count": count, "formula": formula}


def _sweep(context, triples, row):
    elements = [g for params in context.groups(triples) for g in all_elements(params)]
    failures = [r for r in parallel_map(row, elements, context.jobs) if r is not None]
    return not failures, _mismatch_details(len(elements), failures)


# -------------------------------
# Criteria
# -------------------------------
def check_denes(context):
    rows = {}
    for n in range(2, 7):
        params = GroupParams(1, 1, n)
        if context.suite == "core" and group_order(params) > context.max_order:
            continue
        g = element_from_cycles(params, [(range(1, n + 1), 0)])
        rows[n] = (count_reduced(g), n ** (n - 2))
    return all(a == b for a, b in rows.values()), {str(n): list(v) for n, v in rows.items()}


def check_fred_gm1n(context):
    rows = {}
    for params in context.groups([(2, 1, 2), (3, 1, 2), (2, 1, 3), (3, 1, 3), (4, 1, 2)]):
        n = params.n
        g = element_from_cycles(params, [(range(1, n + 1), 1)])
        rows[str(params)] = [count_reduced(g), n**n]
    return all(a == b for a, b in rows.values()), rows


def check_fred_gmmn(context):
    rows = {}
    for params in context.groups([(2, 2, 3), (2, 2, 4), (3, 3, 3), (5, 5, 2)]):
        classes = {}
        for g in all_elements(params):
            if is_parabolic_qc(g).is_qc:
                classes.setdefault(conjugacy_key(g), g)
        for key, g in sorted(classes.items()):
            rows[str(g)] = [count_reduced(g), fred_formula_qc(g)]
    return all(a == b for a, b in rows.values()), rows


def check_hurwitz_numbers(context):
    rows = {}
    for n in range(1, 6):
        for p in partitions(n):
            parts = tuple(sorted((k for k, v in p.items() for _ in range(v)), reverse=True))
            rows[str(parts)] = [hurwitz_number(parts), brute_transitive_count(parts)]
    return all(a == b for a, b in rows.values()), rows


def check_characterization(context):
    return _sweep(context, CHARACTERIZATION_GROUPS, _characterization_row)


def check_rgs_counts(context):
    return _sweep(context, CHARACTERIZATION_GROUPS, _rgs_row)


def check_lengths(context):
    return _sweep(context, CHARACTERIZATION_GROUPS, _length_row)


def check_full_lengths(context):
    return _sweep(context, FULL_LENGTH_GROUPS, _full_length_row)


def check_transitivity(context):
    return _sweep(context, CHARACTERIZATION_GROUPS, _transitivity_row)


def check_weighted_cayley(context):
    checked, failures = 0, []
    for k in range(0, 6):
        for xs in itertools.product(range(1, 5), repeat=k + 1):
            checked += 1
            closed, brute = weighted_cayley(xs), brute_weighted_cayley(xs)
            if closed != brute:
                failures.append({"weights": list(xs), "formula": str(closed), "trees": str(brute)})
    return not failures, _mismatch_details(checked, failures)


def check_weyl(context):
    failures = []
    checked = 0
    for name in WEYL_GENSET_TYPES:
        weyl_type = WeylType.parse(name)
        params = weyl_group_params(weyl_type)
        if context.suite == "core" and group_order(params) > context.max_order:
            continue
        index = connection_index(weyl_type)
        for subset in itertools.combinations(all_reflections(params), weyl_type.rank):
            checked += 1
            by_det = abs(pairing_det(subset, weyl_type)) == index
            by_closure = subgroup_closure([t.element for t in subset], params).order == group_order(params)
            if by_det != by_closure:
                failures.append({"type": name, "subset": [str(t) for t in subset]})
    for name in WEYL_PDET_TYPES:
        weyl_type = WeylType.parse(name)
        for g in all_elements(weyl_group_params(weyl_type)):
            checked += 1
            factors = enumerate_reduced(g)[0].factors
            pdet, index = pdet_abs(g), lattice_index(factors, weyl_type)
            if pdet != index:
                failures.append({"type": name, "element": str(g), "pdet": pdet, "index": index})
    for name in WEYL_ABC_TYPES:
        weyl_type = WeylType.parse(name)
        checked += 1
        degree, count = abc_degree(weyl_type), count_reduced(coxeter_element(weyl_type))
        if degree != count:
            failures.append({"type": name, "abc_degree": degree, "count": count})
    return not failures, _mismatch_details(checked, failures)


def check_regular_fred(context):
    small = regular_fred_check_dn(2)
    large = regular_fred_check_dn(4)
    enumerated = count_reduced(_d2n(2))
    details = {
        "D4(2,2)": {"fred": small.fred, "enumerated": enumerated, "delta": str(small.delta)},
        "D8(4,4)": {"fred": large.fred, "delta": str(large.delta)},
    }
    return small.delta == 2 and large.delta == 4 and enumerated == small.fred, details


def _d2n(n):
    params = GroupParams(2, 2, 2 * n)
    return element_from_cycles(params, [(range(1, n + 1), 1), (range(n + 1, 2 * n + 1), 1)])


def _weak_compositions(n):
    for p in partitions(n):
        yield tuple(p.get(i, 0) for i in range(1, n + 1))


def check_dps(context):
    checked, failures = 0, []
    for n in range(1, 9):
        for mvec in _weak_compositions(n):
            checked += 1
            if not dps_identity(mvec):
                failures.append({"composition": list(mvec), "check": "identity"})
            if n <= 5:
                brute = brute_dps(mvec)
                if brute != dps_formula(mvec):
                    failures.append({"composition": list(mvec), "trees": str(brute), "formula": str(dps_formula(mvec))})
                cacti = brute_cacti(mvec)
                if cacti != dps_cacti_count(mvec):
                    failures.append({"composition": list(mvec), "cacti": cacti, "count": dps_cacti_count(mvec)})
    return not failures, _mismatch_details(checked, failures)


def check_fred_pqc(context):
    return _sweep(context, CHARACTERIZATION_GROUPS, _fred_pqc_row)


def check_full_counts(context):
    return _sweep(context, FULL_COUNT_GROUPS, _full_count_row)


CRITERIA = (
    ("denes", check_denes, SUITES),
    ("fred-G(m,1,n)", check_fred_gm1n, SUITES),
    ("fred-G(m,m,n)", check_fred_gmmn, SUITES),
    ("hurwitz-numbers", check_hurwitz_numbers, SUITES),
    ("characterization", check_characterization, SUITES),
    ("rgs-counts", check_rgs_counts, SUITES),
    ("reflection-length", check_lengths, SUITES),
    ("full-length", check_full_lengths, SUITES),
    ("hurwitz-transitivity", check_transitivity, SUITES),
    ("weighted-cayley", check_weighted_cayley, SUITES),
    ("weyl-lattice", check_weyl, SUITES),
    ("regular-fred", check_regular_fred, SUITES),
    ("cayley-cacti", check_dps, SUITES),
    ("fred-pqc", check_fred_pqc, SUITES),
    ("full-counts", check_full_counts, ("full",)),
)


def run_suite(suite="core", max_order=2000, jobs=1, only=None):
    """Run every criterion of the suite; `only` restricts to the named ones"""
    if suite not in SUITES:
        raise QcoxError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
    context = SweepContext(suite, max_order, jobs)
    results = []
    for name, check, suites in CRITERIA:
        if suite not in suites or (only and name not in only):
            continue
        start = time.perf_counter()
        passed, details = check(context)
        elapsed = time.perf_counter() - start
        logger.info("%s: %s in %.1fs", name, "pass" if passed else "FAIL", elapsed)
        results.append(CriterionResult(name, passed, details, elapsed))
    return results
