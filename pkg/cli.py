"""qcox command line.

Every subcommand writes one machine-readable record to stdout; logging and
error messages go to stderr.  Counts are emitted as decimal strings.
"""
import argparse
import csv
import io
import itertools
import json
import logging
import math
import random
import sys

from errors import CapExceededError, MismatchError, NotParabolicQuasiCoxeterError, QcoxError, UnsupportedGroupError
from factor_enum import (
    count_full_min,
    count_reduced,
    enumerate_full_min,
    enumerate_reduced,
    fred_formula_pqc,
    full_count_formula,
    hurwitz_number,
)
from hurwitz import hurwitz_orbit
from lengths import length_report
from oracles import brute_transitive_count
from pqc_rgs import (
    ROUTES,
    characterization_check,
    count_rgs_formula,
    enumerate_rgs,
    is_parabolic_qc,
    parabolic_closure_type,
    subgroup_closure,
)
from settings import FORMATS, SettingsError, build_run_config
from verify import SUITES, run_suite
from weyl_lattice import (
    WeylType,
    abc_degree,
    connection_index,
    coxeter_element,
    full_count_weyl,
    pairing_det,
    weyl_group_params,
    weyl_pqc_crosscheck,
)
from wreath_core import all_elements, all_reflections, group_order, parse_element

logger = logging.getLogger(__name__)

SCHEMA = 1
EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_CAP = 2
EXIT_MISMATCH = 3
EXIT_USAGE = 64
GENDET_SAMPLE_LIMIT = 10**4
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -------------------------------
# Output
# -------------------------------
def _flatten(value):
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    return value


def render(payload, fmt):
    record = {"schema": SCHEMA, **payload}
    if fmt == "json":
        return json.dumps(record, sort_keys=True)
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["key", "value"])
        for key in sorted(record):
            writer.writerow([key, _flatten(record[key])])
        return buffer.getvalue().rstrip("\n")
    return "\n".join(f"{key}: {_flatten(record[key])}" for key in sorted(record))


def _count(value):
    return None if value is None else str(value)


# -------------------------------
# Subcommands
# -------------------------------
def cmd_len(args, config):
    g = parse_element(config.element)
    report = length_report(g)
    return {
        "element": str(g),
        "refl_length": report.refl_length,
        "full_length": report.full_length,
        "codim": report.codim_fixed,
        "v_m": report.v_m,
    }


def cmd_fred(args, config):
    g = parse_element(config.element)
    count = count_reduced(g, config.depth_cap)
    formula = fred_formula_pqc(g) if is_parabolic_qc(g).is_pqc else None
    payload = {
        "element": str(g),
        "count": _count(count),
        "formula": _count(formula),
        "match": formula is None or count == formula,
    }
    if args.list:
        payload["factorizations"] = [t.to_json() for t in enumerate_reduced(g, config.depth_cap, config.orbit_cap)]
    return payload


def cmd_full(args, config):
    g = parse_element(config.element)
    count = count_full_min(g, config.depth_cap, config.orbit_cap, config.closure_cap)
    try:
        if args.weyl:
            formula = full_count_weyl(g, WeylType.parse(args.weyl))
        else:
            formula = full_count_formula(g)
    except (UnsupportedGroupError, NotParabolicQuasiCoxeterError) as e:
        logger.info("no closed form for %s: %s", g, e)
        formula = None
    payload = {
        "element": str(g),
        "full_length": length_report(g).full_length,
        "count": _count(count),
        "formula": _count(formula),
        "match": formula is None or count == formula,
    }
    if args.list:
        payload["factorizations"] = [
            t.to_json() for t in enumerate_full_min(g, config.depth_cap, config.orbit_cap, config.closure_cap)
        ]
    return payload


def cmd_rgs(args, config):
    g = parse_element(config.element)
    verdict = is_parabolic_qc(g)
    found = enumerate_rgs(g, config.route, config.closure_cap, config.jobs)
    formula = count_rgs_formula(g) if verdict.is_pqc else 0
    payload = {
        "element": str(g),
        "route": config.route,
        "is_pqc": verdict.is_pqc,
        "rgs_count": _count(len(found)),
        "formula": _count(formula),
        "match": len(found) == formula,
    }
    if args.list:
        payload["rgs"] = [[str(r) for r in s.reflections] for s in found]
    return payload


def cmd_pqc(args, config):
    g = parse_element(config.element)
    verdict = characterization_check(g, config.closure_cap, config.jobs) if args.check else is_parabolic_qc(g)
    payload = {
        "element": str(g),
        "is_pqc": verdict.is_pqc,
        "is_qc": verdict.is_qc,
        "witnesses": verdict.witnesses,
    }
    ptype = parabolic_closure_type(g)
    payload["closure"] = {
        "family": ptype.family,
        "lambda0": ptype.lambda0,
        "symmetric_parts": list(ptype.symmetric_parts),
        "partition": [list(b) for b in ptype.partition.blocks],
        "rank": ptype.rank,
        "order": _count(ptype.order),
    }
    if args.check and not verdict.agree:
        raise MismatchError(f"characterizations disagree for {g}: {verdict.witnesses}")
    return payload


def cmd_hurwitz_orbit(args, config):
    g = parse_element(config.element)
    reduced = enumerate_reduced(g, config.depth_cap, config.orbit_cap)
    orbit = hurwitz_orbit(reduced[0], config.orbit_cap, check=args.check, closure_cap=config.closure_cap)
    payload = {
        "element": str(g),
        "orbit_size": _count(len(orbit)),
        "reduced_count": _count(len(reduced)),
        "transitive": orbit == reduced,
    }
    if args.list:
        payload["orbit_lines"] = [json.dumps(t.to_json()) for t in orbit]
    return payload


def _parse_partition(text):
    try:
        parts = tuple(int(tok) for tok in text.replace(" ", "").split(",") if tok)
    except ValueError:
        raise UsageError(f"cannot parse partition {text!r}; expected e.g. 3,2,1")
    return tuple(sorted(parts, reverse=True))


def cmd_hurwitz_number(args, config):
    parts = _parse_partition(args.partition)
    value = hurwitz_number(parts)
    payload = {"partition": list(parts), "count": _count(value)}
    if args.brute:
        brute = brute_transitive_count(parts)
        payload["brute"] = _count(brute)
        payload["match"] = brute == value
    return payload


def _gendet_subsets(weyl_type, seed):
    reflections = all_reflections(weyl_group_params(weyl_type))
    total = math.comb(len(reflections), weyl_type.rank)
    if total <= GENDET_SAMPLE_LIMIT:
        return list(itertools.combinations(reflections, weyl_type.rank)), False
    rng = random.Random(seed)
    logger.info("%s: sampling %d of %d subsets (seed %d)", weyl_type, GENDET_SAMPLE_LIMIT, total, seed)
    return [tuple(sorted(rng.sample(reflections, weyl_type.rank))) for _ in range(GENDET_SAMPLE_LIMIT)], True


def cmd_weyl(args, config):
    weyl_type = WeylType.parse(args.type)
    params = weyl_group_params(weyl_type)
    payload = {"type": str(weyl_type), "check": args.check, "group": str(params)}
    if args.check == "gendet":
        index = connection_index(weyl_type)
        subsets, sampled = _gendet_subsets(weyl_type, config.seed)
        mismatches = 0
        generating = 0
        for subset in subsets:
            by_det = abs(pairing_det(subset, weyl_type)) == index
            by_closure = subgroup_closure([t.element for t in subset], params, config.closure_cap).order == group_order(params)
            generating += by_closure
            mismatches += by_det != by_closure
        payload.update(
            connection_index=index,
            checked=_count(len(subsets)),
            sampled=sampled,
            generating=_count(generating),
            mismatches=_count(mismatches),
            match=not mismatches,
        )
    elif args.check == "pdet":
        elements = [parse_element(config.element)] if config.element else list(all_elements(params))
        rows = [(g, weyl_pqc_crosscheck(g, weyl_type)) for g in elements]
        bad = [str(g) for g, report in rows if not report.agree]
        payload.update(checked=_count(len(rows)), disagreements=bad, match=not bad)
        if len(rows) == 1:
            report = rows[0][1]
            payload.update(pdet=report.pdet, closure_index=report.closure_index, is_pqc=report.is_pqc)
    else:
        degree = abc_degree(weyl_type)
        count = count_reduced(coxeter_element(weyl_type), config.depth_cap)
        payload.update(abc_degree=_count(degree), count=_count(count), match=degree == count)
    return payload


def cmd_verify(args, config):
    results = run_suite(args.suite, args.max_order, config.jobs, only=args.only)
    payload = {
        "suite": args.suite,
        "max_order": args.max_order,
        "passed": all(r.passed for r in results),
        "criteria": [r.to_json() for r in results],
    }
    return payload


COMMANDS = {
    "len": cmd_len,
    "fred": cmd_fred,
    "full": cmd_full,
    "rgs": cmd_rgs,
    "pqc": cmd_pqc,
    "hurwitz-orbit": cmd_hurwitz_orbit,
    "hurwitz-number": cmd_hurwitz_number,
    "weyl": cmd_weyl,
    "verify": cmd_verify,
}


# -------------------------------
# Parser
# -------------------------------
def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if value < 1:
        raise argparse.ArgumentTypeError(f"{value} must be positive")
    return value


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, help="output format (default: json)")
    common.add_argument("--jobs", type=_positive, help="worker processes (default: QCOX_JOBS or 1)")
    common.add_argument("--orbit-cap", type=_positive, help="maximum orbit or factorization count")
    common.add_argument("--closure-cap", type=_positive, help="maximum subgroup closure size")
    common.add_argument("--depth-cap", type=_positive, help="maximum factorization length")
    common.add_argument("--seed", type=int, help="seed for sampled sweeps")
    common.add_argument("--log-level", choices=("DEBUG", "INFO", "WARNING", "ERROR"), help="stderr log level")
    common.add_argument("-v", "--verbose", action="store_true", help="shortcut for --log-level DEBUG")

    parser = _Parser(prog="qcox", description="Reflection factorizations in the groups G(m,p,n).")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def element_command(name, help_text):
        p = subparsers.add_parser(name, help=help_text, parents=[common])
        p.add_argument("element", help='element such as "G(3,1,3):[2 3 1;1,0,0]"')
        return p

    element_command("len", "reflection length, full reflection length and codimension")
    p_fred = element_command("fred", "count reduced factorizations against the closed form")
    p_fred.add_argument("--list", action="store_true", help="also list the factorizations")
    p_full = element_command("full", "count minimum-length full factorizations")
    p_full.add_argument("--weyl", metavar="TYPE", help="use the Weyl-group formula for this type (e.g. B2)")
    p_full.add_argument("--list", action="store_true", help="also list the factorizations")
    p_rgs = element_command("rgs", "relative generating sets")
    p_rgs.add_argument("--route", choices=ROUTES, help="brute force, graph criterion, or both (default: both)")
    p_rgs.add_argument("--list", action="store_true", help="also list the sets")
    p_pqc = element_command("pqc", "parabolic quasi-Coxeter classification")
    p_pqc.add_argument("--check", action="store_true", help="run all four characterizations")
    p_orbit = element_command("hurwitz-orbit", "Hurwitz orbit of a reduced factorization")
    p_orbit.add_argument("--list", action="store_true", help="emit the orbit, one JSON line per tuple")
    p_orbit.add_argument("--check", action="store_true", help="assert the orbit invariants during the search")

    p_number = subparsers.add_parser("hurwitz-number", help="genus-0 Hurwitz number", parents=[common])
    p_number.add_argument("partition", help="cycle type such as 3,2,1")
    p_number.add_argument("--brute", action="store_true", help="compare with a brute-force count")

    p_weyl = subparsers.add_parser("weyl", help="root lattice checks in types A, B and D", parents=[common])
    p_weyl.add_argument("--type", required=True, help="Weyl type such as A3, B2, D4")
    p_weyl.add_argument("--check", choices=("gendet", "pdet", "abc"), default="abc")
    p_weyl.add_argument("element", nargs="?", help="element for --check pdet (default: every element)")

    p_verify = subparsers.add_parser("verify", help="run the acceptance sweeps", parents=[common])
    p_verify.add_argument("--suite", choices=SUITES, default="core")
    p_verify.add_argument("--max-order", type=_positive, default=2000)
    p_verify.add_argument("--only", nargs="+", metavar="NAME", help="run only these criteria")
    return parser


def _configure_logging(level):
    logging.basicConfig(level=getattr(logging, level), format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger().setLevel(getattr(logging, level))


def _fail(message, code):
    print(f"qcox: error: {message}", file=sys.stderr)
    return code


def run(argv, stdout=None):
    """Parse argv, run one subcommand and return the exit code"""
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = build_run_config(args)
    except UsageError as e:
        return _fail(str(e), EXIT_USAGE)
    except SettingsError as e:
        return _fail(str(e), EXIT_USAGE)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_OK

    _configure_logging(config.log_level)
    logger.debug("run configuration: %s", config)
    try:
        payload = COMMANDS[args.command](args, config)
    except UsageError as e:
        return _fail(str(e), EXIT_USAGE)
    except CapExceededError as e:
        return _fail(f"{e} (raise the cap to continue)", EXIT_CAP)
    except MismatchError as e:
        return _fail(str(e), EXIT_MISMATCH)
    except QcoxError as e:
        return _fail(str(e), EXIT_DOMAIN)

    orbit_lines = payload.pop("orbit_lines", None)
    print(render(payload, config.format), file=stdout)
    for line in orbit_lines or ():
        print(line, file=stdout)
    if args.command == "verify" and not payload["passed"]:
        return EXIT_MISMATCH
    if payload.get("match") is False:
        return EXIT_MISMATCH
    return EXIT_OK
