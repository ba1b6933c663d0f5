#!/usr/bin/env python3
"""
Command-line front end for symstab.

Every subcommand prints one JSON document on standard output. Exit status is
0 on success, 2 on invalid input and 3 when an enumeration exceeds the
budget; in both error cases the document is an ``{"error": ...}`` object.
"""

import argparse
import logging
import sys
from typing import List, NoReturn, Optional

from . import __version__
from .core.surface import NumClass
from .core.torsion import (
    TorsionVector,
    enumerate_torsion,
    order,
    subgroup_membership,
)
from .models import ErrorBody, ErrorResponse
from .toolkit import SymStab
from .utils.codec import bundle_from_json, dumps, load_json, pattern_from_json, statuses_from_json
from .utils.config import BUDGET_ENV_VAR, DEFAULT_BUDGET, resolve_budget
from .utils.errors import SymstabError, UsageError

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(name)s:%(levelname)s:%(message)s"


def _write_error(exc: SymstabError) -> None:
    error = ErrorResponse(error=ErrorBody(code=exc.code, message=str(exc)))
    sys.stdout.write(dumps(error.model_dump()))


class JsonArgumentParser(argparse.ArgumentParser):
    """Argument parser that reports usage errors as a JSON error object."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        exc = UsageError(f"{self.prog}: {message}")
        _write_error(exc)
        self.exit(exc.exit_status)


def _add_curve_args(parser: argparse.ArgumentParser, with_ell: bool = True) -> None:
    parser.add_argument("--genus", type=int, required=True, help="Genus of the base curve")
    if with_ell:
        parser.add_argument("--ell", required=True,
                            help='Defining torsion class, e.g. "1/2,0,0,0"')


def build_parser() -> argparse.ArgumentParser:
    parser = JsonArgumentParser(
        prog="symstab",
        description="Exact stability bookkeeping for symmetric powers of rank-2 bundles on curves",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--budget", type=int, default=None,
                        help=f"Enumeration budget (default ${BUDGET_ENV_VAR} or {DEFAULT_BUDGET})")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="Log progress to stderr (-vv for debug output)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="Classify S^k E for a bundle descriptor")
    p.add_argument("--bundle", required=True, help="Bundle descriptor JSON file")
    p.add_argument("--k", type=int, default=3, help="Symmetric power (default 3)")

    p = sub.add_parser("describe", help="Print the canonical form of a bundle descriptor")
    p.add_argument("--bundle", required=True, help="Bundle descriptor JSON file")

    p = sub.add_parser("twist", help="2-torsion twists relating two bundles")
    p.add_argument("--bundle", required=True, help="First bundle descriptor")
    p.add_argument("--other", required=True, help="Second bundle descriptor")

    p = sub.add_parser("count", help="Count exceptional bundles at torsion level")
    p.add_argument("--genus", type=int, required=True, help="Genus of the base curve")
    p.add_argument("--family", required=True, choices=SymStab.FAMILIES, help="Family to count")
    p.add_argument("--n", type=int, default=None, help="Torsion exponent for prym-jn and s2-locus")

    p = sub.add_parser("gate", help="Decide all powers from the verdicts for powers 2..6")
    p.add_argument("--statuses", required=True, help="JSON file mapping power to verdict")

    p = sub.add_parser("prym", help="Prym torsion of a double cover")
    _add_curve_args(p)
    p.add_argument("--n", type=int, default=2, help="Torsion exponent (default 2)")
    p.add_argument("--list", action="store_true", help="Also list the classes")

    p = sub.add_parser("covering", help="Describe a cyclic covering model")
    _add_curve_args(p)
    p.add_argument("--degree", type=int, default=2, help="Covering degree, 2 or 3")

    surf = sub.add_parser("surf", help="Numerical calculus on the ruled surface")
    surf_sub = surf.add_subparsers(dest="action", required=True)
    p = surf_sub.add_parser("intersect", help="Intersection of s1 C1 + b1 f and s2 C1 + b2 f")
    p.add_argument("--genus", type=int, default=2)
    p.add_argument("--e", type=int, default=0, help="Degree of E, equal to C1^2")
    for name in ("s1", "b1", "s2", "b2"):
        p.add_argument(f"--{name}", type=int, required=True)
    p = surf_sub.add_parser("genus", help="Genus of a k-section of zero self-intersection")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p = surf_sub.add_parser("selfint", help="Self-intersection of k C1 + b f")
    p.add_argument("--genus", type=int, default=2)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--e", type=int, default=0)

    elm = sub.add_parser("elm", help="Elementary-transformation runs")
    elm_sub = elm.add_subparsers(dest="action", required=True)
    p = elm_sub.add_parser("run", help="Generation run on P(O + M) along the bisection")
    _add_curve_args(p)
    p.add_argument("--pattern", required=True, help="Pattern JSON file")
    p.add_argument("--n", type=int, default=None, help="Half the number of points")
    p = elm_sub.add_parser("split", help="Run on P(O + O) with points on C0 and Cinf")
    _add_curve_args(p, with_ell=False)
    p.add_argument("--pattern", required=True, help="Pattern JSON file")
    p.add_argument("--n", type=int, default=None, help="Half the number of points")

    tors = sub.add_parser("torsion", help="Torsion lattice arithmetic")
    tors_sub = tors.add_subparsers(dest="action", required=True)
    p = tors_sub.add_parser("order", help="Order of a torsion vector")
    p.add_argument("--vector", required=True)
    p = tors_sub.add_parser("enumerate", help="List the n-torsion of (Q/Z)^rank")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p = tors_sub.add_parser("member", help="Subgroup membership test")
    p.add_argument("--vector", required=True)
    p.add_argument("--generators", required=True, help='Semicolon separated, e.g. "1/2,0;0,1/2"')

    return parser


def _torsion(args: argparse.Namespace, budget: int) -> dict:
    if args.action == "order":
        v = TorsionVector.parse(args.vector)
        return {"vector": v.to_json(), "order": order(v)}
    if args.action == "enumerate":
        items = [v.to_json() for v in enumerate_torsion(args.rank, args.n, budget)]
        return {"rank": args.rank, "n": args.n, "count": len(items), "elements": items}
    v = TorsionVector.parse(args.vector)
    gens = [TorsionVector.parse(g) for g in args.generators.split(";") if g.strip()]
    return {"vector": v.to_json(), "member": subgroup_membership(v, gens, budget)}


def dispatch(args: argparse.Namespace) -> dict:
    """Run the requested subcommand and return its report."""
    budget = resolve_budget(args.budget)
    command = args.command
    logger.debug("dispatching %s with budget %d", command, budget)

    if command == "classify":
        return SymStab.classify(bundle_from_json(load_json(args.bundle)), args.k)
    if command == "describe":
        return SymStab.describe(bundle_from_json(load_json(args.bundle)))
    if command == "twist":
        return SymStab.twist(bundle_from_json(load_json(args.bundle)),
                             bundle_from_json(load_json(args.other)))
    if command == "count":
        return SymStab.count(args.genus, args.family, args.n, budget)
    if command == "gate":
        return SymStab.gate(statuses_from_json(load_json(args.statuses)))
    if command == "prym":
        return SymStab.prym(args.genus, TorsionVector.parse(args.ell), args.n, args.list, budget)
    if command == "covering":
        return SymStab.covering(args.genus, TorsionVector.parse(args.ell), args.degree, budget)
    if command == "surf":
        if args.action == "intersect":
            return SymStab.surface("intersect", args.genus, args.e, args.s1, args.b1,
                                   NumClass(args.s2, args.b2))
        if args.action == "genus":
            return SymStab.surface("genus", args.genus, 0, k=args.k)
        return SymStab.surface("selfint", args.genus, args.e, args.k, args.b)
    if command == "elm":
        pattern = pattern_from_json(load_json(args.pattern))
        if args.action == "run":
            return SymStab.generation(args.genus, TorsionVector.parse(args.ell), pattern, args.n)
        return SymStab.split_run(args.genus, pattern, args.n)
    return _torsion(args, budget)


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        report = dispatch(args)
    except SymstabError as exc:
        logger.info("%s failed: %s", args.command, exc)
        _write_error(exc)
        return exc.exit_status
    sys.stdout.write(dumps(report))
    return 0


if __name__ == "__main__":
    sys.exit(main())
