"""Command-line interface: solve, check, integrate, curve, suite.

All reports are JSON with sorted keys.  Exit codes: 0 when every requested
check passes, 1 when a check fails, 2 for usage errors and unmet
preconditions (including invalid parameters and malformed files).
"""

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .construct import ExponentData, ProblemSpec, exponent_data, taylor_solution
from .curves import check_curve_theorem, check_surface_theorem
from .fpintegral import check_integral_theorem
from .sl2rep import WeightVector
from .suite import run_suite
from .verify import (
    PreconditionError,
    check_kz,
    check_resonance_linear,
    check_singular,
    check_ze_resonance,
)


def _ints(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated integers, got %r" % text)


def _kappa(text):
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError("expected a rational like 4 or 1/2, got %r" % text)
    return value


def _emit(report, path):
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_spec_flags(parser):
    parser.add_argument("--p", type=int, required=True, help="odd prime modulus")
    parser.add_argument(
        "--kappa", type=_kappa, required=True, help='rational parameter, e.g. "4" or "1/2"'
    )
    parser.add_argument("--m", type=_ints, required=True, help="highest weights, e.g. 2,2")
    parser.add_argument("--k", type=int, required=True, help="number of t-variables")
    parser.add_argument("--q", type=_ints, default=None, help="Taylor base point, e.g. 0,0")
    parser.add_argument("--l", type=_ints, default=None, help="coefficient multipliers, e.g. 1,1")
    parser.add_argument(
        "--exponents",
        default=None,
        metavar="FILE",
        help='JSON exponent override {"M": [...], "M0": ..., "M_pair": {"i,j": ...}}',
    )


def _build_spec(args):
    return ProblemSpec(
        p=args.p,
        kappa=args.kappa,
        m=args.m,
        k=args.k,
        q=args.q or (),
        l=args.l or (),
    )


def _load_override(path):
    if path is None:
        return None
    with open(path) as fh:
        raw = json.load(fh)
    override = {}
    if "M" in raw:
        override["M"] = tuple(raw["M"])
    if "M0" in raw:
        override["M0"] = raw["M0"]
    if "M_pair" in raw:
        override["M_pair"] = {
            tuple(int(part) for part in key.split(",")): value
            for key, value in raw["M_pair"].items()
        }
    return override or None


def _provenance(spec, exps):
    return {
        "generator": "kzmodp %s" % __version__,
        "spec": spec.to_dict(),
        "exponents": exps.to_dict(),
    }


def _cmd_solve(args):
    spec = _build_spec(args)
    exps = exponent_data(spec, override=_load_override(args.exponents))
    solution = taylor_solution(spec, exps)
    _emit(
        {"provenance": _provenance(spec, exps), "solution": solution.to_dict()},
        args.output,
    )
    return 0


def _cmd_check(args):
    with open(args.sol) as fh:
        payload = json.load(fh)
    solution = WeightVector.from_dict(payload["solution"])
    spec = ProblemSpec.from_dict(payload["provenance"]["spec"])
    exps = ExponentData.from_dict(payload["provenance"]["exponents"])
    reports = []
    if args.kind in ("kz", "all"):
        reports.append(check_kz(solution, spec, exps))
    if args.kind in ("singular", "all"):
        reports.append(check_singular(solution))
    if args.kind == "resonance":
        reports.append(check_resonance_linear(solution, exps))
    if args.kind == "ze":
        if args.ell is None:
            raise PreconditionError("check ze needs --ell")
        reports.append(check_ze_resonance(solution, exps, args.ell))
    passed = all(r.passed for r in reports)
    _emit(
        {"passed": passed, "reports": [r.to_dict() for r in reports]},
        args.output,
    )
    return 0 if passed else 1


def _cmd_integrate(args):
    spec = _build_spec(args)
    exps = exponent_data(spec, override=_load_override(args.exponents))
    report = check_integral_theorem(spec, exps, args.x)
    _emit({"passed": report.passed, "report": report.to_dict()}, args.output)
    return 0 if report.passed else 1


def _cmd_curve(args):
    if args.kind == "surface":
        if len(args.x) != 2:
            raise PreconditionError("surface kind needs --x with two entries")
        report = check_surface_theorem(args.p, args.x[0], args.x[1])
    else:
        report = check_curve_theorem(args.kind, args.p, args.x)
    _emit({"passed": report.passed, "report": report.to_dict()}, args.output)
    return 0 if report.passed else 1


def _cmd_suite(args):
    report = run_suite(level=args.level, seed=args.seed, workers=args.workers)
    _emit(report, args.output)
    return 0 if report["passed"] else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="kzmodp",
        description="Construct and verify polynomial KZ solutions over F_p.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="construct a Taylor solution")
    _add_spec_flags(p_solve)
    p_solve.add_argument("--output", "-o", default=None, help="write JSON here instead of stdout")
    p_solve.set_defaults(func=_cmd_solve)

    p_check = sub.add_parser("check", help="verify identities on a solved file")
    p_check.add_argument(
        "kind", choices=("kz", "singular", "resonance", "ze", "all"), help="which identity"
    )
    p_check.add_argument("--sol", required=True, help="JSON file produced by solve")
    p_check.add_argument("--ell", type=int, default=None, help="nilpotence order for ze")
    p_check.add_argument("--output", "-o", default=None)
    p_check.set_defaults(func=_cmd_check)

    p_int = sub.add_parser("integrate", help="compare grid integrals with Taylor coefficients")
    _add_spec_flags(p_int)
    p_int.add_argument("--x", type=_ints, required=True, help="evaluation point, e.g. 0,1,2")
    p_int.add_argument("--output", "-o", default=None)
    p_int.set_defaults(func=_cmd_integrate)

    p_curve = sub.add_parser("curve", help="point-sum identities on curves and the surface")
    p_curve.add_argument(
        "--kind",
        required=True,
        choices=("elliptic", "quartic", "cubic3", "genus2", "surface"),
    )
    p_curve.add_argument("--p", type=int, required=True)
    p_curve.add_argument("--x", type=_ints, required=True, help="branch points, e.g. 0,1,3")
    p_curve.add_argument("--output", "-o", default=None)
    p_curve.set_defaults(func=_cmd_curve)

    p_suite = sub.add_parser("suite", help="run every verification scenario")
    p_suite.add_argument("--level", choices=("quick", "full"), default="quick")
    p_suite.add_argument("--seed", type=int, default=0)
    p_suite.add_argument("--workers", type=int, default=None, help="defaults to $KZMODP_WORKERS or 1")
    p_suite.add_argument("--output", "-o", default=None)
    p_suite.set_defaults(func=_cmd_suite)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PreconditionError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
