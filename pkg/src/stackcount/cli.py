"""Batch command-line front end: a thin client over the core package.

Exit codes: 0 success, 1 verification mismatch, 2 parse/schema failure,
3 mathematical domain error (non-minimal where required, vanishing
discriminant, unrealizable condition, budget refusal).
"""

from __future__ import annotations

import argparse
import json
import sys

from .census import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    count_curves,
    enumerate_stratum,
    enumerate_wmin,
    verify,
)
from .ffield import DegenerateInputError, units_by_order
from .motive import (
    ambient_identity_check,
    inertia_wmin_motive,
    poly1_motive,
    poly_cond_motive,
    stratum_gamma_motive,
    wmin_motive,
    zeta_series,
)
from .tate import WeierstrassModel, classify_all
from .wls import (
    VanishingCondition,
    WeightedLinearSeries,
    height_report,
    minimalize,
)

PARSE_ERROR, MATH_ERROR, MISMATCH = 2, 3, 1


def _fail(code: int, message: str):
    print(json.dumps({"error": message}), file=sys.stderr)
    raise SystemExit(code)


def _read_json(path: str | None):
    try:
        if path is None or path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        _fail(PARSE_ERROR, f"cannot parse input: {exc}")


def _emit(obj, plain: bool = False):
    if plain:
        _emit_plain(obj)
    else:
        print(json.dumps(obj, indent=2, sort_keys=True))


def _emit_plain(obj, indent: int = 0):
    pad = "  " * indent
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)):
                print(f"{pad}{k}:")
                _emit_plain(v, indent + 1)
            else:
                print(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                _emit_plain(v, indent)
                print()
            else:
                print(f"{pad}{v}")
    else:
        print(f"{pad}{obj}")


def parse_model(obj) -> WeierstrassModel:
    try:
        return WeierstrassModel.from_json(obj)
    except DegenerateInputError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        _fail(PARSE_ERROR, f"bad model JSON: {exc}")


def parse_series(obj) -> WeightedLinearSeries:
    try:
        return WeightedLinearSeries.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        _fail(PARSE_ERROR, f"bad series JSON: {exc}")


def cmd_classify(args) -> int:
    model = parse_model(_read_json(args.input))
    reports, summary = classify_all(model, seed=args.seed)
    hrep = height_report(model.series, require_minimal=True, seed=args.seed)
    _emit(
        {
            "fibers": [r.to_json() for r in reports],
            "summary": summary.to_json(),
            "height": hrep.to_json(),
        },
        args.plain,
    )
    return 0


def cmd_minimalize(args) -> int:
    series = parse_series(_read_json(args.input))
    minimal, h = minimalize(series, seed=args.seed)
    _emit(
        {
            "minimal": minimal.to_json(),
            "h": h.to_json(),
            "defect": series.n - minimal.n,
        },
        args.plain,
    )
    return 0


def cmd_height(args) -> int:
    series = parse_series(_read_json(args.input))
    rep = height_report(series, require_minimal=args.require_minimal, seed=args.seed)
    _emit(rep.to_json(), args.plain)
    return 0


def _weights(args) -> tuple[int, ...]:
    try:
        return tuple(int(w) for w in args.weights.split(","))
    except (AttributeError, ValueError):
        _fail(PARSE_ERROR, "--weights must be a comma-separated integer list")


def cmd_motive(args) -> int:
    kind = args.kind
    if kind == "wmin":
        cls = wmin_motive(_weights(args), args.n)
    elif kind == "inertia":
        if args.q is None:
            _fail(PARSE_ERROR, "--q is required for the inertia motive")
        cls = inertia_wmin_motive(_weights(args), args.n, units_by_order(args.q))
    elif kind == "stratum":
        lam = _weights(args)
        if len(lam) != 2:
            _fail(PARSE_ERROR, "stratum motives need exactly two weights")
        gamma = _gamma(args)
        cls = stratum_gamma_motive(lam[0], lam[1], args.n, gamma)
    elif kind == "poly1":
        cls = poly1_motive(args.d1, args.d2)
    elif kind == "poly":
        gamma = _gamma(args)
        cls = poly_cond_motive(gamma.shape, gamma.a, gamma.b, args.d1, args.d2)
    else:
        _fail(PARSE_ERROR, f"unknown motive kind {kind!r}")
    out = {"kind": kind, "class": cls.to_json(), "pretty": repr(cls)}
    if args.q is not None:
        out["specialized"] = {"q": args.q, "value": str(cls.specialize(args.q))}
    _emit(out, args.plain)
    return 0


def _gamma(args) -> VanishingCondition:
    if not args.gamma:
        _fail(PARSE_ERROR, "--gamma is required for this kind")
    try:
        return VanishingCondition.parse(args.gamma)
    except ValueError as exc:
        _fail(PARSE_ERROR, str(exc))


def cmd_zeta(args) -> int:
    weights = _weights(args)
    series = zeta_series(weights, args.order)
    out = {
        "weights": list(weights),
        "order": args.order,
        "coefficients": series.to_json(),
        "pretty": [repr(c) for c in series.coeffs],
        "ambient_identity": ambient_identity_check(weights, args.order),
    }
    if args.q is not None:
        out["specialized"] = [str(c.specialize(args.q)) for c in series.coeffs]
    _emit(out, args.plain)
    return 0


def cmd_count(args) -> int:
    rep = count_curves(args.q, args.b_exp, args.mode, args.theta)
    _emit(rep.to_json(), args.plain)
    if rep.match is False:
        return MISMATCH
    return 0


def cmd_census(args) -> int:
    weights = _weights(args)
    if args.gamma:
        if len(weights) != 2:
            _fail(PARSE_ERROR, "stratum censuses need exactly two weights")
        gamma = _gamma(args)
        res = enumerate_stratum(
            weights[0], weights[1], args.n, gamma, args.p,
            workers=args.workers, budget=args.budget, force=args.force,
        )
    else:
        res = enumerate_wmin(
            weights, args.n, args.p,
            workers=args.workers, budget=args.budget, force=args.force,
        )
    _emit(res.to_json(), args.plain)
    return 0


def cmd_verify(args) -> int:
    report = verify(suite=args.suite, workers=args.workers,
                    budget=args.budget, seed=args.seed)
    if args.full:
        _emit(report.to_json(), args.plain)
    else:
        failing = [c.to_json() for c in report.cases if not c.match]
        _emit(
            {
                "suite": report.suite,
                "ok": report.ok,
                "cases_run": len(report.cases),
                "failures": failing,
                "skipped": report.skipped,
                "seconds": round(report.seconds, 3),
            },
            args.plain,
        )
    if not report.ok:
        first = report.first_failure()
        print(
            f"FIRST COUNTEREXAMPLE: {first.case}: formula={first.formula_value} "
            f"oracle={first.oracle_value}",
            file=sys.stderr,
        )
        return MISMATCH
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stackcount",
        description="Heights, Kodaira fibers, motives and exact point counts "
        "for weighted projective stacks over F_q(t).",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--plain", action="store_true", help="human table output")
    common.add_argument("--seed", type=int, default=0, help="factorization seed")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    pc = add_parser("classify", help="Kodaira fibers of a Weierstrass model")
    pc.add_argument("input", nargs="?", help="model JSON file (default stdin)")
    pc.set_defaults(func=cmd_classify)

    pm = add_parser("minimalize", help="minimal model of a weighted linear series")
    pm.add_argument("input", nargs="?", help="series JSON file (default stdin)")
    pm.set_defaults(func=cmd_minimalize)

    ph = add_parser("height", help="height decomposition of a series")
    ph.add_argument("input", nargs="?", help="series JSON file (default stdin)")
    ph.add_argument("--require-minimal", action="store_true")
    ph.set_defaults(func=cmd_height)

    pmo = add_parser("motive", help="symbolic classes and specializations")
    pmo.add_argument("--kind", required=True,
                     choices=("wmin", "inertia", "stratum", "poly1", "poly"))
    pmo.add_argument("--weights", help="comma-separated weights")
    pmo.add_argument("--n", type=int, default=0, help="height")
    pmo.add_argument("--gamma", help="vanishing condition, e.g. '>=1,1'")
    pmo.add_argument("--d1", type=int, default=0)
    pmo.add_argument("--d2", type=int, default=0)
    pmo.add_argument("--q", type=int, help="specialize at q")
    pmo.set_defaults(func=cmd_motive)

    pz = add_parser("zeta", help="height zeta series coefficients")
    pz.add_argument("--weights", required=True)
    pz.add_argument("--order", type=int, default=8, help="truncation order K")
    pz.add_argument("--q", type=int, help="specialize at q")
    pz.set_defaults(func=cmd_zeta)

    pco = add_parser("count", help="counting functions at B = q^(12m)")
    pco.add_argument("--q", type=int, required=True)
    pco.add_argument("--B-exp", dest="b_exp", type=int, required=True,
                     help="exponent m in B = q^(12m)")
    pco.add_argument("--mode", required=True,
                     choices=("weighted", "unweighted", "kodaira"))
    pco.add_argument("--theta", help="Kodaira type key for mode=kodaira")
    pco.set_defaults(func=cmd_count)

    pce = add_parser("census", help="brute-force censuses")
    pce.add_argument("--p", type=int, required=True)
    pce.add_argument("--weights", required=True)
    pce.add_argument("--n", type=int, required=True)
    pce.add_argument("--gamma", help="stratum census for this condition")
    pce.add_argument("--workers", type=int, default=1)
    pce.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    pce.add_argument("--force", action="store_true", help="run heavy censuses")
    pce.set_defaults(func=cmd_census)

    pv = add_parser("verify", help="formula-vs-oracle acceptance suite")
    pv.add_argument("--suite", choices=("core", "heavy"), default="core")
    pv.add_argument("--workers", type=int, default=1)
    pv.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    pv.add_argument("--full", action="store_true", help="emit every case")
    pv.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return MATH_ERROR
    except DegenerateInputError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return MATH_ERROR


if __name__ == "__main__":
    sys.exit(main())
