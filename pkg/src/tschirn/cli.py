"""Command-line interface.

Every command prints one JSON document; ``--pretty`` switches to a table.
Exit codes: 0 success, 1 usage error, 2 invalid instance (singular or
reducible), 3 internal contract violation or prediction mismatch.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from contextlib import redirect_stdout

from .geometry import (
    DivisorClass,
    SurfaceModel,
    adjunction_genus,
    cone_numerics,
    direct_images,
    genus_formula,
    hypothesis_check,
    intersect,
    predict_thm_a,
    predict_thm_b,
    predict_tschirnhausen,
    pushforward_Ok,
    surface_cohomology,
)
from .instances import InstanceError, TangencyError, load_instance, random_instance, random_plane_curve
from .suite import SuiteConfig, run_suite
from .verify import ContractViolation, InvalidInstance, verify_instance, verify_plane

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(doc: dict, pretty: bool):
    if not pretty:
        print(json.dumps(doc, sort_keys=False))
        return
    width = max((len(str(k)) for k in doc), default=0)
    for k, v in doc.items():
        if isinstance(v, (dict, list)):
            v = json.dumps(v)
        print(f"{str(k).ljust(width)}  {v}")


def _check_params(m, e, delta, gamma):
    if m is None or m < 2:
        raise UsageError("--m must be at least 2")
    if e is None or e < 1:
        raise UsageError("--e must be at least 1")
    if delta < 0 or gamma < 0:
        raise UsageError("--delta and --gamma must be nonnegative")


def cmd_predict(args) -> int:
    _check_params(args.m, args.e, args.delta, args.gamma)
    m, e, d, g = args.m, args.e, args.delta, args.gamma
    case = "A" if d == 0 else "B"
    doc = {
        "input": {"m": m, "e": e, "delta": d, "gamma": g},
        "case_a": list(predict_thm_a(m, e, d, g).degrees),
        "case_b": list(predict_thm_b(m, e, d, g).degrees),
        "tschirnhausen": list(predict_tschirnhausen(m, e, d, g).degrees),
        "hypothesis": hypothesis_check(m, e, d, g).value,
    }
    if d in (0, 1):
        doc["genus"] = genus_formula(m, e, g, case)
    if d in (0, 1) and e >= 2 * g - 1:
        doc["cone"] = cone_numerics(m, e, g, case).to_json()
    _emit(doc, args.pretty)
    return EXIT_OK


def _report_exit(report, pretty) -> int:
    _emit(report.to_json(), pretty)
    return EXIT_OK if report.ok else EXIT_INTERNAL


def cmd_verify(args) -> int:
    if args.instance:
        curve, plane = load_instance(args.instance)
        if plane is not None and curve is None:
            return _report_exit(verify_plane(plane, not args.no_smoothness_check), args.pretty)
    else:
        _check_params(args.m, args.e, args.delta, 0)
        if args.delta not in (0, 1):
            raise UsageError("--delta must be 0 or 1")
        curve = random_instance(args.m, args.e, args.delta, args.seed, args.bound).curve
    report = verify_instance(curve, check_smooth=not args.no_smoothness_check)
    report.extra["instance"] = curve.to_json()
    return _report_exit(report, args.pretty)


def cmd_plane(args) -> int:
    if args.file:
        _, plane = load_instance(args.file)
        if plane is None:
            raise UsageError("file has no plane curve")
    else:
        if args.m is None or args.m < 2:
            raise UsageError("--m must be at least 2")
        plane = random_plane_curve(args.m, args.seed, args.bound, args.through_center)
    report = verify_plane(plane)
    report.extra["plane"] = plane.to_json()
    return _report_exit(report, args.pretty)


def cmd_intersect(args) -> int:
    S = SurfaceModel(args.e, args.gamma)
    D1, D2 = DivisorClass.parse(args.d1, args.e), DivisorClass.parse(args.d2, args.e)
    _emit({"d1": [D1.a, D1.b], "d2": [D2.a, D2.b], "intersection": intersect(D1, D2, S)}, args.pretty)
    return EXIT_OK


def cmd_pushforward(args) -> int:
    if args.e < 1:
        raise UsageError("--e must be at least 1")
    direct, r1 = pushforward_Ok(args.k, args.e)
    _emit({"k": args.k, "e": args.e, "direct": direct, "R1": r1}, args.pretty)
    return EXIT_OK


def cmd_adjunction(args) -> int:
    S = SurfaceModel(args.e, args.gamma)
    D = DivisorClass.parse(args.cls, args.e)
    _emit({"class": [D.a, D.b], "genus": adjunction_genus(D, S)}, args.pretty)
    return EXIT_OK


def cmd_cohomology(args) -> int:
    S = SurfaceModel(args.e, args.gamma)
    D = DivisorClass.parse(args.cls, args.e) if args.cls else DivisorClass(args.a, args.b)
    direct, r1 = direct_images(D, S)
    doc = {"class": [D.a, D.b], "direct": direct, "R1": r1}
    if args.gamma == 0:
        doc["h"] = list(surface_cohomology(D, S))
    _emit(doc, args.pretty)
    return EXIT_OK


def cmd_suite(args) -> int:
    deltas = (args.delta,) if args.delta is not None else (0, 1)
    kw = dict(seed=args.seed, jobs=args.jobs, deltas=deltas, golden_dir=args.golden)
    if args.scale:
        kw["scale"] = args.scale
    if args.timeout_ms:
        kw["per_instance_s"] = args.timeout_ms / 1000
    cfg = SuiteConfig.from_env(**kw)
    only = [int(c) for c in args.criteria.split(",")] if args.criteria else None
    summary = run_suite(cfg, only)
    if args.pretty:
        for r in summary.results:
            print(r.line())
        for g in summary.golden:
            print(f"[{'PASS' if g['passed'] else 'FAIL'}] golden {g['name']}: {g['detail']}")
    else:
        print(json.dumps(summary.to_json()))
    return EXIT_OK if summary.passed else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tschirn", description="Splitting types of covers on Hirzebruch surfaces.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp):
        sp.add_argument("--pretty", action="store_true")
        return sp

    sp = common(sub.add_parser("predict", help="predicted splitting types and numerics"))
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--e", type=int, required=True)
    sp.add_argument("--delta", type=int, default=0)
    sp.add_argument("--gamma", type=int, default=0)
    sp.set_defaults(func=cmd_predict)

    sp = common(sub.add_parser("verify", help="compute and compare splittings for one curve"))
    sp.add_argument("--instance")
    sp.add_argument("--m", type=int)
    sp.add_argument("--e", type=int)
    sp.add_argument("--delta", type=int, default=0)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--bound", type=int, default=5)
    sp.add_argument("--no-smoothness-check", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = common(sub.add_parser("plane", help="project a plane curve and verify the cover"))
    sp.add_argument("file", nargs="?")
    sp.add_argument("--m", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--bound", type=int, default=3)
    sp.add_argument("--through-center", action="store_true")
    sp.set_defaults(func=cmd_plane)

    sp = common(sub.add_parser("intersect", help="intersection number of two classes"))
    sp.add_argument("--d1", required=True)
    sp.add_argument("--d2", required=True)
    sp.add_argument("--e", type=int, required=True)
    sp.add_argument("--gamma", type=int, default=0)
    sp.set_defaults(func=cmd_intersect)

    sp = common(sub.add_parser("pushforward", help="direct images of O(kH)"))
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--e", type=int, required=True)
    sp.set_defaults(func=cmd_pushforward)

    sp = common(sub.add_parser("adjunction", help="arithmetic genus of a class"))
    sp.add_argument("--class", dest="cls", required=True)
    sp.add_argument("--e", type=int, required=True)
    sp.add_argument("--gamma", type=int, default=0)
    sp.set_defaults(func=cmd_adjunction)

    sp = common(sub.add_parser("cohomology", help="direct images and cohomology of a line bundle"))
    sp.add_argument("--class", dest="cls")
    sp.add_argument("--a", type=int, default=0)
    sp.add_argument("--b", type=int, default=0)
    sp.add_argument("--e", type=int, required=True)
    sp.add_argument("--gamma", type=int, default=0)
    sp.set_defaults(func=cmd_cohomology)

    sp = common(sub.add_parser("suite", help="run the acceptance matrix"))
    sp.add_argument("--scale", choices=["smoke", "full"])
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--delta", type=int, choices=[0, 1])
    sp.add_argument("--golden")
    sp.add_argument("--criteria", help="comma-separated criterion numbers")
    sp.add_argument("--timeout-ms", type=int)
    sp.set_defaults(func=cmd_suite)
    return p


def _run(argv) -> int:
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError("missing command")
        return args.func(args)
    except UsageError as exc:
        print(json.dumps({"error": "usage", "message": str(exc)}))
        return EXIT_USAGE
    except TangencyError as exc:
        print(json.dumps({"error": "tangency", "message": str(exc)}))
        return EXIT_INVALID
    except InvalidInstance as exc:
        print(json.dumps(exc.to_json()))
        return EXIT_INVALID
    except (InstanceError, ValueError) as exc:
        print(json.dumps({"error": "usage", "message": str(exc)}))
        return EXIT_USAGE
    except (ContractViolation, ArithmeticError) as exc:
        print(json.dumps({"error": "internal", "message": str(exc)}))
        return EXIT_INTERNAL


def main(argv=None, capture: bool = False):
    """Entry point; with ``capture`` returns (exit code, stdout text)."""
    argv = sys.argv[1:] if argv is None else list(argv)
    if not capture:
        return _run(argv)
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = _run(argv)
    return code, buf.getvalue()
