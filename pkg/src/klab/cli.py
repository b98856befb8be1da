"""Command-line front end: evaluate functions, compute triple compositions,
and run the identity-certification suites with machine-readable reports.

Complex numbers are written "re,im", rational slopes "p/q", and lines
"slope:y:beta".  Exit codes: 0 success/pass, 1 verification failure,
2 input or evaluation error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from functools import partial

from . import verify as verify_mod
from .appell import g0, g_series, kappa
from .core import (
    DEFAULT_BUDGET,
    EvalError,
    Modulus,
    SummationBudget,
)
from .fukaya import composition_by_point, m3_generic, polygon_oracle
from .hfun import h0_series, h_series, psi_closed
from .kronecker import f_series
from .lattice import LineOnTorus
from .theta import theta, theta_prime

SCHEMA = 1


def parse_complex(text: str) -> complex:
    try:
        re_s, im_s = text.split(",")
        return complex(float(re_s), float(im_s))
    except ValueError as ex:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}") from ex


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as ex:
        raise argparse.ArgumentTypeError(f"expected 'p/q', got {text!r}") from ex


def parse_line(text: str) -> LineOnTorus:
    try:
        slope_s, y_s, beta_s = text.split(":")
        return LineOnTorus(Fraction(slope_s), float(y_s), float(beta_s))
    except (ValueError, ZeroDivisionError) as ex:
        raise argparse.ArgumentTypeError(
            f"expected 'slope:y:beta', got {text!r}"
        ) from ex


def parse_slopes(text: str) -> list:
    return [parse_rational(p) for p in text.split(",")]


#: function name -> (callable, ordered argument flag names)
EVAL_FUNCTIONS = {
    "theta": (theta, ["z"]),
    "theta_prime": (theta_prime, ["z"]),
    "f": (f_series, ["z1", "z2"]),
    "kappa": (kappa, ["y", "x"]),
    "g": (g_series, ["z1", "z2"]),
    "g0": (g0, ["z1", "z2"]),
    "h": (h_series, ["z1", "z2"]),
    "h0": (h0_series, ["z1", "z2"]),
    "psi": (psi_closed, ["x"]),
}


def _shells_used(fn, args, tau, budget) -> int:
    """Smallest shell cap at which the evaluation stalls successfully."""
    lo, hi = 1, budget.max_shell
    # exponential probe, then bisect for the minimal sufficient radius
    probe = 1
    while probe < hi:
        try:
            fn(*args, tau, SummationBudget(budget.target_tol, probe, budget.stall_shells))
            hi = probe
            break
        except EvalError:
            lo = probe + 1
            probe *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        try:
            fn(*args, tau, SummationBudget(budget.target_tol, mid, budget.stall_shells))
            hi = mid
        except EvalError:
            lo = mid + 1
    return hi


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _jsonable(obj):
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    return obj


def cmd_eval(args) -> int:
    fn, flag_names = EVAL_FUNCTIONS[args.function]
    tau = Modulus(args.tau)
    values = []
    for name in flag_names:
        v = getattr(args, name)
        if v is None:
            print(f"missing required argument --{name}", file=sys.stderr)
            return 2
        values.append(v)
    value = fn(*values, tau, DEFAULT_BUDGET)
    shells = _shells_used(fn, values, tau, DEFAULT_BUDGET)
    if args.format == "json":
        payload = {
            "schema": SCHEMA,
            "function": args.function,
            "args": {n: _jsonable(v) for n, v in zip(flag_names, values)},
            "tau": _jsonable(tau.tau),
            "value_re": value.real,
            "value_im": value.imag,
            "shells_used": shells,
            "guard": 1e-9,
        }
        _emit(json.dumps(payload, sort_keys=True), args.out)
    else:
        _emit(
            f"{args.function} = {value.real:.15g}{value.imag:+.15g}j"
            f"  (shells_used={shells})",
            args.out,
        )
    return 0


def cmd_m3(args) -> int:
    tau = Modulus(args.tau)
    lines = args.line
    slopes = [ln.slope for ln in lines]
    if len(set(slopes)) != 4:
        print("repeated slopes", file=sys.stderr)
        return 2
    result = m3_generic(lines, tau, DEFAULT_BUDGET)
    payload = {"schema": SCHEMA}
    if result.is_zero:
        payload["zero"] = True
        _emit(json.dumps(payload, sort_keys=True), args.out)
        return 0
    if args.oracle:
        oracle = polygon_oracle(lines, tau, radius=args.radius)
        sp = composition_by_point(result, lines[0], lines[3])
        op = composition_by_point(oracle, lines[0], lines[3])
        disc = max(
            abs(sp.get(k, 0.0) - op.get(k, 0.0)) for k in set(sp) | set(op)
        )
        payload["max_discrepancy"] = disc
        source = oracle
    else:
        source = result
    payload["prefactor_re"] = source.prefactor.real
    payload["prefactor_im"] = source.prefactor.imag
    payload["sign"] = source.sign
    payload["coefficients"] = [
        {"a": a, "b": b, "value_re": v.real, "value_im": v.imag}
        for (a, b), v in sorted(source.coefficients.items())
    ]
    _emit(json.dumps(payload, sort_keys=True), args.out)
    return 0


def _run_suite(identity_id, tau, args, tol_override):
    if identity_id in ("five-term", "sign-det") and args.slopes is not None:
        if identity_id == "five-term":
            rep = verify_mod.verify_five_term(
                args.slopes, tau, min(args.samples, 3), args.seed, DEFAULT_BUDGET
            )
        else:
            rep = verify_mod.verify_sign_determination(
                args.slopes, tau, args.seed, DEFAULT_BUDGET
            )
    else:
        rep = verify_mod.SUITES[identity_id](tau, args.samples, args.seed, DEFAULT_BUDGET)
    if tol_override is not None and identity_id != "sign-det":
        rep.tolerance = tol_override
        rep.passed = bool(rep.samples) and rep.max_residual < tol_override
    return rep


def _report_payload(rep) -> dict:
    return {
        "schema": SCHEMA,
        "identity_id": rep.identity_id,
        "tolerance": rep.tolerance,
        "max_residual": rep.max_residual,
        "pass": rep.passed,
        "seed": rep.seed,
        "skipped": rep.skipped,
        "n_samples": len(rep.samples),
        "samples": [
            {
                "point": _jsonable(s["point"]),
                "lhs": _jsonable(s["lhs"]),
                "rhs": _jsonable(s["rhs"]),
                "residual": s["residual"],
            }
            for s in rep.samples
        ],
    }


def _report_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(
        ["identity_id", "sample", "residual", "lhs_re", "lhs_im", "rhs_re", "rhs_im"]
    )
    for rep in reports:
        for i, s in enumerate(rep.samples):
            lhs, rhs = complex(s["lhs"]), complex(s["rhs"])
            writer.writerow(
                [rep.identity_id, i, s["residual"], lhs.real, lhs.imag, rhs.real, rhs.imag]
            )
    return buf.getvalue()


def cmd_verify(args) -> int:
    tau = Modulus(args.tau)
    env_tol = os.environ.get("KLAB_DEFAULT_TOL")
    tol = args.tol if args.tol is not None else (
        float(env_tol) if env_tol is not None else None
    )
    ids = list(verify_mod.SUITES) if args.identity == "all" else [args.identity]
    if args.identity != "all" and args.identity not in verify_mod.SUITES:
        print(f"unknown identity {args.identity!r}", file=sys.stderr)
        return 2
    try:
        reports = [_run_suite(i, tau, args, tol) for i in ids]
    except EvalError as ex:
        print(f"{ex.kind}: {ex}", file=sys.stderr)
        return 2
    if args.format == "csv":
        _emit(_report_csv(reports), args.out)
    elif args.format == "text":
        lines = [
            f"{r.identity_id}: {'PASS' if r.passed else 'FAIL'} "
            f"max_residual={r.max_residual:.3e} tol={r.tolerance:.1e} "
            f"samples={len(r.samples)} skipped={r.skipped}"
            for r in reports
        ]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        payloads = [_report_payload(r) for r in reports]
        out = payloads[0] if len(payloads) == 1 else {
            "schema": SCHEMA,
            "reports": payloads,
            "pass": all(r.passed for r in reports),
        }
        _emit(json.dumps(out, sort_keys=True), args.out)
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="klab",
        description="Theta functions, Appell sums, indefinite theta series, "
        "and torus-line composition numerics.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tau", type=parse_complex, default=complex(0, 1),
                        help="modulus as 're,im' (default 0,1)")
    common.add_argument("--format", choices=["json", "csv", "text"], default="json")
    common.add_argument("--out", default=None, help="write output to this file")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", parents=[common], help="evaluate one function")
    p_eval.add_argument("function", choices=sorted(EVAL_FUNCTIONS))
    for flag in ("z", "z1", "z2", "x", "y"):
        p_eval.add_argument(f"--{flag}", type=parse_complex, default=None)
    p_eval.set_defaults(func=cmd_eval)

    p_m3 = sub.add_parser("m3", parents=[common],
                          help="triple composition of four lines")
    p_m3.add_argument("line", type=parse_line, nargs=4,
                      help="four lines as 'slope:y:beta'")
    p_m3.add_argument("--oracle", action="store_true",
                      help="use the polygon-enumeration oracle and report the "
                      "discrepancy against the series")
    p_m3.add_argument("--radius", type=int, default=4)
    p_m3.set_defaults(func=cmd_m3)

    p_ver = sub.add_parser("verify", parents=[common],
                           help="run an identity-certification suite")
    p_ver.add_argument("identity",
                       help="identity id or 'all': " + ", ".join(verify_mod.SUITES))
    p_ver.add_argument("--samples", type=int, default=50)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--tol", type=float, default=None,
                       help="override the declared tolerance "
                       "(or set KLAB_DEFAULT_TOL)")
    p_ver.add_argument("--slopes", type=parse_slopes, default=None,
                       help="five slopes 'p/q,...' for five-term / sign-det")
    p_ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EvalError as ex:
        print(f"{ex.kind}: {ex}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
