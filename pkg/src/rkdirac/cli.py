"""Command-line interface.

Commands:

* ``verify``   run a named verification suite and emit a JSON report
* ``norm``     Dirac commutator norm of an operator at a depth
* ``sweep``    the same norm across a depth range, as CSV
* ``connes``   state-distance lower bound from a certified operator family
* ``boson verify``    ladder and (anti)commutation identities on a grid
* ``formulas report`` closed-form adjudication report for a projection vector

Exit codes: 0 on success, 1 when a verification check fails, 2 on usage or
input errors.  Report-only entries never affect the exit code.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import dirac as di
from . import formulas as fo
from . import spectra as sp
from . import suites
from .dyadic import l2_norm
from .io import load_function, load_operator, operator_to_json


def _parse_depth_range(text: str) -> List[int]:
    """Parse '2:6' or '2,3,5' into a list of depths."""
    if ":" in text:
        lo, hi = text.split(":", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",") if x]


def _emit(obj: dict, out: Optional[str]) -> None:
    text = json.dumps(obj, indent=2, sort_keys=False)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_verify(args) -> int:
    try:
        report = suites.run_suite(args.suite, depth=args.depth, seed=args.seed)
    except KeyError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    payload = report.to_json()
    _emit(payload, args.out)
    for check in report.failures:
        print(
            f"FAIL {check.id} [{check.ref}]: value {check.value!r}, "
            f"expected {check.expected!r} (tolerance {check.tolerance!r})",
            file=sys.stderr,
        )
    return 0 if report.passed else 1


def _load_norm_request(args):
    obj = load_operator_envelope(args.operator)
    depth = args.depth
    if isinstance(obj, dict) and "dirac_norm" in obj:
        request = obj["dirac_norm"]
        op = load_operator(request["operator"])
        if "depth" in request:
            depth = int(request["depth"])
    else:
        op = load_operator(obj)
    return op, depth


def load_operator_envelope(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def cmd_norm(args) -> int:
    try:
        op, depth = _load_norm_request(args)
        if depth is None:
            depth = di.attainment_depth(op)
            if depth is None:
                raise ValueError("no attainment rule for this operator; pass --depth")
        block = di.dirac_commutator(op)
        upper, lower = di.block_norms(block, depth, method=args.method)
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(
        {"value": max(upper, lower), "block_upper": upper, "block_lower": lower, "depth": depth},
        args.out,
    )
    return 0


def cmd_sweep(args) -> int:
    try:
        op = load_operator(load_operator_envelope(args.operator))
        depths = _parse_depth_range(args.depths)
        points = sp.depth_sweep(op, depths, method=args.method)
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    lines = ["depth,value,iterations,method,converged,plateau"]
    for p in points:
        lines.append(f"{p.depth},{p.value:.15g},{p.iterations},{p.method},{p.converged},{p.plateau}")
    text = "\n".join(lines)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_connes(args) -> int:
    try:
        eta = di.VectorState(load_function(load_operator_envelope(args.eta)))
        xi = di.VectorState(load_function(load_operator_envelope(args.xi)))
        spec = load_operator_envelope(args.family)
        family = [load_operator(o) for o in spec["operators"]]
        depth = spec.get("depth", args.depth)
        bound, witness = di.connes_lower_bound(eta, xi, family, depth=depth)
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(
        {
            "lower_bound": bound,
            "witness_operator": operator_to_json(witness) if witness is not None else None,
        },
        args.out,
    )
    return 0


def cmd_boson_verify(args) -> int:
    checks = suites.run_boson(args.depth, args.seed, n_max=args.n_max, w_max_len=args.w_max_len, tol=args.tol)
    checks += suites.run_fermion(args.depth, args.seed)
    report = suites.SuiteReport(suite="boson+fermion", checks=checks, seed=args.seed, depth=args.depth, wall_time=0.0)
    _emit(report.to_json(), args.out)
    return 0 if report.passed else 1


def cmd_formulas_report(args) -> int:
    try:
        psi = load_function(load_operator_envelope(args.psi))
        norm = l2_norm(psi)
        if abs(norm - 1.0) > 1e-9:
            raise ValueError(f"state vector must have unit norm, got {norm}")
        adj = fo.projection_norm_adjudicate(psi, depth=args.depth)
        bounds = fo.projection_norm_bounds(psi)
        scan = fo.surface_max_scan(adj["c"])
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(
        {
            "c": adj["c"],
            "numeric_norm": adj["numeric"],
            "depth": adj["depth"],
            "coefficient_lower_bounds": bounds,
            "closed_form_candidates": {
                "linear": adj["candidate_linear"],
                "sqrt": adj["candidate_sqrt"],
                "sqrt_one_minus_c_sq": adj["candidate_sqrt_one_minus_c_sq"],
            },
            "surface_scan_max": scan["max"],
            "verdict": adj["verdict"],
        },
        args.out,
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rkdirac", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", default="all", help="one of: " + ", ".join(sorted(suites.SUITES)) + ", all")
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=suites.TOL_EXACT, help="tolerance for exact identities")
    p.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("norm", help="Dirac commutator norm of an operator")
    p.add_argument("--operator", required=True, help="operator JSON file")
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--method", default="auto", choices=("auto", "power", "dense"))
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("sweep", help="commutator norm across depths, as CSV")
    p.add_argument("--operator", required=True)
    p.add_argument("--depths", required=True, help="range 'lo:hi' or comma list")
    p.add_argument("--method", default="auto", choices=("auto", "power", "dense"))
    p.add_argument("--csv", default=None, help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("connes", help="state-distance lower bound from a certified family")
    p.add_argument("--eta", required=True, help="unit-norm state function JSON")
    p.add_argument("--xi", required=True)
    p.add_argument("--family", required=True, help='JSON {"operators": [...], "depth": optional}')
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_connes)

    p = sub.add_parser("boson", help="ladder-layer commands")
    bsub = p.add_subparsers(dest="subcommand", required=True)
    b = bsub.add_parser("verify", help="ladder and (anti)commutation identities")
    b.add_argument("--n-max", type=int, default=4)
    b.add_argument("--w-max-len", type=int, default=3)
    b.add_argument("--depth", type=int, default=10)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--tol", type=float, default=1e-12)
    b.add_argument("--out", default=None)
    b.set_defaults(func=cmd_boson_verify)

    p = sub.add_parser("formulas", help="closed-form adjudication commands")
    fsub = p.add_subparsers(dest="subcommand", required=True)
    f = fsub.add_parser("report", help="closed forms vs numeric norm for a projection vector")
    f.add_argument("--psi", required=True, help="unit-norm function JSON")
    f.add_argument("--depth", type=int, default=None)
    f.add_argument("--out", default=None)
    f.set_defaults(func=cmd_formulas_report)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; normalize other exits
        return int(exc.code or 0)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
