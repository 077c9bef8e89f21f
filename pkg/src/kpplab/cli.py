"""Command-line front end.

Commands: validate-f, shoot, rho, bvp, sweep, certify, bbm-check.  Outputs go
to ``--output-dir`` (or $KPP_LAB_OUTPUT); ``--format json`` additionally
prints one well-formed JSON document to stdout.  The one-line human summary
goes to stderr so stdout stays machine-readable.

Exit codes: 0 success, 1 validation failure, 2 numerical failure, 3 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .ballbvp import (certificate_json, dirichlet_solution,
                      minimal_solution_sweep, nonexistence_certificate,
                      sweep_csv)
from .comparison import RhoMethod, rho, rho_table
from .defaults import DEFAULTS
from .errors import (BadInputError, KppLabError, NumericalError,
                     ValidationError)
from .fkpp import TestFunction, consistency_check, report_json_dict
from .nonlinearity import Nonlinearity, validate_assumptions
from .shooting import ShootConfig, shoot

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2
EXIT_BAD_INPUT = 3


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems via BadInputError (exit 3)."""

    def error(self, message):
        raise BadInputError(message)


def _read_config(path: str) -> dict:
    out = {}
    try:
        with open(path) as fh:
            for line in fh:
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise BadInputError(f"{path}: expected key=value, got {line!r}")
                k, v = line.split("=", 1)
                out[k.strip()] = v.strip()
    except OSError as exc:
        raise BadInputError(f"cannot read config file {path}: {exc}") from exc
    return out


def _build_parser() -> _Parser:
    ap = _Parser(prog="kpp-lab", description=__doc__,
                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", default=None, help="key=value file overriding defaults")
        p.add_argument("--output-dir", default=None, help="artifact directory (or $KPP_LAB_OUTPUT)")
        p.add_argument("--format", choices=["csv", "json", "both"], default="csv")
        p.add_argument("--workers", type=int, default=None)
        p.add_argument("--seed", type=int, default=None, help="master seed (default 0x5EED)")

    def add_f(p):
        p.add_argument("--f", dest="family", choices=["kpp", "logistic", "linear", "table"],
                       required=True)
        p.add_argument("--beta", type=float, default=None)
        p.add_argument("--m", type=float, default=None)
        p.add_argument("--q", type=float, default=None)
        p.add_argument("--p-exp", type=float, default=None, help="logistic exponent")
        p.add_argument("--file", default=None, help="two-column CSV (header z,f) for --f table")

    p = sub.add_parser("validate-f", help="structural checks on a reaction term")
    add_common(p); add_f(p)
    p.add_argument("--grid-size", type=int, default=None)
    p.add_argument("--strictness-eps", type=float, default=None)

    p = sub.add_parser("shoot", help="radial profile from a center value")
    add_common(p); add_f(p)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--rel-tol", type=float, default=None)
    p.add_argument("--abs-tol", type=float, default=None)
    p.add_argument("--root-tol", type=float, default=None)
    p.add_argument("--r-max", type=float, default=None)

    p = sub.add_parser("rho", help="first root of the linear comparison problem")
    add_common(p)
    p.add_argument("--m", type=float, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--method", choices=["closed", "numeric", "both"], default="closed")

    p = sub.add_parser("bvp", help="Dirichlet solution on a ball of radius R")
    add_common(p); add_f(p)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--R", type=float, required=True)
    p.add_argument("--bvp-tol", type=float, default=None)

    p = sub.add_parser("sweep", help="expanding-ball minimal-solution sweep")
    add_common(p); add_f(p)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--radii", required=True, help="comma-separated increasing radii")
    p.add_argument("--bvp-tol", type=float, default=None)

    p = sub.add_parser("certify", help="nonexistence certificate at level p")
    add_common(p); add_f(p)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=float, required=True)

    p = sub.add_parser("bbm-check", help="Laplace-functional identity check")
    add_common(p)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--x0", type=float, default=0.0)
    p.add_argument("--c", type=float, default=0.7, help="test-function weight")
    p.add_argument("--a", type=float, default=None, help="indicator left edge")
    p.add_argument("--b", type=float, default=None, help="indicator right edge")
    p.add_argument("--n-runs", type=int, default=None)
    p.add_argument("--h", type=float, default=None)
    p.add_argument("--dt", type=float, default=None)
    p.add_argument("--L", type=float, default=None)
    return ap


def _nonlinearity_from_args(args) -> Nonlinearity:
    fam = args.family
    if fam == "kpp":
        if args.beta is None:
            raise BadInputError("--f kpp requires --beta")
        return Nonlinearity.kpp(args.beta)
    if fam == "logistic":
        if None in (args.m, args.q, args.p_exp):
            raise BadInputError("--f logistic requires --m, --q and --p-exp")
        return Nonlinearity.generalized_logistic(args.m, args.q, args.p_exp)
    if fam == "linear":
        if args.m is None:
            raise BadInputError("--f linear requires --m")
        return Nonlinearity.linear(args.m)
    if args.file is None:
        raise BadInputError("--f table requires --file")
    return Nonlinearity.from_csv(args.file)


def _setting(args, cfg: dict, name: str, cast, default):
    """Flag > config file > default."""
    v = getattr(args, name.replace("-", "_"), None)
    if v is not None:
        return v
    if name in cfg:
        try:
            return cast(cfg[name])
        except ValueError as exc:
            raise BadInputError(f"config key {name}: {exc}") from exc
    return default


def _outdir(args) -> Path:
    path = args.output_dir or os.environ.get("KPP_LAB_OUTPUT") or "out"
    p = Path(path)
    p.mkdir(parents=True, exist_ok=True)
    return p


def _emit(args, doc: dict, summary: str, files: dict) -> None:
    """Write all artifacts; print the JSON document to stdout for json/both."""
    out = _outdir(args)
    for name, text in files.items():
        (out / name).write_text(text)
    if args.format in ("json", "both"):
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    print(summary, file=sys.stderr)


def _shoot_cfg(args, cfg) -> ShootConfig:
    return ShootConfig(
        rel_tol=_setting(args, cfg, "rel-tol", float, DEFAULTS["rel_tol"]),
        abs_tol=_setting(args, cfg, "abs-tol", float, DEFAULTS["abs_tol"]),
        root_tol=_setting(args, cfg, "root-tol", float, DEFAULTS["root_tol"]),
        r_max=getattr(args, "r_max", None),
    )


def _cmd_validate_f(args, cfg) -> int:
    f = _nonlinearity_from_args(args)
    report = validate_assumptions(
        f,
        grid_size=_setting(args, cfg, "grid-size", int, DEFAULTS["grid_size"]),
        strictness_eps=_setting(args, cfg, "strictness-eps", float, DEFAULTS["strictness_eps"]))
    doc = {
        "f": f.label,
        "passed": report.passed,
        "positive_interior": report.positive_interior,
        "ratio_strictly_decreasing": report.ratio_strictly_decreasing,
        "liminf_positive": report.liminf_positive,
        "grid_size": report.grid_size,
        "strictness_margin": report.strictness_margin,
        "violations": [{"z": z, "diagnostic": msg} for z, msg in report.violations],
    }
    _emit(args, doc, f"validate-f {f.label}: {'pass' if report.passed else 'FAIL'}",
          {"validate_f.json": json.dumps(doc, indent=2)})
    return EXIT_OK if report.passed else EXIT_VALIDATION


def _cmd_shoot(args, cfg) -> int:
    f = _nonlinearity_from_args(args)
    prof = shoot(f, args.d, args.p, _shoot_cfg(args, cfg))
    doc = prof.summary()
    csv_lines = ["r,V,dV"]
    for r, v, dv in zip(prof.grid, prof.values, prof.derivatives):
        csv_lines.append(f"{float(r)!r},{float(v)!r},{float(dv)!r}")
    _emit(args, doc,
          f"shoot d={args.d} p={args.p}: status={doc['status']} R={doc['R']}",
          {"profile.csv": "\n".join(csv_lines) + "\n",
           "shoot.json": json.dumps(doc, indent=2)})
    return EXIT_OK


def _cmd_rho(args, cfg) -> int:
    methods = {"closed": [RhoMethod.CLOSED_FORM], "numeric": [RhoMethod.NUMERIC],
               "both": [RhoMethod.CLOSED_FORM, RhoMethod.NUMERIC]}[args.method]
    recs = [rho(args.m, args.d, meth) for meth in methods]
    doc = recs[0].summary() if len(recs) == 1 else {"records": [r.summary() for r in recs]}
    table = rho_table([args.m], [args.d], methods[0])
    _emit(args, doc, f"rho m={args.m} d={args.d}: " + ", ".join(f"{r.rho!r}" for r in recs),
          {"rho.csv": table, "rho.json": json.dumps(doc, indent=2)})
    return EXIT_OK


def _cmd_bvp(args, cfg) -> int:
    f = _nonlinearity_from_args(args)
    sol = dirichlet_solution(f, args.d, args.R,
                             bvp_tol=_setting(args, cfg, "bvp-tol", float, DEFAULTS["bvp_tol"]))
    doc = {"d": args.d, "R": sol.radius, "p_star": sol.p_star,
           "iterations": sol.bracketing_iterations, "residual": sol.residual}
    csv_text = sweep_csv([sol])
    _emit(args, doc, f"bvp d={args.d} R={args.R}: p*={sol.p_star!r}",
          {"bvp.csv": csv_text, "bvp.json": json.dumps(doc, indent=2)})
    return EXIT_OK


def _cmd_sweep(args, cfg) -> int:
    f = _nonlinearity_from_args(args)
    try:
        radii = [float(tok) for tok in args.radii.split(",") if tok.strip()]
    except ValueError as exc:
        raise BadInputError(f"--radii: {exc}") from exc
    workers = _setting(args, cfg, "workers", int, DEFAULTS["workers"])
    sols = minimal_solution_sweep(
        f, args.d, radii,
        bvp_tol=_setting(args, cfg, "bvp-tol", float, DEFAULTS["bvp_tol"]),
        workers=workers)
    doc = {"d": args.d, "f": f.label,
           "solutions": [{"R": s.radius, "p_star": s.p_star,
                          "iterations": s.bracketing_iterations,
                          "residual": s.residual} for s in sols],
           "p_star_increasing": all(a.p_star < b.p_star for a, b in zip(sols, sols[1:]))}
    _emit(args, doc,
          f"sweep d={args.d} radii={args.radii}: p*=" + ",".join(f"{s.p_star:.6f}" for s in sols),
          {"sweep.csv": sweep_csv(sols), "sweep.json": json.dumps(doc, indent=2)})
    return EXIT_OK


def _cmd_certify(args, cfg) -> int:
    f = _nonlinearity_from_args(args)
    cert = nonexistence_certificate(f, args.d, args.p)
    out = _outdir(args)
    profile_name = f"certificate_profile_d{args.d}_p{args.p}.csv"
    cert.profile.to_csv(out / profile_name)
    text = certificate_json(cert, profile_name)
    doc = json.loads(text)
    _emit(args, doc, f"certify d={args.d} p={args.p}: R={cert.R!r} <= rho={cert.rho_bound!r}",
          {"certificate.json": text})
    return EXIT_OK


def _cmd_bbm_check(args, cfg) -> int:
    if (args.a is None) != (args.b is None):
        raise BadInputError("--a and --b must be given together")
    phi = (TestFunction.constant(args.c) if args.a is None
           else TestFunction.indicator(args.c, args.a, args.b))
    rep = consistency_check(
        phi, args.beta, args.t, args.x0,
        n_runs=_setting(args, cfg, "n-runs", int, DEFAULTS["n_runs"]),
        master_seed=_setting(args, cfg, "seed", int, DEFAULTS["master_seed"]),
        h=_setting(args, cfg, "h", float, DEFAULTS["fkpp_h"]),
        dt=_setting(args, cfg, "dt", float, DEFAULTS["fkpp_dt"]),
        L=args.L,
        workers=_setting(args, cfg, "workers", int, DEFAULTS["workers"]))
    doc = report_json_dict(rep)
    _emit(args, doc,
          f"bbm-check {rep.phi}: mc={rep.mc.mean:.6f} 1-pde={1.0 - rep.pde_value:.6f} "
          f"({rep.verdict})",
          {"bbm_check.json": json.dumps(doc, indent=2)})
    return EXIT_OK if rep.verdict == "Pass" else EXIT_NUMERICAL


_COMMANDS = {
    "validate-f": _cmd_validate_f,
    "shoot": _cmd_shoot,
    "rho": _cmd_rho,
    "bvp": _cmd_bvp,
    "sweep": _cmd_sweep,
    "certify": _cmd_certify,
    "bbm-check": _cmd_bbm_check,
}


def run(argv) -> int:
    """Parse argv and execute; numerical/validation problems become exit codes."""
    try:
        args = _build_parser().parse_args(argv)
        cfg = _read_config(args.config) if args.config else {}
        return _COMMANDS[args.command](args, cfg)
    except BadInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except ValidationError as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except KppLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
