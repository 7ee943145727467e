"""Command-line interface.

Exit codes: 0 every job feasible, 1 some job infeasible or invalid, 2 input
or parse error, 3 numerical failure. When several apply the highest wins.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from momentgate.core import DEFAULT_TOLERANCES, ToleranceConfig, volume_ratio
from momentgate.errors import InputError, InvalidInput, NumericalFailure
from momentgate.ingest import JobKind, UrdfMode, ValidationJob, parse_job_json, parse_urdf
from momentgate.report import emit_report, evaluate_job
from momentgate.selftest import run_selftest

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_INPUT = 2
EXIT_NUMERICAL = 3

ENV_TOL_EIG = "MOMENTGATE_TOL_EIG"


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="momentgate",
        description="Check that first/second moments (or rigid-body inertial parameters) are realizable.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="check a .json job file or a .urdf robot description")
    check.add_argument("file", type=Path)
    check.add_argument(
        "--mode",
        choices=[m.value for m in UrdfMode],
        default=UrdfMode.COM_SEMANTICS.value,
        help="URDF interpretation (ignored for JSON)",
    )
    check.add_argument("--repair", action="store_true", help="suggest repairs for infeasible bodies")
    check.add_argument("--format", choices=["json", "text"], default="text")
    check.add_argument(
        "--tol-eig",
        type=_positive_float,
        default=None,
        help=f"relative eigenvalue zero threshold (default 1e-10, or ${ENV_TOL_EIG})",
    )
    check.add_argument("--tol-margin", type=_positive_float, default=None, help="boundary band on the margin (default 1e-9)")

    vr = sub.add_parser("volume-ratio", help="ellipsoid-to-box volume ratio in n dimensions")
    vr.add_argument("--n", type=int, required=True)

    st = sub.add_parser("selftest", help="run the oracle property suite at reduced counts")
    st.add_argument("--scale", type=float, default=1.0, help="multiply case counts")
    return parser


def _tolerances(args, job: ValidationJob) -> ToleranceConfig:
    # explicit flag > job file > environment > built-in default
    base = job.tolerances
    eig = args.tol_eig
    if eig is None:
        if base is not None:
            eig = base.eig_rel_tol
        elif os.environ.get(ENV_TOL_EIG):
            eig = float(os.environ[ENV_TOL_EIG])
        else:
            eig = DEFAULT_TOLERANCES.eig_rel_tol
    margin = args.tol_margin
    if margin is None:
        margin = base.boundary_tol if base is not None else DEFAULT_TOLERANCES.boundary_tol
    return ToleranceConfig(eig_rel_tol=eig, boundary_tol=margin)


def _load_jobs(path: Path, mode: str) -> tuple[list[ValidationJob], list[str]]:
    data = path.read_bytes()
    suffix = path.suffix.lower()
    if suffix == ".json":
        return parse_job_json(data), []
    if suffix == ".urdf":
        jobs, errors = [], []
        for name, params in parse_urdf(data, mode):
            if isinstance(params, InputError):
                errors.append(f"{path}: link {name}: {params}")
            else:
                jobs.append(ValidationJob(JobKind.RIGID_BODY, params, name))
        return jobs, errors
    raise InputError(f"cannot tell the format of {path.name!r}; expected .json or .urdf")


def _check(args, out, err) -> int:
    try:
        jobs, link_errors = _load_jobs(args.file, args.mode)
        if os.environ.get(ENV_TOL_EIG) and args.tol_eig is None:
            _positive_float(os.environ[ENV_TOL_EIG])
    except (OSError, InputError, argparse.ArgumentTypeError) as exc:
        print(f"momentgate: {exc}", file=err)
        return EXIT_INPUT

    code = EXIT_OK
    for message in link_errors:
        print(f"momentgate: {message}", file=err)
        code = EXIT_INPUT
    reports = []
    for job in jobs:
        try:
            report = evaluate_job(job, _tolerances(args, job), repair=args.repair)
        except NumericalFailure as exc:
            print(f"momentgate: {job.label}: numerical failure: {exc}", file=err)
            code = max(code, EXIT_NUMERICAL)
            continue
        except InvalidInput as exc:
            print(f"momentgate: {job.label}: {exc}", file=err)
            code = max(code, EXIT_INPUT)
            continue
        reports.append(report)
        if not report.feasible:
            code = max(code, EXIT_INFEASIBLE)

    if args.format == "json":
        out.write(json.dumps([r.to_dict() for r in reports], indent=2) + "\n")
    else:
        out.write("\n".join(emit_report(r, "text").decode("utf-8") for r in reports))
    return code


def run_cli(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK

    if args.command == "check":
        return _check(args, out, err)
    if args.command == "volume-ratio":
        try:
            value = volume_ratio(args.n)
        except InvalidInput as exc:
            print(f"momentgate: {exc}", file=err)
            return EXIT_INPUT
        print(f"{value:.4g}", file=out)
        return EXIT_OK
    results = run_selftest(args.scale)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}", file=out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_INFEASIBLE


def main() -> None:
    sys.exit(run_cli())
