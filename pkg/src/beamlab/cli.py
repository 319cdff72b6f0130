"""Command-line interface.

Four subcommands:

* ``sweep``   – evaluate monotones of given states over a transmission grid
  and write one delimited file per (state, kind).
* ``verify``  – run property checks (the full battery or targeted ones) and
  write a JSON report; exit status reflects the verdict.
* ``fig1``    – the flagship dataset: the family of Renyi sweeps of the deep
  Fock state, one file per order, a JSON digest, and a rendered figure.
* ``poly``    – overlap-polynomial coefficients of one or two states plus a
  reconstruction-versus-direct comparison table.

Exit status: 0 on success (for ``verify``/``fig1``: all expected-pass checks
passed and all known-bad fixtures failed), 1 when checks come out wrong, and
2 for unparsable specs, bad flags, or domain errors while evaluating.

CSV files use a header row, LF line endings, ascending T, and 17 significant
digits so values round-trip exactly.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from pathlib import Path

from ._version import __version__
from .errors import BeamLabError, DomainError, StateSpecError
from .fock import PureState, as_density
from .monotones import MonotoneKind
from .overlap import overlap_coefficients, overlap_direct, overlap_reconstruct, purity_polynomial
from .statespec import build_state, format_state_spec, parse_state_spec
from .verify import (
    COUNTEREXAMPLE_GRID_SPEC,
    DEFAULT_GRID_SPEC,
    DERIVATIVE_GRID_SPEC,
    CheckReport,
    Tolerances,
    check_concavity,
    check_convexity,
    check_derivative_identity_sweep,
    check_gconc_log_concavity,
    check_gconc_monotonicity,
    check_mirror_identity_sweep,
    check_peak_at_half,
    check_qcs_law,
    check_symmetry,
    counterexample_summary,
    make_grid,
    run_renyi_counterexample,
    run_suite,
    suite_passed,
    sweep,
)

CURVE_CHECKS = {
    "symmetry": (check_symmetry, "symmetry"),
    "concavity": (check_concavity, "concavity"),
    "convexity": (check_convexity, "convexity"),
    "peak": (check_peak_at_half, "peak"),
    "monotonicity": (check_gconc_monotonicity, "monotonicity"),
    "log_concavity": (check_gconc_log_concavity, "log_concavity"),
    "qcs_law": (check_qcs_law, "qcs"),
}
STATE_CHECKS = ("derivative_identity", "mirror")
DEFAULT_CHECKS = {
    "von_neumann": ["symmetry", "concavity", "peak"],
    "renyi": ["symmetry", "peak"],
    "purity": ["symmetry", "convexity"],
    "mixedness": ["symmetry", "peak"],
    "g_concurrence": ["symmetry", "monotonicity", "log_concavity", "peak"],
    "qcs_witness": ["qcs_law"],
}

_RENYI_RANGE = re.compile(r"^renyi:(\d+)\.\.(\d+)$")


def slug(label: str) -> str:
    out = re.sub(r"[^0-9a-zA-Z.+-]+", "_", label).strip("_")
    return out or "x"


def parse_grid_arg(text: str) -> tuple[float, float, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise DomainError(f"--grid wants t_min,t_max,points, got {text!r}")
    try:
        return float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise DomainError(f"bad --grid value {text!r}: {exc}") from None


def parse_kind_args(args: list[str]) -> list[MonotoneKind]:
    kinds: list[MonotoneKind] = []
    for arg in args:
        text = arg.strip().lower()
        span = _RENYI_RANGE.match(text)
        if span:
            lo, hi = int(span.group(1)), int(span.group(2))
            if lo < 1 or hi < lo:
                raise DomainError(f"bad renyi range {arg!r}")
            kinds.extend(MonotoneKind("renyi", float(a)) for a in range(lo, hi + 1))
        else:
            kinds.append(MonotoneKind.from_label(text))
    return kinds


def parse_tol_args(args: list[str]) -> dict[str, float]:
    out = {}
    for arg in args:
        name, sep, value = arg.partition("=")
        if not sep:
            raise DomainError(f"--tol wants name=value, got {arg!r}")
        try:
            out[name.strip()] = float(value)
        except ValueError:
            raise DomainError(f"bad --tol value {arg!r}") from None
    return out


def _write_json(path: Path, obj) -> None:
    with open(path, "w", newline="\n") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_curve_csv(path: Path, curve) -> None:
    alpha = "" if curve.kind.alpha is None else f"{curve.kind.alpha:.17g}"
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["T", "value", "kind", "state", "alpha"])
        for t, v in zip(curve.grid, curve.values):
            writer.writerow([f"{t:.17g}", f"{v:.17g}", curve.kind.name, curve.state_label, alpha])


def write_curve_json(path: Path, curve) -> None:
    _write_json(path, {
        "state": curve.state_label,
        "kind": curve.kind.name,
        "alpha": curve.kind.alpha,
        "grid": [float(t) for t in curve.grid],
        "values": [float(v) for v in curve.values],
        "log_base": "e",
        "version": __version__,
    })


def _outdir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_sweep(args) -> int:
    specs = [parse_state_spec(s) for s in args.state]
    kinds = parse_kind_args(args.kind or ["von_neumann"])
    grid_spec = parse_grid_arg(args.grid)
    outdir = _outdir(args)
    curves = []
    for spec in specs:
        state = build_state(spec)
        label = format_state_spec(spec)
        for kind in kinds:
            grid = make_grid(*grid_spec)
            if kind.name == "qcs_witness":
                grid = grid[(grid > 0.0) & (grid < 1.0)]
            curve = sweep(state, kind, grid, label)
            ext = "csv" if args.format == "csv" else "json"
            path = outdir / f"{slug(label)}__{slug(kind.label)}.{ext}"
            if args.format == "csv":
                write_curve_csv(path, curve)
            else:
                write_curve_json(path, curve)
            print(f"wrote {path}")
            curves.append(curve)
    if args.plot:
        from . import figures

        print(f"wrote {figures.render_sweep_curves(curves, outdir / 'sweep.png')}")
    return 0


def _targeted_reports(args, tol: Tolerances) -> list[CheckReport]:
    specs = [parse_state_spec(s) for s in args.state]
    kinds = parse_kind_args(args.kind or ["von_neumann"])
    grid_spec = parse_grid_arg(args.grid)
    reports = []
    for spec in specs:
        state = build_state(spec)
        label = format_state_spec(spec)
        for kind in kinds:
            names = args.check or DEFAULT_CHECKS[kind.name]
            curve = None
            for name in names:
                if name in STATE_CHECKS:
                    continue
                fun, tol_field = CURVE_CHECKS[name]
                if curve is None:
                    grid = make_grid(*grid_spec)
                    if kind.name == "qcs_witness":
                        grid = grid[(grid > 0.0) & (grid < 1.0)]
                    curve = sweep(state, kind, grid, label)
                reports.append(fun(curve, getattr(tol, tol_field)))
        state_names = [n for n in (args.check or []) if n in STATE_CHECKS]
        for name in state_names:
            if not isinstance(state, PureState):
                raise DomainError(f"{name} check needs a pure state, got {label}")
            if name == "derivative_identity":
                reports.append(check_derivative_identity_sweep(
                    state, DERIVATIVE_GRID_SPEC, label, tol.derivative_identity))
            else:
                reports.append(check_mirror_identity_sweep(
                    state, DERIVATIVE_GRID_SPEC, label, tol.mirror))
    return reports


def _print_reports(reports) -> None:
    for r in reports:
        if r.expectation == "fail":
            status = "FAIL(expected)" if not r.passed else "PASS(unexpected)"
        elif r.expectation == "info":
            status = ("pass" if r.passed else "fail") + " (info)"
        else:
            status = "PASS" if r.passed else "FAIL"
        print(f"{status:16s} {r.check:32s} {r.state:28s} {r.kind:14s} "
              f"margin={r.worst_margin:+.3e} tol={r.tolerance:.0e}")


def cmd_verify(args) -> int:
    tol = Tolerances().override(**parse_tol_args(args.tol or []))
    if args.state:
        reports = _targeted_reports(args, tol)
    else:
        reports = run_suite(args.suite, tol, inject_corruption=args.inject_corruption,
                            seed=args.seed)
    outdir = _outdir(args)
    report_path = outdir / "report.json"
    _write_json(report_path, [r.as_record() for r in reports])
    _print_reports(reports)
    ok = suite_passed(reports)
    counts = {
        "pass": sum(1 for r in reports if r.expectation == "pass"),
        "fail_fixtures": sum(1 for r in reports if r.expectation == "fail"),
        "info": sum(1 for r in reports if r.expectation == "info"),
    }
    print(f"report: {report_path}")
    print(f"verdict: {'OK' if ok else 'NOT OK'} "
          f"({counts['pass']} expected-pass, {counts['fail_fixtures']} known-bad fixtures, "
          f"{counts['info']} informational)")
    if args.plot:
        from . import figures

        print(f"wrote {figures.render_report_margins(reports, outdir / 'verify.png')}")
    return 0 if ok else 1


def cmd_fig1(args) -> int:
    tol = Tolerances().override(**parse_tol_args(args.tol or []))
    grid_spec = parse_grid_arg(args.grid) if args.grid else COUNTEREXAMPLE_GRID_SPEC
    curves, reports = run_renyi_counterexample(grid_spec, tolerances=tol)
    outdir = _outdir(args)
    for curve in curves:
        ext = "csv" if args.format == "csv" else "json"
        path = outdir / f"fig1_alpha{int(curve.kind.alpha):02d}.{ext}"
        if args.format == "csv":
            write_curve_csv(path, curve)
        else:
            write_curve_json(path, curve)
        print(f"wrote {path}")
    summary = {
        "state": curves[0].state_label,
        "grid": list(curves[0].grid_spec),
        "orders": counterexample_summary(curves, tol),
        "log_base": "e",
        "version": __version__,
    }
    summary_path = outdir / "fig1_summary.json"
    _write_json(summary_path, summary)
    print(f"wrote {summary_path}")
    if not args.no_plot:
        from . import figures

        print(f"wrote {figures.render_fig1(curves, outdir / 'fig1.png')}")
    _print_reports(reports)
    return 0 if suite_passed(reports) else 1


def cmd_poly(args) -> int:
    tol = Tolerances().override(**parse_tol_args(args.tol or []))
    specs = [parse_state_spec(s) for s in args.state]
    if len(specs) > 2:
        raise DomainError("poly takes one state (self-overlap) or two")
    states = [build_state(s) for s in specs]
    labels = [format_state_spec(s) for s in specs]
    if len(states) == 1 and isinstance(states[0], PureState):
        poly = purity_polynomial(states[0])
    else:
        rho = as_density(states[0])
        sigma = as_density(states[-1])
        poly = overlap_coefficients(rho, sigma)
    rho = as_density(states[0])
    sigma = as_density(states[-1])
    outdir = _outdir(args)
    name = "__".join(slug(lbl) for lbl in labels)
    # coefficients below display tolerance are structural zeros of the expansion
    shown = [0.0 if abs(float(c)) < 1e-14 else float(c) for c in poly.coefficients]
    if args.format == "csv":
        coeff_path = outdir / f"poly_{name}.csv"
        with open(coeff_path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["m", "coefficient", "state", "other"])
            for m, c in enumerate(shown):
                writer.writerow([m, f"{c:.17g}", labels[0], labels[-1]])
    else:
        coeff_path = outdir / f"poly_{name}.json"
        _write_json(coeff_path, {
            "state": labels[0],
            "other": labels[-1],
            "coefficients": shown,
            "version": __version__,
        })
    print(f"wrote {coeff_path}")
    grid = make_grid(*parse_grid_arg(args.grid))
    worst = 0.0
    check_path = outdir / f"poly_{name}_check.csv"
    with open(check_path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["T", "direct", "reconstructed", "residual"])
        for t in grid:
            direct = overlap_direct(rho, sigma, float(t))
            recon = overlap_reconstruct(poly, float(t))
            worst = max(worst, abs(direct - recon))
            writer.writerow([f"{t:.17g}", f"{direct:.17g}", f"{recon:.17g}",
                             f"{direct - recon:.17g}"])
    print(f"wrote {check_path}")
    print(f"max |direct - reconstructed| = {worst:.3e} (tolerance {tol.reconstruction:.0e})")
    if args.plot:
        from . import figures

        title = f"overlap polynomial of {labels[0]}" + (
            f" and {labels[-1]}" if len(labels) > 1 else " (self)"
        )
        print(f"wrote {figures.render_polynomial(poly, outdir / f'poly_{name}.png', title)}")
    return 0 if worst <= tol.reconstruction else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="beamlab",
        description="Beam-splitter entanglement and photon-loss monotones on truncated Fock spaces.",
    )
    parser.add_argument("--version", action="version", version=f"beamlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    grid_default = ",".join(str(x) for x in DEFAULT_GRID_SPEC)

    p_sweep = sub.add_parser("sweep", help="evaluate monotones over a transmission grid")
    p_sweep.add_argument("state", nargs="+", help="state specs, e.g. fock:3 coherent:1.0 sup:0.6|0>+0.8|3>@8")
    p_sweep.add_argument("--kind", action="append",
                         help="monotone kind (repeatable): von_neumann, renyi:A, renyi:A..B, "
                              "purity, mixedness, g_concurrence, qcs_witness")
    p_sweep.add_argument("--grid", default=grid_default, help="t_min,t_max,points")
    p_sweep.add_argument("--out", default="out", help="output directory")
    p_sweep.add_argument("--format", choices=["csv", "json"], default="csv")
    p_sweep.add_argument("--plot", action="store_true", help="also render the curves to sweep.png")
    p_sweep.set_defaults(func=cmd_sweep)

    p_verify = sub.add_parser("verify", help="run property checks and write a JSON report")
    p_verify.add_argument("state", nargs="*", help="state specs for targeted checks (default: run the suite)")
    p_verify.add_argument("--suite", choices=["full", "quick"], default="full")
    p_verify.add_argument("--kind", action="append", help="kinds for targeted checks")
    p_verify.add_argument("--check", action="append",
                          choices=sorted(list(CURVE_CHECKS) + list(STATE_CHECKS)),
                          help="checks for targeted mode (default: kind-appropriate set)")
    p_verify.add_argument("--grid", default=grid_default, help="t_min,t_max,points")
    p_verify.add_argument("--tol", action="append", help="override a tolerance, name=value (repeatable)")
    p_verify.add_argument("--seed", type=int, default=None, help="reseed the randomized pair checks")
    p_verify.add_argument("--out", default="out", help="output directory")
    p_verify.add_argument("--plot", action="store_true", help="also render margins to verify.png")
    p_verify.add_argument("--inject-corruption", action="store_true",
                          help="damage one genuine curve first; the run must then fail")
    p_verify.set_defaults(func=cmd_verify)

    p_fig1 = sub.add_parser("fig1", help="Renyi family of the deep Fock state: data, digest, figure")
    p_fig1.add_argument("--grid", default=None, help="t_min,t_max,points (default 0.01,0.99,99)")
    p_fig1.add_argument("--out", default="out", help="output directory")
    p_fig1.add_argument("--format", choices=["csv", "json"], default="csv")
    p_fig1.add_argument("--tol", action="append", help="override a tolerance, name=value")
    p_fig1.add_argument("--no-plot", action="store_true", help="skip rendering fig1.png")
    p_fig1.set_defaults(func=cmd_fig1)

    p_poly = sub.add_parser("poly", help="overlap-polynomial coefficients and reconstruction check")
    p_poly.add_argument("state", nargs="+", help="one state (self-overlap) or two")
    p_poly.add_argument("--grid", default="0,1,21", help="t_min,t_max,points for the check table")
    p_poly.add_argument("--out", default="out", help="output directory")
    p_poly.add_argument("--format", choices=["csv", "json"], default="csv")
    p_poly.add_argument("--tol", action="append", help="override a tolerance, name=value")
    p_poly.add_argument("--plot", action="store_true", help="also render the coefficients")
    p_poly.set_defaults(func=cmd_poly)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except StateSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BeamLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
