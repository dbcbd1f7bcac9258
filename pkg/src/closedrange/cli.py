"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 numerical singularity.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .diagnostics import Thresholds, diagnose_bergman, diagnose_hardy, horowitz_threshold_report
from .disk import HorowitzSpec, Space
from .formats import (
    FormatError, dumps, load_measure, load_sequence, measure_to_data, sequence_to_data,
    series_csv, witness_csv,
)
from .measures import (
    DiscreteMeasure, blaschke_sum, build_mu_Z, build_nu_Z, build_sigma_grid, carleson_constant,
    weight_equivalence_ratio,
)
from .sequences import (
    PointSequence, double_sequence, gen_radial, horowitz_zeros, interpolation_constant,
    separation_constant,
)
from .spectral import (
    LEAST_NORM_LADDER, SECTION_LADDER, IllConditionedError, least_norm_margin,
    reverse_witness, riesz_bounds, section_matrix_spectrum,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_SINGULAR = 3

SIGMA_RESOLUTION = 256


class SingularOutcome(Exception):
    pass


def resolve_measure(spec: str):
    """Load a measure from a file path or a built-in alias."""
    if spec == "sigma":
        return build_sigma_grid(SIGMA_RESOLUTION, SIGMA_RESOLUTION)
    head, _, rest = spec.partition(":")
    if head == "muZ" and rest:
        return build_mu_Z(load_sequence(rest).points)
    if head == "nuZ" and rest:
        return build_nu_Z(load_sequence(rest).points)
    if head == "horowitz" and rest:
        parts = rest.split(":")
        if len(parts) != 2:
            raise ValueError("alias must read horowitz:<p0>:<K>")
        return build_nu_Z(horowitz_zeros(HorowitzSpec(float(parts[0]), int(parts[1]))).points)
    return load_measure(spec)


def _ladder(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"ladder must be comma-separated integers: {text!r}")
    if not values or any(v < 1 for v in values) or values != sorted(set(values)):
        raise argparse.ArgumentTypeError("ladder must be strictly increasing positive integers")
    return values


def _threshold(text: str) -> tuple[str, float]:
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"threshold must read name=value: {text!r}")
    try:
        return name.strip(), float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"threshold value is not a number: {text!r}")


def _thresholds(pairs) -> Thresholds:
    return Thresholds().updated(**dict(pairs or []))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="closedrange", allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        p = sub.add_parser(name, allow_abbrev=False, **kw)
        p.add_argument("--out", type=Path)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        return p

    gen = add("gen", help="generate sequences and measures")
    gen.add_argument("kind", choices=("radial", "horowitz", "double", "muZ", "nuZ", "sigma"))
    gen.add_argument("--ratio", type=float, default=0.5)
    gen.add_argument("--count", type=int, help="radial: point count (default 30); double: leading points kept")
    gen.add_argument("--p0", type=float)
    gen.add_argument("--K", type=int)
    gen.add_argument("--eps-power", type=float, default=2.0)
    gen.add_argument("--sequence")
    gen.add_argument("--nr", type=int, default=SIGMA_RESOLUTION)
    gen.add_argument("--ntheta", type=int, default=SIGMA_RESOLUTION)
    gen.add_argument("--total", type=float, default=1.0)

    analyze = add("analyze", help="Carleson constants and sequence statistics")
    analyze.add_argument("--measure", required=True)
    analyze.add_argument("--alpha", type=int, choices=(1, 2), default=1)
    analyze.add_argument("--levels", type=int, default=10)

    diagnose = add("diagnose", help="closed-range verdict")
    diagnose.add_argument("--measure", required=True)
    diagnose.add_argument("--space", choices=("hardy", "bergman"), default="hardy")
    diagnose.add_argument("--p", type=float, default=2.0)
    diagnose.add_argument("--q", type=float, default=2.0)
    diagnose.add_argument("--levels", type=int, default=10)
    diagnose.add_argument("--ladder", type=_ladder)
    diagnose.add_argument("--threshold", type=_threshold, action="append")

    spectra = add("spectra", help="least-norm, Riesz or section spectra")
    spectra.add_argument("--measure")
    spectra.add_argument("--sequence")
    spectra.add_argument("--space", choices=("hardy", "bergman"), default="hardy")
    spectra.add_argument("--kind", choices=("least-norm", "riesz", "section"))
    spectra.add_argument("--ladder", type=_ladder)

    witness = add("witness", help="reverse-Carleson witness curve")
    witness.add_argument("--measure", required=True)
    witness.add_argument("--space", choices=("hardy", "bergman"), default="hardy")
    witness.add_argument("--sequence", help="path points (sequence file); default ray")

    horowitz = add("horowitz-report", help="Bergman threshold report for Horowitz zeros")
    horowitz.add_argument("--p0", type=float, required=True)
    horowitz.add_argument("--K", type=int, required=True)
    horowitz.add_argument("--levels", type=int, default=10)
    horowitz.add_argument("--ladder", type=_ladder)
    horowitz.add_argument("--threshold", type=_threshold, action="append")
    return parser


def _cmd_gen(args) -> dict:
    kind = args.kind
    if kind == "radial":
        return sequence_to_data(gen_radial(args.ratio, 30 if args.count is None else args.count))
    if kind == "horowitz":
        if args.p0 is None or args.K is None:
            raise ValueError("gen horowitz needs --p0 and --K")
        return sequence_to_data(horowitz_zeros(HorowitzSpec(args.p0, args.K)))
    if kind == "sigma":
        return measure_to_data(build_sigma_grid(args.nr, args.ntheta, args.total))
    if args.sequence is None:
        raise ValueError(f"gen {kind} needs --sequence")
    seq = load_sequence(args.sequence)
    if kind == "double":
        if args.count is not None:
            seq = seq[: args.count]
        return sequence_to_data(double_sequence(seq, args.eps_power))
    builder = build_mu_Z if kind == "muZ" else build_nu_Z
    return measure_to_data(builder(seq.points))


def _cmd_analyze(args) -> dict:
    mu = resolve_measure(args.measure)
    value, per_level = carleson_constant(mu, args.alpha, args.levels)
    out = {
        "measure": "discrete" if isinstance(mu, DiscreteMeasure) else "grid",
        "mass": mu.mass,
        "alpha": args.alpha,
        "levels": args.levels,
        "value": value,
        "per_level": per_level,
    }
    if isinstance(mu, DiscreteMeasure) and len(mu):
        lo, hi = weight_equivalence_ratio(mu, args.alpha)
        seq = PointSequence(mu.points)
        delta, argmin = interpolation_constant(seq)
        out["atoms"] = len(mu)
        out["blaschke_sum"] = blaschke_sum(mu)
        out["weight_equivalence"] = {"min": lo, "max": hi}
        out["interpolation_constant"] = {"value": delta, "argmin": argmin}
        out["separation_constant"] = separation_constant(seq) if len(seq) > 1 else None
    return out


def _cmd_diagnose(args) -> dict:
    mu = resolve_measure(args.measure)
    cfg = _thresholds(args.threshold)
    if args.space == "hardy":
        ladder = args.ladder or LEAST_NORM_LADDER
        return diagnose_hardy(mu, args.p, args.q, cfg, ladder, args.levels).to_dict()
    ladder = args.ladder or SECTION_LADDER
    return diagnose_bergman(mu, args.p, args.q, cfg, ladder, args.levels).to_dict()


def _cmd_spectra(args):
    space = Space(args.space)
    kind = args.kind or ("least-norm" if space is Space.HARDY else "section")
    if (args.measure is None) == (args.sequence is None) and kind != "riesz":
        raise ValueError("spectra needs exactly one of --measure or --sequence")
    if kind == "riesz":
        if args.sequence is not None:
            points = load_sequence(args.sequence).points
        elif args.measure is not None:
            mu = resolve_measure(args.measure)
            if not isinstance(mu, DiscreteMeasure):
                raise ValueError("riesz spectra need a discrete measure or a sequence")
            points = mu.points
        else:
            raise ValueError("riesz spectra need --sequence or --measure")
        ladder = args.ladder or [n for n in SECTION_LADDER if n <= len(points)] or [len(points)]
        report = riesz_bounds(points, space, ladder)
    else:
        if args.measure is None:
            raise ValueError(f"{kind} spectra need --measure")
        mu = resolve_measure(args.measure)
        if kind == "least-norm":
            if not isinstance(mu, DiscreteMeasure):
                raise ValueError("least-norm spectra need a discrete measure")
            ladder = args.ladder and [n for n in args.ladder if n <= len(mu)]
            report = least_norm_margin(mu, space, ladder or None)
        else:
            ladder = args.ladder or list(SECTION_LADDER)
            report = section_matrix_spectrum(mu, ladder[-1], ladder)
    if report.singular:
        raise SingularOutcome(
            f"{report.kind} spectrum is numerically singular (condition {report.condition:.3g})")
    if args.format == "csv":
        return series_csv(report.series)
    return {"space": space.value, **report.to_dict()}


def _cmd_witness(args):
    mu = resolve_measure(args.measure)
    path = load_sequence(args.sequence).points if args.sequence else None
    curve = reverse_witness(mu, path, Space(args.space))
    if args.format == "csv":
        return witness_csv(curve)
    return {
        "space": args.space,
        "mass": mu.mass,
        "curve": [{"re": w.real, "im": w.imag, "value": v} for w, v in curve],
    }


def _cmd_horowitz(args) -> dict:
    cfg = _thresholds(args.threshold)
    ladder = args.ladder or SECTION_LADDER
    return horowitz_threshold_report(args.p0, args.K, ladder, cfg, args.levels).to_dict()


COMMANDS = {
    "gen": _cmd_gen,
    "analyze": _cmd_analyze,
    "diagnose": _cmd_diagnose,
    "spectra": _cmd_spectra,
    "witness": _cmd_witness,
    "horowitz-report": _cmd_horowitz,
}
CSV_COMMANDS = {"spectra", "witness"}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.format == "csv" and args.command not in CSV_COMMANDS:
        print(f"closedrange: csv output is only available for {sorted(CSV_COMMANDS)}",
              file=sys.stderr)
        return EXIT_INVALID
    try:
        result = COMMANDS[args.command](args)
    except (FormatError, ValueError, TypeError, OSError) as exc:
        print(f"closedrange: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (SingularOutcome, IllConditionedError, np.linalg.LinAlgError) as exc:
        print(f"closedrange: singular: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    text = result if isinstance(result, str) else dumps(result, exact=args.command == "gen")
    if args.out is None:
        sys.stdout.write(text)
    else:
        try:
            args.out.write_text(text)
        except OSError as exc:
            print(f"closedrange: error: {exc}", file=sys.stderr)
            return EXIT_INVALID
    return EXIT_OK


def main() -> None:
    sys.exit(run())
