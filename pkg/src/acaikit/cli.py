"""Command-line surface: analyze | failure-table | sweep | oracle.

Vehicle descriptions come from JSON files (azimuths in degrees, spin as
"P"/"N", 1-based rotor numbering) or from named presets, optionally
overridden per rotor with --set etaI=V. Exit codes: 0 controllable /
success, 2 uncontrollable, 1 usage or configuration error, 3 oracle
bound violation.
"""

import argparse
import json
import math
import os
import re
import sys


from .controllability import compute_acai, assess_controllability, FAILED_NONE
from .model import (
    ConfigurationError,
    MultirotorGeometry,
    PRESETS,
    RotorSpec,
    preset,
)
from .numerics import enumerate_combinations
from .oracle import LPSolverError, estimate_acai
from .sweep import run_sweep

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_UNCONTROLLABLE = 2
EXIT_ORACLE_BOUND = 3

_SET_PATTERN = re.compile(r"^eta(\d+)=(.+)$")


def _use_color(stream):
    return stream.isatty() and not os.environ.get("NO_COLOR")


def _fmt_acai(value):
    # keep rounding dust from printing as -0.0000
    return f"{round(value, 4) + 0.0:.4f}"


def _verdict_text(controllable, stream):
    word = "controllable" if controllable else "uncontrollable"
    if _use_color(stream):
        code = "32" if controllable else "31"
        return f"\x1b[{code}m{word}\x1b[0m"
    return word


def _number(obj, field, minimum=None):
    if isinstance(obj, bool) or not isinstance(obj, (int, float)):
        raise ConfigurationError(f"{field}: expected a number, got {obj!r}")
    value = float(obj)
    if minimum is not None and value < minimum:
        raise ConfigurationError(f"{field}: must be >= {minimum}, got {value}")
    return value


def parse_config(cfg, source="config"):
    """Build a geometry from a decoded config document."""
    if not isinstance(cfg, dict):
        raise ConfigurationError(f"{source}: top level must be a JSON object")

    if "preset" in cfg:
        extra = sorted(set(cfg) - {"preset"})
        if extra:
            raise ConfigurationError(
                f"{source}: preset excludes other keys, found {', '.join(extra)}"
            )
        if not isinstance(cfg["preset"], str):
            raise ConfigurationError(f"{source}: preset must be a string")
        return preset(cfg["preset"])

    required = {"mass_kg", "gravity", "inertia", "torque_ratio", "rotors"}
    missing = sorted(required - set(cfg))
    if missing:
        raise ConfigurationError(f"{source}: missing keys: {', '.join(missing)}")

    inertia = cfg["inertia"]
    if not isinstance(inertia, dict) or set(inertia) != {"jx", "jy", "jz"}:
        raise ConfigurationError(
            f"{source}: inertia must be an object with keys jx, jy, jz"
        )

    rotors_cfg = cfg["rotors"]
    if not isinstance(rotors_cfg, list) or not rotors_cfg:
        raise ConfigurationError(f"{source}: rotors must be a non-empty list")

    rotors = []
    for idx, rotor in enumerate(rotors_cfg, start=1):
        where = f"{source}: rotors[{idx}]"
        if not isinstance(rotor, dict):
            raise ConfigurationError(f"{where}: expected an object")
        allowed = {"arm_m", "azimuth_deg", "spin", "max_lift_n", "efficiency"}
        unknown = sorted(set(rotor) - allowed)
        if unknown:
            raise ConfigurationError(f"{where}: unknown keys: {', '.join(unknown)}")
        for key in ("arm_m", "azimuth_deg", "spin", "max_lift_n"):
            if key not in rotor:
                raise ConfigurationError(f"{where}: missing key {key}")
        spin = rotor["spin"]
        if spin not in ("P", "N"):
            raise ConfigurationError(f"{where}.spin: expected 'P' or 'N', got {spin!r}")
        try:
            rotors.append(
                RotorSpec(
                    arm_length=_number(rotor["arm_m"], f"{where}.arm_m"),
                    azimuth=math.radians(_number(rotor["azimuth_deg"], f"{where}.azimuth_deg")),
                    spin=-1 if spin == "P" else 1,
                    max_lift=_number(rotor["max_lift_n"], f"{where}.max_lift_n"),
                    efficiency=_number(rotor.get("efficiency", 1.0), f"{where}.efficiency"),
                )
            )
        except ConfigurationError as exc:
            raise ConfigurationError(f"{where}: {exc}") from None

    try:
        return MultirotorGeometry(
            rotors=tuple(rotors),
            mass=_number(cfg["mass_kg"], f"{source}: mass_kg"),
            gravity=_number(cfg["gravity"], f"{source}: gravity"),
            jx=_number(inertia["jx"], f"{source}: inertia.jx"),
            jy=_number(inertia["jy"], f"{source}: inertia.jy"),
            jz=_number(inertia["jz"], f"{source}: inertia.jz"),
            torque_ratio=_number(cfg["torque_ratio"], f"{source}: torque_ratio"),
        )
    except ConfigurationError as exc:
        raise ConfigurationError(f"{source}: {exc}") from None


def geometry_to_config(geometry):
    """Serialize a geometry back to the JSON config schema."""
    return {
        "mass_kg": geometry.mass,
        "gravity": geometry.gravity,
        "inertia": {"jx": geometry.jx, "jy": geometry.jy, "jz": geometry.jz},
        "torque_ratio": geometry.torque_ratio,
        "rotors": [
            {
                "arm_m": r.arm_length,
                "azimuth_deg": math.degrees(r.azimuth),
                "spin": "P" if r.spin == -1 else "N",
                "max_lift_n": r.max_lift,
                "efficiency": r.efficiency,
            }
            for r in geometry.rotors
        ],
    }


def load_config_file(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigurationError(f"{path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigurationError(
            f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    return parse_config(cfg, source=path)


def _parse_override(text, rotor_count):
    match = _SET_PATTERN.match(text)
    if not match:
        raise ConfigurationError(f"--set expects etaI=V (e.g. eta1=0.5), got {text!r}")
    number = int(match.group(1))
    if not 1 <= number <= rotor_count:
        raise ConfigurationError(
            f"--set {text!r}: rotor {number} out of range 1..{rotor_count}"
        )
    try:
        value = float(match.group(2))
    except ValueError:
        raise ConfigurationError(f"--set {text!r}: {match.group(2)!r} is not a number")
    if not 0.0 <= value <= 1.0:
        raise ConfigurationError(f"--set {text!r}: efficiency must lie in [0, 1]")
    return number - 1, value


def _load_geometry(args):
    if args.preset:
        geometry = preset(args.preset)
    else:
        geometry = load_config_file(args.config)
    for text in args.set or []:
        index, value = _parse_override(text, geometry.rotor_count)
        geometry = geometry.with_efficiency(index, value)
    return geometry


def _limiting_rotors(report, m):
    facet = report.limiting
    if facet is None:
        return None
    tables = enumerate_combinations(m)
    return [int(i) + 1 for i in tables.s1[facet.j]]


def cmd_analyze(args):
    geometry = _load_geometry(args)
    verdict = assess_controllability(geometry)
    report = verdict.report
    limiting = _limiting_rotors(report, geometry.rotor_count)

    if args.format == "json":
        tables = enumerate_combinations(geometry.rotor_count)
        payload = {
            "rotors": geometry.rotor_count,
            "efficiencies": [r.efficiency for r in geometry.rotors],
            "rank_ctrb": report.rank_ctrb,
            "rank_bf": report.rank_bf,
            "acai": report.acai,
            "controllable": verdict.controllable,
            "failed_condition": verdict.failed_condition,
            "limiting_rotors": limiting,
            "facet_distances": [
                {
                    "rotors": [int(i) + 1 for i in tables.s1[f.j]],
                    "d": f.d,
                }
                for f in report.facet_distances
            ],
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"rotors:          {geometry.rotor_count}")
        print(f"rank C(A,B):     {report.rank_ctrb}")
        print(f"rank B_f:        {report.rank_bf}")
        print(f"ACAI:            {_fmt_acai(report.acai)} N")
        print(f"verdict:         {_verdict_text(verdict.controllable, sys.stdout)}")
        if limiting is not None:
            triple = ", ".join(str(i) for i in limiting)
            print(f"limiting rotors: ({triple})")
        if verdict.failed_condition != FAILED_NONE:
            print(f"failed check:    {verdict.failed_condition}")

    return EXIT_OK if verdict.controllable else EXIT_UNCONTROLLABLE


def _failure_cases(geometry):
    yield "no-failure", geometry
    for i in range(geometry.rotor_count):
        yield f"eta{i + 1}=0", geometry.with_efficiency(i, 0.0)


def cmd_failure_table(args):
    geometry = _load_geometry(args)
    rows = []
    for label, case in _failure_cases(geometry):
        verdict = assess_controllability(case)
        rows.append(
            (
                label,
                verdict.rank_ctrb,
                verdict.acai,
                "controllable" if verdict.controllable else "uncontrollable",
            )
        )

    if args.format == "csv":
        print("case,rank,acai,verdict")
        for label, rank, acai, word in rows:
            print(f"{label},{rank},{_fmt_acai(acai)},{word}")
    else:
        print(f"{'case':<12} {'rank':>4} {'acai':>14} verdict")
        for label, rank, acai, word in rows:
            print(f"{label:<12} {rank:>4} {_fmt_acai(acai):>14} {word}")
    return EXIT_OK


def _parse_rotor_list(text, rotor_count):
    try:
        numbers = [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise ConfigurationError(f"--rotors expects comma-separated integers, got {text!r}")
    if not 1 <= len(numbers) <= 3:
        raise ConfigurationError(f"--rotors expects 1 to 3 rotors, got {len(numbers)}")
    if len(set(numbers)) != len(numbers):
        raise ConfigurationError(f"--rotors contains duplicates: {text!r}")
    for n in numbers:
        if not 1 <= n <= rotor_count:
            raise ConfigurationError(f"--rotors: rotor {n} out of range 1..{rotor_count}")
    return [n - 1 for n in numbers]


def cmd_sweep(args):
    geometry = _load_geometry(args)
    varied = _parse_rotor_list(args.rotors, geometry.rotor_count)
    grid = run_sweep(geometry, varied, args.spacing)

    header = ",".join(f"eta_{idx + 1}" for idx, _ in grid.axes)
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(f"{header},acai,controllable\n")
            for row in range(grid.point_count):
                etas = ",".join(format(v, ".10g") for v in grid.eta[row])
                flag = "true" if grid.controllable[row] else "false"
                fh.write(f"{etas},{format(grid.acai[row], '.10g')},{flag}\n")
    except OSError as exc:
        raise ConfigurationError(f"{args.out}: {exc.strerror or exc}") from None

    print(f"wrote {grid.point_count} rows to {args.out}")
    return EXIT_OK


def cmd_oracle(args):
    geometry = _load_geometry(args)
    report = compute_acai(geometry)
    estimate = estimate_acai(geometry, args.directions, args.seed)
    gap = estimate - report.acai
    violated = gap < -1e-9

    if args.format == "json":
        payload = {
            "acai": report.acai,
            "estimate": estimate,
            "gap": gap,
            "directions": args.directions,
            "seed": args.seed,
            "upper_bound_ok": not violated,
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"closed-form ACAI: {_fmt_acai(report.acai)} N")
        print(f"sampled estimate: {_fmt_acai(estimate)} N")
        print(f"gap:              {gap:.6f} N")
        print(f"directions:       {args.directions}")
        print(f"seed:             {args.seed}")

    return EXIT_ORACLE_BOUND if violated else EXIT_OK


def _add_vehicle_arguments(parser):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--preset", choices=sorted(PRESETS), help="built-in geometry")
    group.add_argument("--config", help="path to a JSON vehicle description")
    parser.add_argument(
        "--set",
        action="append",
        metavar="etaI=V",
        help="override rotor I's efficiency (1-based, repeatable)",
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="acaikit",
        description=(
            "Decide positive controllability of a multirotor under rotor "
            "degradation via the available control authority index."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="rank, ACAI and verdict for one vehicle")
    _add_vehicle_arguments(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser(
        "failure-table", help="verdict table: nominal plus each single-rotor failure"
    )
    _add_vehicle_arguments(p)
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.set_defaults(func=cmd_failure_table)

    p = sub.add_parser("sweep", help="grid sweep over 1-3 rotor efficiencies, CSV out")
    _add_vehicle_arguments(p)
    p.add_argument("--rotors", required=True, help="comma-separated rotor numbers, e.g. 1,2,5")
    p.add_argument("--spacing", type=float, default=0.04, help="lattice spacing in [0,1]")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser(
        "oracle", help="compare the closed form against the LP direction-sampling estimate"
    )
    _add_vehicle_arguments(p)
    p.add_argument("--directions", type=int, default=20000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; the contract reserves 2 for verdicts
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LPSolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
