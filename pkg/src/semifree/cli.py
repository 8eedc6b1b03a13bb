"""Command line front end.

Reads fixed point data or polytopes from a file or standard input,
runs the requested validation, solver or enumeration, and writes a
deterministic UTF-8 report. Exit code 0 means success, 1 means the
input is well-formed but mathematically invalid (validation failure,
no solution, failed check), 2 means the input or command line is
malformed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import delzant
from .algebra import ReducedClass, mul
from .classifier import enumerate_types, euler_chain_check
from .fixed_points import (
    FixedPointData,
    InvalidDataError,
    SchemaError,
    classify_type,
    validate,
)
from .localization import (
    MultipleSolutionsError,
    NoSolutionError,
    abbv_integrate,
    c1_restrictions,
    dh_path,
    format_class,
    solve_restriction_table,
    unit_restrictions,
    w2_vanishes,
)
from .rationals import format_rational, parse_rational

REPORT_SCHEMA = "report.v1"

COMMANDS = (
    "validate",
    "localize",
    "restrict-table",
    "classify",
    "enumerate",
    "polytope-check",
    "polytope-extract",
    "polytope-builtin",
    "dh-check",
)


@dataclass(frozen=True)
class RunConfig:
    """Everything one invocation needs besides the input bytes."""

    command: str
    input_path: str | None = None
    max_genus: int = 3
    b_range: tuple[int, int] = (-6, 6)
    output_format: str = "text"
    builtin_name: str | None = None
    alpha0: Fraction = Fraction(1)
    gaps: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.output_format not in ("text", "structured"):
            raise ValueError(f"unknown output format {self.output_format!r}")


# ---------------------------------------------------------------------------
# input readers


def _read_fpdata(raw: bytes) -> FixedPointData:
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise SchemaError(f"input is not UTF-8: {exc}") from exc
    return FixedPointData.loads(text)


def _read_polytope(raw: bytes) -> delzant.LatticePolytope:
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise SchemaError(f"input is not UTF-8: {exc}") from exc
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise SchemaError("polytope payload must be an object")
    schema = payload.get("schema", delzant.POLYTOPE_SCHEMA)
    if schema != delzant.POLYTOPE_SCHEMA:
        raise SchemaError(f"unsupported polytope schema {schema!r}")
    facets = payload.get("facets")
    if not isinstance(facets, list) or not facets:
        raise SchemaError("facets must be a non-empty list")
    rows = []
    for position, entry in enumerate(facets):
        if not isinstance(entry, dict):
            raise SchemaError(f"facet {position} must be an object")
        normal = entry.get("normal")
        if (
            not isinstance(normal, list)
            or len(normal) != 3
            or not all(isinstance(c, int) and not isinstance(c, bool) for c in normal)
        ):
            raise SchemaError(f"facet {position} normal must be three integers")
        try:
            offset = parse_rational(entry.get("offset", 0))
        except ValueError as exc:
            raise SchemaError(f"facet {position} offset: {exc}") from exc
        rows.append((normal, offset))
    # Geometric failures past this point are exit-code-1 territory.
    return delzant.build(rows)


# ---------------------------------------------------------------------------
# command handlers; each returns (exit code, payload dict, text lines)


def _integral_payload(values: dict[int, Fraction]) -> dict[str, str]:
    return {str(k): format_rational(v) for k, v in sorted(values.items())}


def _format_integral(values: dict[int, Fraction]) -> str:
    if not values:
        return "0"
    return " + ".join(
        f"({format_rational(v)})*λ^{k}" if k else format_rational(v)
        for k, v in sorted(values.items())
    )


def _cmd_validate(data: FixedPointData):
    report = validate(data)
    payload = {
        "ok": report.ok,
        "violations": list(report.violations),
    }
    if report.ok:
        payload["type"] = classify_type(data)
        lines = [f"valid fixed point data, type {payload['type']}"]
    else:
        lines = ["invalid fixed point data:"]
        lines += [f"  - {v}" for v in report.violations]
    return (0 if report.ok else 1), payload, lines


def _cmd_localize(data: FixedPointData):
    report = validate(data)
    if not report.ok:
        return _cmd_validate(data)
    units = unit_restrictions(data)
    c1s = c1_restrictions(data)
    c1sq = tuple(mul(a, a) for a in c1s)
    c1cu = tuple(mul(a, b) for a, b in zip(c1sq, c1s))
    integrals = {
        "1": abbv_integrate(data, units),
        "c_1": abbv_integrate(data, c1s),
        "c_1^2": abbv_integrate(data, c1sq),
        "c_1^3": abbv_integrate(data, c1cu),
    }
    ok = all(integrals[name] == {} for name in ("1", "c_1", "c_1^2"))
    payload = {
        "relations_hold": ok,
        "integrals": {
            name: _integral_payload(values)
            for name, values in integrals.items()
        },
    }
    lines = [
        f"integral of {name}: {_format_integral(values)}"
        for name, values in integrals.items()
    ]
    lines.append(
        "localization relations hold"
        if ok
        else "localization relations fail: some integral below top degree is nonzero"
    )
    return (0 if ok else 1), payload, lines


def _cmd_restrict_table(data: FixedPointData, output_format: str):
    table = solve_restriction_table(data)
    if output_format == "structured":
        return 0, table.to_json_dict(), []
    return 0, {}, table.render_text().rstrip("\n").split("\n")


def _cmd_classify(data: FixedPointData):
    report = validate(data)
    if not report.ok:
        return _cmd_validate(data)
    tag = classify_type(data)
    chain_ok = euler_chain_check(data)
    try:
        w2 = w2_vanishes(data)
    except (InvalidDataError, NoSolutionError, MultipleSolutionsError):
        w2 = None
    payload = {
        "type": tag,
        "twist": data.twist,
        "chain_consistent": chain_ok,
        "w2_vanishes": w2,
    }
    lines = [
        f"type: {tag}",
        f"twist: {'yes' if data.twist else 'no'}",
        f"wall-crossing chain consistent: {'yes' if chain_ok else 'no'}",
        "second Stiefel-Whitney class vanishes: "
        + ("unknown" if w2 is None else "yes" if w2 else "no"),
    ]
    return (0 if chain_ok else 1), payload, lines


def _cmd_enumerate(config: RunConfig, output_format: str):
    result = enumerate_types(max_genus=config.max_genus, b_range=config.b_range)
    if output_format == "structured":
        return 0, result.to_json_dict(), []
    lines = [
        f"bounds: genus <= {config.max_genus}, "
        f"b in [{config.b_range[0]}, {config.b_range[1]}]",
        f"families found: {len(result.families)}",
    ]
    for tag in sorted(result.families):
        members = result.families[tag]
        lines.append(f"  family {tag}: {len(members)} instance(s)")
    lines.append(
        "rejected: "
        + ", ".join(
            f"{stage}={count}" for stage, count in sorted(result.rejected.items())
        )
    )
    return 0, {}, lines


def _cmd_polytope_check(polytope: delzant.LatticePolytope):
    dc = delzant.delzant_check(polytope)
    sc = delzant.semifree_check(polytope)
    payload = {
        "delzant": {
            "ok": dc.ok,
            "vertex_determinants": [list(cert) for cert in dc.certificates],
        },
        "semifree": {"ok": sc.ok, "violations": list(sc.violations)},
    }
    lines = [
        f"vertices: {len(polytope.vertices)}, edges: {len(polytope.edges)}",
        f"smooth (every vertex unimodular): {'yes' if dc.ok else 'no'}",
        f"height circle semi-free: {'yes' if sc.ok else 'no'}",
    ]
    lines += [f"  - {v}" for v in sc.violations]
    ok = dc.ok and sc.ok
    return (0 if ok else 1), payload, lines


def _cmd_polytope_extract(polytope: delzant.LatticePolytope, output_format: str):
    data = delzant.extract_fixed_data(polytope)
    if output_format == "structured":
        return 0, data.to_json_dict(), []
    lines = []
    for component in data.components:
        parts = [
            f"level {format_rational(component.level)}:",
            component.describe(),
        ]
        lines.append(" ".join(parts))
    lines.append(f"type: {classify_type(data)}")
    lines.append(f"twist: {'yes' if data.twist else 'no'}")
    return 0, {}, lines


def _cmd_polytope_builtin(config: RunConfig):
    examples = delzant.builtin_examples()
    name = config.builtin_name
    if name not in examples:
        choices = ", ".join(sorted(examples))
        raise SchemaError(f"unknown builtin {name!r}; choices: {choices}")
    # Always emit the schema document so the output pipes into
    # polytope-extract regardless of the format flag.
    return 0, delzant.polytope_to_json_dict(examples[name]), []


def _format_reduced(cls: ReducedClass) -> str:
    names = ("u",) if len(cls.coeffs) == 1 else ("x", "y")
    parts = [
        f"({format_rational(c)})*{n}"
        for c, n in zip(cls.coeffs, names)
        if c
    ]
    return " + ".join(parts) if parts else "0"


def _cmd_dh_check(data: FixedPointData, config: RunConfig):
    path = dh_path(data, config.alpha0, list(config.gaps))
    payload = {
        "verdict": path.verdict,
        "complete": path.complete,
        "times": [format_rational(t) for t in path.times],
        "classes": [_format_reduced(w) for w in path.omegas],
        "wall_areas": [format_rational(a) for a in path.wall_areas],
        "failures": list(path.failures),
    }
    lines = [f"verdict: {path.verdict}", f"complete sweep: {'yes' if path.complete else 'no'}"]
    for t, w in zip(path.times, path.omegas):
        lines.append(f"  t={format_rational(t)}: {_format_reduced(w)}")
    if path.wall_areas:
        lines.append(
            "wall areas: "
            + ", ".join(format_rational(a) for a in path.wall_areas)
        )
    lines += [f"  - {f}" for f in path.failures]
    return (0 if path.verdict == "positive" else 1), payload, lines


# ---------------------------------------------------------------------------
# driver


def run(config: RunConfig, raw: bytes) -> tuple[int, bytes]:
    """Execute one command; returns (exit code, report bytes)."""
    structured = config.output_format == "structured"
    try:
        if config.command == "validate":
            code, payload, lines = _cmd_validate(_read_fpdata(raw))
        elif config.command == "localize":
            code, payload, lines = _cmd_localize(_read_fpdata(raw))
        elif config.command == "restrict-table":
            code, payload, lines = _cmd_restrict_table(
                _read_fpdata(raw), config.output_format
            )
        elif config.command == "classify":
            code, payload, lines = _cmd_classify(_read_fpdata(raw))
        elif config.command == "enumerate":
            code, payload, lines = _cmd_enumerate(config, config.output_format)
        elif config.command == "polytope-check":
            code, payload, lines = _cmd_polytope_check(_read_polytope(raw))
        elif config.command == "polytope-extract":
            code, payload, lines = _cmd_polytope_extract(
                _read_polytope(raw), config.output_format
            )
        elif config.command == "polytope-builtin":
            code, payload, lines = _cmd_polytope_builtin(config)
        else:
            code, payload, lines = _cmd_dh_check(_read_fpdata(raw), config)
    except SchemaError as exc:
        return 2, _render_error(config, 2, str(exc), structured)
    except (
        InvalidDataError,
        NoSolutionError,
        MultipleSolutionsError,
        delzant.PolytopeError,
    ) as exc:
        return 1, _render_error(config, 1, str(exc), structured)
    except ValueError as exc:
        # Bad argument combinations surfaced by the library (for
        # example more gap durations than there are segments).
        return 2, _render_error(config, 2, str(exc), structured)

    if config.command == "polytope-builtin":
        # Schema document, same in both formats.
        return code, _encode_json(payload)
    if structured:
        if "schema" not in payload:
            payload = {
                "schema": REPORT_SCHEMA,
                "command": config.command,
                **payload,
            }
        return code, _encode_json(payload)
    return code, ("\n".join(lines) + "\n").encode("utf-8")


def _encode_json(payload: dict) -> bytes:
    return (json.dumps(payload, indent=2, sort_keys=True) + "\n").encode("utf-8")


def _render_error(
    config: RunConfig, code: int, message: str, structured: bool
) -> bytes:
    if structured:
        return _encode_json(
            {
                "schema": REPORT_SCHEMA,
                "command": config.command,
                "error": message,
                "exit_code": code,
            }
        )
    return (f"error: {message}\n").encode("utf-8")


# ---------------------------------------------------------------------------
# argument parsing


def _parse_b_range(text: str) -> tuple[int, int]:
    try:
        lo_text, hi_text = text.split("..", 1)
        lo, hi = int(lo_text), int(hi_text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"expected LO..HI integers, got {text!r}"
        ) from exc
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _parse_gaps(text: str) -> tuple[Fraction, ...]:
    if not text.strip():
        return ()
    try:
        return tuple(parse_rational(part.strip()) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _parse_alpha0(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semifree",
        description="Exact checks for semi-free circle actions on "
        "compact six-dimensional Hamiltonian manifolds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, needs_input: bool, help_text: str):
        p = sub.add_parser(name, help=help_text)
        p.add_argument(
            "--format",
            dest="output_format",
            choices=("text", "structured"),
            default="text",
            help="report style (default: text)",
        )
        if needs_input:
            p.add_argument(
                "input",
                nargs="?",
                default=None,
                help="input file (default: standard input)",
            )
        return p

    add("validate", True, "check fixed point data against the shape rules")
    add("localize", True, "evaluate the localized integrals of 1, c_1, c_1^2, c_1^3")
    add("restrict-table", True, "solve the full restriction table")
    add("classify", True, "name the family and run the wall-crossing chain")
    p = add("enumerate", False, "enumerate all families within bounds")
    p.add_argument("--max-genus", type=int, default=3, help="largest genus tried")
    p.add_argument(
        "--b-range",
        type=_parse_b_range,
        default=(-6, 6),
        metavar="LO..HI",
        help="range of normal Euler numbers tried",
    )
    add("polytope-check", True, "check polytope smoothness and semi-freeness")
    add("polytope-extract", True, "read fixed point data off a polytope")
    p = add("polytope-builtin", False, "emit one of the named example polytopes")
    p.add_argument("name", help="builtin name, e.g. type4")
    p = add("dh-check", True, "sweep the reduced symplectic class upward")
    p.add_argument(
        "--alpha0",
        type=_parse_alpha0,
        default=Fraction(1),
        help="initial fiber area (rational, default 1)",
    )
    p.add_argument(
        "--gaps",
        type=_parse_gaps,
        default=(),
        help="comma-separated segment durations from the bottom",
    )
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        input_path=getattr(args, "input", None),
        max_genus=getattr(args, "max_genus", 3),
        b_range=getattr(args, "b_range", (-6, 6)),
        output_format=args.output_format,
        builtin_name=getattr(args, "name", None),
        alpha0=getattr(args, "alpha0", Fraction(1)),
        gaps=tuple(getattr(args, "gaps", ())),
    )


def _merge_dash_values(argv: list[str]) -> list[str]:
    """Join flags with values that start with a dash, e.g. -6..6."""
    merged = []
    skip = False
    for position, token in enumerate(argv):
        if skip:
            skip = False
            continue
        if (
            token in ("--b-range", "--alpha0", "--gaps")
            and position + 1 < len(argv)
            and argv[position + 1].startswith("-")
        ):
            merged.append(f"{token}={argv[position + 1]}")
            skip = True
        else:
            merged.append(token)
    return merged


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_merge_dash_values(list(argv)))
    except SystemExit as exc:
        # argparse exits 2 on bad usage, matching the malformed-input code
        return int(exc.code or 0)
    config = config_from_args(args)
    raw = b""
    needs_input = config.command not in ("enumerate", "polytope-builtin")
    if needs_input:
        if config.input_path:
            try:
                with open(config.input_path, "rb") as handle:
                    raw = handle.read()
            except OSError as exc:
                sys.stderr.write(f"error: cannot read {config.input_path}: {exc}\n")
                return 2
        else:
            raw = sys.stdin.buffer.read()
    code, report = run(config, raw)
    sys.stdout.buffer.write(report)
    sys.stdout.buffer.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
