"""Command line entry point.

    vacthrust run SCENARIO [--output PATH] [--format csv|json] [--no-figures]
    vacthrust check-all DIR [--output-dir DIR] [--no-figures]

Exit codes: 0 every check passed, 1 some check failed, 2 usage error,
3 unreadable scenario, 4 schema violation, 5 error raised by a physics module.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

from . import __version__, plotting, report
from .errors import VacthrustError
from .scenario import ConfigParseError, SchemaError, execute, parse_scenario

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 3
EXIT_SCHEMA = 4
EXIT_DOMAIN = 5


def _figure_path(output: Path) -> Path:
    return output.with_suffix(".png")


def run_one(path: Path, output: Path | None, fmt: str | None, figures: bool = True, stream=None) -> int:
    stream = stream if stream is not None else sys.stdout
    try:
        s = parse_scenario(path)
    except ConfigParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SchemaError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    fmt = fmt or s.format
    output = output if output is not None else s.output
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            out = execute(s)
    except SchemaError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except (VacthrustError, ValueError) as exc:
        print(f"error: {path}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    text = report.render(report.build_report(s, out), fmt)
    if output is None:
        stream.write(text)
    else:
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(text, encoding="utf-8")
        if figures:
            plotting.render(out.figure, _figure_path(output))
    return EXIT_OK if out.passed else EXIT_FAIL


def check_all(directory: Path, output_dir: Path | None, figures: bool = True) -> int:
    files = sorted(directory.glob("*.ini"))
    if not files:
        print(f"error: no *.ini scenarios in {directory}", file=sys.stderr)
        return EXIT_PARSE
    output_dir = output_dir if output_dir is not None else directory / "reports"
    worst = EXIT_OK
    counts = {"PASS": 0, "FAIL": 0, "ERROR": 0}
    for f in files:
        try:
            fmt = parse_scenario(f).format
        except (ConfigParseError, SchemaError):
            fmt = "json"
        code = run_one(f, output_dir / f"{f.stem}.{fmt}", None, figures)
        status = {EXIT_OK: "PASS", EXIT_FAIL: "FAIL"}.get(code, "ERROR")
        counts[status] += 1
        print(f"{status:5s} {f.name}")
        if code != EXIT_OK:
            worst = EXIT_FAIL
    print(f"{counts['PASS']} passed, {counts['FAIL']} failed, {counts['ERROR']} errors; reports in {output_dir}")
    return worst


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vacthrust", description="Vacuum pair creation and pair-thruster scenarios.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run one scenario file")
    r.add_argument("scenario", type=Path)
    r.add_argument("--output", type=Path, default=None, help="report path (default: scenario 'output' key, else stdout)")
    r.add_argument("--format", choices=("csv", "json"), default=None)
    r.add_argument("--no-figures", action="store_true", help="skip the PNG written next to the report")

    ca = sub.add_parser("check-all", help="run every *.ini scenario in a directory")
    ca.add_argument("directory", type=Path)
    ca.add_argument("--output-dir", type=Path, default=None, help="where reports go (default: DIR/reports)")
    ca.add_argument("--no-figures", action="store_true")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return run_one(args.scenario, args.output, args.format, not args.no_figures)
    return check_all(args.directory, args.output_dir, not args.no_figures)


if __name__ == "__main__":
    sys.exit(main())
