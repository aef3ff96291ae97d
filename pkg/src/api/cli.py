"""
Command-line front end for the claim verifier.

Flags override values from a --config file, and config-file values
override the environment settings. The report goes to --out or stdout;
logs go to stderr.
"""

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from dotenv import dotenv_values
from pydantic import ValidationError

from ..config import settings
from ..exceptions import (
    ContextMissing,
    DegenerateQuartic,
    NotFound,
    ReportIoError,
    UnknownClaim,
    UsageError,
)
from ..schemas.quartic import Quartic
from ..schemas.report import ClaimStatus, OverallStatus, ReportFormat, RunConfig, SuiteReport
from ..services.claims_service import build_context, run_all
from ..utils.helpers import parse_rational_list

logger = logging.getLogger(__name__)

EXIT_VERIFIED = 0
EXIT_FAILED = 1
EXIT_GATE = 2
EXIT_USAGE = 3
EXIT_IO = 4

# RunConfig field -> command-line flag
FLAGS: Dict[str, str] = {
    "poly": "--poly",
    "search": "--search",
    "claims": "--claims",
    "precision_bits": "--precision-bits",
    "samples": "--samples",
    "seed": "--seed",
    "format": "--format",
    "out": "--out",
    "c_max": "--c-max",
    "k1_max": "--k1-max",
    "omega4": "--omega4",
    "charge_c": "--c",
    "bogomolov_k": "--k",
}

# Config-file keys that differ from the field name
_FILE_ALIASES = {"c": "charge_c", "k": "bogomolov_k"}

_INTEGER_FIELDS = ("search", "precision_bits", "samples", "seed", "c_max", "k1_max", "charge_c", "bogomolov_k")


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting"""

    def error(self, message: str):
        raise UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="hodge-verify",
        description="Verify the Hodge-class claims for an abelian fourfold attached to a quartic.",
    )
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--poly", help="Coefficients a,b,c,d of a x^4 + b x^2 + c x + d")
    source.add_argument("--search", help="Search bound for the first admissible quartic")
    parser.add_argument("--claims", help="Comma-separated claim ids, or 'all'")
    parser.add_argument("--precision-bits", dest="precision_bits", help="Root enclosure precision")
    parser.add_argument("--samples", help="Sample count for numeric fallbacks")
    parser.add_argument("--seed", help="Random seed for numeric fallbacks")
    parser.add_argument("--format", choices=[f.value for f in ReportFormat], help="Report format")
    parser.add_argument("--out", help="Report path (stdout when omitted)")
    parser.add_argument("--c-max", dest="c_max", help="Largest c in the curve bookkeeping search")
    parser.add_argument("--k1-max", dest="k1_max", help="Largest k1 in the curve bookkeeping search")
    parser.add_argument("--omega4", help="Value of <omega^4> as a rational")
    parser.add_argument("--c", dest="charge_c", help="Integer c used for A2 and the bundle E")
    parser.add_argument("--k", dest="bogomolov_k", help="Integer k of the twist L_{k omega}")
    parser.add_argument("--config", help="Flat key=value file mirroring the flags")
    return parser


def _read_config_file(path: str) -> Dict[str, str]:
    """key=value lines; keys may use dashes or underscores"""
    if not Path(path).is_file():
        raise UsageError(f"config file {path} not found", "--config")
    values = {}
    for key, value in dotenv_values(path).items():
        name = key.strip().lower().lstrip("-").replace("-", "_")
        name = _FILE_ALIASES.get(name, name)
        if name not in FLAGS:
            raise UsageError(f"unknown key {key!r} in {path}", "--config")
        if value is not None:
            values[name] = value
    return values


def _parse_poly(text: str) -> Quartic:
    try:
        coefficients = parse_rational_list(text)
    except ValueError as e:
        raise UsageError(f"cannot read {text!r}: {e}", "--poly")
    if len(coefficients) == 5:
        raise UsageError(
            "quartics with a cubic term are not accepted; depress the quartic first "
            "(x -> x - b/(4a)) and pass a,b,c,d of a x^4 + b x^2 + c x + d",
            "--poly",
        )
    if len(coefficients) != 4:
        raise UsageError(f"expected 4 coefficients, got {len(coefficients)}", "--poly")
    if coefficients[0] == 0:
        raise UsageError("leading coefficient a must be nonzero", "--poly")
    a, b, c, d = coefficients
    return Quartic(a=a, b=b, c=c, d=d)


def _parse_claims(text: str) -> List[str]:
    if text.strip().lower() == "all":
        return []
    ids = [part.strip().upper() for part in text.split(",") if part.strip()]
    if not ids:
        raise UsageError("empty claim list", "--claims")
    return ids


def parse_config(argv: Optional[Sequence[str]] = None, config_file: Optional[str] = None) -> RunConfig:
    """
    Build a validated RunConfig from command-line arguments.

    Args:
        argv: Arguments without the program name
        config_file: Path of a key=value file; --config takes precedence

    Returns:
        The merged, validated configuration

    Raises:
        UsageError: any invalid flag or value, naming the flag
    """
    args = vars(_build_parser().parse_args(list(argv or [])))
    path = args.pop("config") or config_file

    values: Dict[str, Any] = _read_config_file(path) if path else {}
    given = {k: v for k, v in args.items() if v is not None}
    if "poly" in given or "search" in given:
        values.pop("poly", None)
        values.pop("search", None)
    values.update(given)
    if "poly" in values and "search" in values:
        raise UsageError("give either --poly or --search, not both", "--poly")
    if "poly" not in values and "search" not in values:
        values["search"] = settings.search_bound

    fields: Dict[str, Any] = {}
    for name, value in values.items():
        if name == "poly":
            fields[name] = _parse_poly(str(value))
        elif name == "claims":
            fields[name] = _parse_claims(str(value))
        elif name in _INTEGER_FIELDS:
            try:
                fields[name] = int(value)
            except ValueError:
                raise UsageError(f"expected an integer, got {value!r}", FLAGS[name])
        else:
            fields[name] = value

    try:
        return RunConfig(**fields)
    except ValidationError as e:
        error = e.errors()[0]
        name = str(error["loc"][0]) if error["loc"] else ""
        raise UsageError(error["msg"], FLAGS.get(name))


# ============================================================================
# REPORT OUTPUT
# ============================================================================


def render_markdown(report: SuiteReport) -> str:
    """Human-readable rendering; the JSON report is the exact record"""
    lines = ["# Claim verification report", ""]
    gate = report.gate
    if gate is not None:
        lines += [
            f"Quartic: `{gate.quartic.label()}` (a x^4 + b x^2 + c x + d)",
            "",
            "| gate check | value |",
            "|---|---|",
            f"| irreducible | {gate.irreducible} |",
            f"| real roots (Sturm) | {gate.real_root_count} |",
            f"| Galois group S4 | {gate.galois_S4} |",
            f"| Delta | {gate.delta} |",
            f"| Delta integral | {gate.delta_integral} |",
            "",
        ]
    lines += [f"Overall: **{report.overall.value}**", ""]
    lines += ["| id | title | status | ms |", "|---|---|---|---|"]
    for c in report.claims:
        lines.append(f"| {c.id} | {c.title} | {c.status.value} | {c.elapsed_ms:.0f} |")
    failed = [c for c in report.claims if c.status == ClaimStatus.FAILED]
    for c in failed:
        lines += ["", f"## {c.id}: {c.anchor}", "", "```json", json.dumps(c.witness, indent=2), "```"]
    lines.append("")
    return "\n".join(lines)


def render(report: SuiteReport, fmt: ReportFormat) -> str:
    if fmt == ReportFormat.MARKDOWN:
        return render_markdown(report)
    return report.model_dump_json(indent=2)


def write_report(text: str, out: Optional[str]) -> None:
    """
    Raises:
        ReportIoError: the output file could not be written
    """
    if out is None:
        sys.stdout.write(text)
        sys.stdout.write("\n")
        return
    try:
        Path(out).write_text(text + "\n", encoding="utf-8")
    except OSError as e:
        raise ReportIoError(f"cannot write report to {out}: {e}")
    logger.info(f"Report written to {out}")


def exit_code(report: SuiteReport) -> int:
    return {
        OverallStatus.VERIFIED: EXIT_VERIFIED,
        OverallStatus.FAILED: EXIT_FAILED,
        OverallStatus.GATE_REJECTED: EXIT_GATE,
    }[report.overall]


def emit_report(report: SuiteReport, config: RunConfig) -> int:
    """Write the report in the configured format and return the exit code"""
    try:
        write_report(render(report, config.format), config.out)
    except ReportIoError as e:
        logger.error(f"Error writing report: {e}")
        return EXIT_IO
    return exit_code(report)


# ============================================================================
# ENTRY
# ============================================================================


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse, verify, report. Returns the process exit code."""
    try:
        config = parse_config(argv)
    except UsageError as e:
        logger.error(f"Usage error: {e}")
        return EXIT_USAGE

    start = time.perf_counter()
    try:
        ctx = build_context(
            config.poly,
            config.search,
            precision_bits=config.precision_bits,
            samples=config.samples,
            seed=config.seed,
            charge_c=config.charge_c,
            bogomolov_k=config.bogomolov_k,
            c_max=config.c_max,
            k1_max=config.k1_max,
            omega4=config.omega4,
        )
        claims = run_all(ctx, config.claims)
    except (UnknownClaim, ContextMissing) as e:
        logger.error(f"Usage error: {e}")
        return EXIT_USAGE
    except (DegenerateQuartic, NotFound) as e:
        logger.error(f"No admissible quartic: {e}")
        return EXIT_GATE

    total = (time.perf_counter() - start) * 1000
    report = SuiteReport.assemble(config, ctx.gate, claims, total)
    logger.info(f"Overall status {report.overall.value} after {total:.0f} ms")
    return emit_report(report, config)
