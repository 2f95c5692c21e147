# ================================================================
# modgen/main.py
# ================================================================
"""
Command-line driver for the X mod P generator.

Subcommands:
  gen     : truth data -> spectrum -> polynomials -> verification -> design file + report
  verify  : generate and exhaustively check (optionally cross-check both transform methods)
  stats   : print circuit statistics as JSON
  tables  : one stats row per modulus for a fixed input width

Environment (optional, also read from .env):
  MODGEN_JOBS, MODGEN_VERIFY_CHUNKS, MODGEN_WRAP_COLUMN, MODGEN_LOG_LEVEL, ...

Exit codes: 0 success; 1 verification failure; 2 usage error; 3 resource limit (N_MAX).

Usage:
  python -m modgen gen -n 3 -p 3 --format anf-text
  python -m modgen gen -n 9 -p 7 --format vhdl --out mod7.vhd
  python -m modgen tables -n 10 -p 7 11 13 17 19 23 29 31
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Literal, Optional

import orjson
from dotenv import load_dotenv
from prettytable import PrettyTable
from pydantic import BaseModel, ValidationError

from modgen.config import get_settings
from modgen.hdl_emit import JSON_OPTS, EmitOptions, emit, emit_report
from modgen.pipeline import build_and_verify
from modgen.schemas import ConverterSpec, ModConverter, ResourceLimitError
from modgen.verify import cross_check_methods

LOG = logging.getLogger("modgen")

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


class CliConfig(BaseModel):
    subcommand: Literal["gen", "verify", "stats", "tables"]
    n: int
    p: Optional[int] = None
    moduli: List[int] = []
    method: Literal["fast", "combinatorial"] = "fast"
    format: Literal["vhdl", "verilog", "anf-text", "json"] = "vhdl"
    table_format: Literal["text", "json"] = "text"
    out: Optional[Path] = None
    report: Optional[Path] = None
    entity: str = "mod_p"
    verify: bool = True
    jobs: int = 4
    one_indexed: bool = True
    balanced: bool = False
    wrap: Optional[int] = None
    timings: bool = False
    cross_check: bool = False

    def specs(self) -> List[ConverterSpec]:
        """Every requested instance, validated before any work starts."""
        cap = get_settings().COMBINATORIAL_N_MAX
        if self.method == "combinatorial" and self.n > cap:
            raise ResourceLimitError(f"--method combinatorial is capped at n={cap}, got n={self.n}")
        if self.subcommand == "tables":
            return [ConverterSpec.build(self.n, p) for p in self.moduli]
        if self.p is None:
            raise ValueError(f"{self.subcommand} needs -p")
        return [ConverterSpec.build(self.n, self.p)]

    def emit_options(self) -> EmitOptions:
        return EmitOptions(
            format=self.format,
            entity=self.entity,
            one_indexed=self.one_indexed,
            balanced=self.balanced,
            wrap_column=self.wrap,
            allow_unverified=not self.verify,
        )

    def report_path(self) -> Optional[Path]:
        if self.report is not None:
            return self.report
        if self.out is not None:
            return self.out.with_suffix(".report.json")
        return None


def _write(text: str, path: Optional[Path]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    path.write_text(text, encoding="utf-8")
    LOG.info("Wrote %s (%d bytes)", path, len(text))


def _failed(converter: ModConverter) -> bool:
    return converter.verification is not None and not converter.verification.passed


def _dumps(doc) -> str:
    return orjson.dumps(doc, option=JSON_OPTS).decode("utf-8") + "\n"


# -------- subcommands --------

def run_gen(config: CliConfig, specs: List[ConverterSpec]) -> int:
    spec = specs[0]
    opts = config.emit_options()
    converter = build_and_verify(spec, method=config.method, jobs=config.jobs, verify=config.verify)

    report_path = config.report_path()
    if report_path is not None:
        _write(emit_report(converter, include_timings=config.timings), report_path)

    if _failed(converter):
        LOG.error("Not emitting a design for %s: verification failed", spec.label())
        return EXIT_VERIFY_FAILED
    _write(emit(converter, opts), config.out)
    return EXIT_OK


def run_verify(config: CliConfig, specs: List[ConverterSpec]) -> int:
    spec = specs[0]
    converter = build_and_verify(spec, method=config.method, jobs=config.jobs, verify=True)
    ok = converter.verified
    cross = None
    if config.cross_check:
        cross = cross_check_methods(spec)
        ok = ok and cross
    _write(_dumps({
        "spec": spec.model_dump(),
        "method": converter.method,
        "verification": converter.verification.model_dump(mode="json", by_alias=True),
        "cross_check": cross,
    }), config.out)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def run_stats(config: CliConfig, specs: List[ConverterSpec]) -> int:
    spec = specs[0]
    converter = build_and_verify(spec, method=config.method, jobs=config.jobs, verify=config.verify)
    verification = None
    if converter.verification is not None:
        verification = converter.verification.model_dump(mode="json", by_alias=True, exclude={"elapsed_s"})
    _write(_dumps({
        "spec": spec.model_dump(),
        "method": converter.method,
        "stats": converter.stats.model_dump(),
        "verification": verification,
    }), config.out)
    return EXIT_VERIFY_FAILED if _failed(converter) else EXIT_OK


TABLE_FIELDS = ["P", "delta", "terms", "total terms", "literals", "max degree", "xor depth", "and depth", "verified"]


def _table_row(converter: ModConverter) -> Dict[str, object]:
    st = converter.stats
    if converter.verification is None:
        verified = "skipped"
    else:
        verified = "yes" if converter.verification.passed else "no"
    return {
        "P": converter.spec.p,
        "delta": converter.spec.delta,
        "terms": "/".join(str(t) for t in st.term_counts),
        "total terms": st.total_terms,
        "literals": st.total_literals,
        "max degree": st.max_degree,
        "xor depth": st.xor_depth,
        "and depth": st.and_depth,
        "verified": verified,
    }


def run_tables(config: CliConfig, specs: List[ConverterSpec]) -> int:
    rows = []
    status = EXIT_OK
    for spec in specs:
        converter = build_and_verify(spec, method=config.method, jobs=config.jobs, verify=config.verify)
        if _failed(converter):
            status = EXIT_VERIFY_FAILED
        rows.append(_table_row(converter))

    if config.table_format == "json":
        _write(_dumps({"n": config.n, "rows": rows}), config.out)
    else:
        table = PrettyTable(TABLE_FIELDS)
        for row in rows:
            table.add_row([row[f] for f in TABLE_FIELDS])
        _write(f"X mod P for X[{config.n}:1]\n" + table.get_string() + "\n", config.out)
    return status


COMMANDS: Dict[str, Callable[[CliConfig, List[ConverterSpec]], int]] = {
    "gen": run_gen,
    "verify": run_verify,
    "stats": run_stats,
    "tables": run_tables,
}


# -------- argument parsing --------

def _p_range(text: str) -> List[int]:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}")
    try:
        return list(range(int(lo), int(hi) + 1))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers in lo:hi, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    s = get_settings()

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", type=int, required=True, help="input bit-width")
    common.add_argument("--method", choices=["fast", "combinatorial"], default="fast")
    common.add_argument("--jobs", type=int, default=s.JOBS, help="worker cap")
    common.add_argument("--out", type=Path, default=None, help="output path (stdout if omitted)")
    common.add_argument("--no-verify", action="store_true")
    common.add_argument("-v", "--verbose", action="store_true")
    common.add_argument("-q", "--quiet", action="store_true")

    ap = argparse.ArgumentParser(prog="modgen", description=s.APP_TITLE)
    sub = ap.add_subparsers(dest="subcommand", required=True)

    gen = sub.add_parser("gen", parents=[common], help="generate a verified design file")
    gen.add_argument("-p", type=int, required=True, help="modulus")
    gen.add_argument("--format", choices=["vhdl", "verilog", "anf-text", "json"], default=s.DEFAULT_FORMAT)
    gen.add_argument("--entity", default=s.DEFAULT_ENTITY)
    gen.add_argument("--report", type=Path, default=None)
    gen.add_argument("--zero-indexed", action="store_true")
    gen.add_argument("--balanced", action="store_true", help="balanced XOR trees instead of flat chains")
    gen.add_argument("--wrap", type=int, default=None, help="wrap column (0 = never)")
    gen.add_argument("--timings", action="store_true", help="include elapsed seconds in the report")

    ver = sub.add_parser("verify", parents=[common], help="generate and exhaustively verify")
    ver.add_argument("-p", type=int, required=True)
    ver.add_argument("--cross-check", action="store_true", help="also compare both transform methods")

    st = sub.add_parser("stats", parents=[common], help="circuit statistics as JSON")
    st.add_argument("-p", type=int, required=True)

    tb = sub.add_parser("tables", parents=[common], help="stats table over several moduli")
    tb.add_argument("-p", "--p", dest="p", type=int, nargs="*", default=[], help="moduli")
    tb.add_argument("--p-range", type=_p_range, default=None, help="inclusive lo:hi")
    tb.add_argument("--format", choices=["text", "json"], default="text")
    return ap


def _config_from_args(args: argparse.Namespace) -> CliConfig:
    fields = {
        "subcommand": args.subcommand,
        "n": args.n,
        "method": args.method,
        "jobs": args.jobs,
        "out": args.out,
        "verify": not args.no_verify,
    }
    if args.subcommand == "tables":
        fields["moduli"] = list(args.p) + list(args.p_range or [])
        fields["table_format"] = args.format
    else:
        fields["p"] = args.p
    if args.subcommand == "gen":
        fields.update(
            format=args.format,
            entity=args.entity,
            report=args.report,
            one_indexed=not args.zero_indexed,
            balanced=args.balanced,
            wrap=args.wrap,
            timings=args.timings,
        )
    if args.subcommand == "verify":
        fields["cross_check"] = args.cross_check
    return CliConfig(**fields)


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    s = get_settings()
    args = build_parser().parse_args(argv)

    level = s.LOG_LEVEL
    if args.verbose:
        level = "DEBUG"
    elif args.quiet:
        level = "WARNING"
    logging.basicConfig(level=level, format="%(asctime)s [%(levelname)s] %(message)s")
    LOG.setLevel(level)

    try:
        config = _config_from_args(args)
        specs = config.specs()
        if config.subcommand == "gen":
            config.emit_options()
        if config.jobs < 1:
            raise ValueError(f"--jobs must be >= 1, got {config.jobs}")
    except ResourceLimitError as e:
        LOG.error("Resource limit: %s", e)
        return EXIT_RESOURCE
    except (ValidationError, ValueError) as e:
        LOG.error("Invalid arguments: %s", e)
        return EXIT_USAGE

    LOG.info("=== modgen %s ===  n=%d  moduli=%s", config.subcommand, config.n, [sp.p for sp in specs])
    try:
        return COMMANDS[config.subcommand](config, specs)
    except ResourceLimitError as e:
        LOG.error("Resource limit: %s", e)
        return EXIT_RESOURCE
    except OSError as e:
        LOG.error("Cannot write output: %s", e)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
