from __future__ import annotations

import argparse
import os
import sys
from typing import Any, List, Optional

from pydantic import BaseModel

from .algebra import build_frobenius, validate_algebra
from .audit import AuditConfig, FrobeniusAudit
from .errors import AxiomFailure, FrobxError
from .interfaces import FrobeniusStep, ReportRenderer
from .loader import AlgebraFile, load_algebra_file
from .models import AuditResult, ReportFormat

from logging import getLogger, basicConfig, WARNING

logger = getLogger("frobx.cli")

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2

COMMANDS = ("validate", "frobenius", "delta", "gram", "ambijunction", "roundtrip", "mate-demo", "tqft")


# -----------------------
# Report models
# -----------------------


class CheckOut(BaseModel):
    name: str
    passed: bool
    witness: List[dict]


class ReportOut(BaseModel):
    command: str
    passed: bool
    checks: List[CheckOut]
    values: dict[str, Any]

    @classmethod
    def of(cls, result: AuditResult) -> ReportOut:
        return cls(
            command=result.command,
            passed=result.passed,
            checks=[CheckOut(name=c.name, passed=c.passed, witness=c.witness_dicts()) for c in result.report],
            values=result.values,
        )


class JsonRenderer:
    def render(self, result: AuditResult) -> str:
        return ReportOut.of(result).model_dump_json(indent=2)


class TextRenderer:
    def render(self, result: AuditResult) -> str:
        if result.command == "tqft" and "invariant" in result.values and "matrix" not in result.values:
            return str(result.values["invariant"])
        lines = [f"== {result.command} =="]
        for c in result.report:
            lines.append(f"  [{'ok' if c.passed else 'FAIL'}] {c.name}")
            for w in c.witnesses:
                lines.append(f"      {w.describe()}")
            if c.note:
                lines.append(f"      {c.note}")
        for k, v in result.values.items():
            lines.append(f"{k}: {_text_value(v)}")
        if len(result.report):
            failed = len(result.report.failures)
            lines.append("all checks pass" if not failed else f"{failed} check(s) failed")
        return "\n".join(lines)


def _text_value(v: Any) -> str:
    if isinstance(v, list) and v and isinstance(v[0], list):
        return "\n" + "\n".join("  [" + ", ".join(map(str, row)) + "]" for row in v)
    if isinstance(v, list):
        return "[" + ", ".join(map(str, v)) + "]"
    return str(v)


def renderer_for(fmt: ReportFormat) -> ReportRenderer:
    return JsonRenderer() if fmt is ReportFormat.JSON else TextRenderer()


def emit_report(result: AuditResult, fmt: ReportFormat = ReportFormat.TEXT) -> str:
    return renderer_for(fmt).render(result)


# -----------------------
# Config
# -----------------------


def _env_int(name: str, default: int) -> int:
    v = os.getenv(name)
    if v is None:
        return default
    try:
        return int(v)
    except ValueError:
        return default


def config_from_env(seed: Optional[int] = None) -> AuditConfig:
    return AuditConfig(
        random_trials=_env_int("FROBX_RANDOM_TRIALS", 100),
        seed=seed if seed is not None else _env_int("FROBX_SEED", 0),
        max_witnesses=_env_int("FROBX_MAX_WITNESSES", 8),
    )


def _configure_logging() -> None:
    basicConfig(level=WARNING, format="[%(levelname)s](%(name)s): %(message)s", force=True)
    level = os.getenv("FROBX_LOG_LEVEL", "WARNING").upper()
    try:
        getLogger("frobx").setLevel(level)
    except ValueError:
        getLogger("frobx").setLevel(WARNING)


# -----------------------
# Commands
# -----------------------


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frobx",
        description="Audit Frobenius structures, ambijunctions, mates and 2D TQFT values of a finite-dimensional algebra.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("path", help="algebra JSON file")
    common.add_argument(
        "--format", choices=[f.value for f in ReportFormat], default=ReportFormat.TEXT.value
    )
    common.add_argument("--seed", type=_nonneg_int, default=None, help="seed for randomized checks")

    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "tqft":
            p.add_argument("--genus", type=_nonneg_int, default=None)
            p.add_argument("--word", default=None, help='cobordism word, e.g. "u | d | m | c"')
    return parser


def _with_structure(afile: AlgebraFile, command: str, cfg: AuditConfig, step: FrobeniusStep) -> AuditResult:
    alg = afile.to_algebra()
    validity = validate_algebra(alg, cfg.max_witnesses)
    if not validity.passed:
        # 公理が崩れた多元環はここで失敗レポートにする
        return AuditResult(command, validity, {"dim": alg.dim})
    fs = build_frobenius(alg, afile.counit_vector(), cfg.max_witnesses)
    return step(fs)


def execute(args: argparse.Namespace) -> AuditResult:
    cfg = config_from_env(args.seed)
    audit = FrobeniusAudit(cfg)
    afile = load_algebra_file(args.path)
    cmd = args.command

    if cmd == "validate":
        return audit.validate(afile.to_algebra())
    if cmd == "gram":
        return audit.gram(afile.to_algebra(), afile.counit_vector())
    if cmd == "tqft":
        if args.genus is None and args.word is None:
            raise FrobxError("tqft needs --genus and/or --word")
        return _with_structure(afile, cmd, cfg, lambda fs: audit.tqft(fs, args.genus, args.word))

    steps: dict[str, FrobeniusStep] = {
        "frobenius": audit.frobenius,
        "delta": audit.delta,
        "ambijunction": audit.ambijunction,
        "roundtrip": audit.roundtrip,
        "mate-demo": lambda fs: audit.mate_demo(fs, args.seed),
    }
    return _with_structure(afile, cmd, cfg, steps[cmd])


def run(argv: Optional[List[str]] = None) -> int:
    _configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT_ERROR

    try:
        result = execute(args)
    except AxiomFailure as e:
        print(f"frobx: {e}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except FrobxError as e:
        print(f"frobx: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    print(emit_report(result, ReportFormat(args.format)))
    if not result.passed:
        for c in result.report.failures:
            logger.warning(f"{result.command}: {c.name} failed")
        return EXIT_CHECK_FAILED
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
