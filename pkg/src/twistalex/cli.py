"""Command-line entry point.

Exit status: 0 on success, 1 when the input or the twist fails validation,
2 when the engine itself fails.  Diagnostics go to stderr only.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Sequence, TextIO

from .alexander import ConsistencyError, WadaError, compute_invariants
from .curve import CurveError, corollary_check, cv_scan, theorem_check
from .document import Document, load_document, presentation_document
from .laurent import DimensionError, MinorLimitError
from .presentation import ParseError, closure_presentation, parse_braid
from .report import (
    emit,
    invariant_fields,
    presentation_fields,
    scan_fields,
    theorem_fields,
    validation_fields,
)
from .repn import validate

__all__ = ["JobSpec", "main", "run"]

COMMANDS = ("compute", "braid2pres", "zvk", "scan-cv", "check-theorem", "check-corollary", "validate")

EXIT_OK, EXIT_INVALID, EXIT_ENGINE = 0, 1, 2


class JobError(Exception):
    def __init__(self, message: str, code: str, status: int = EXIT_INVALID):
        super().__init__(message)
        self.code = code
        self.status = status


@dataclass
class JobSpec:
    command: str
    input: str | None = None
    format: str = "text"
    scan_order: int | None = None
    relations: str = "reduced"
    cross_check: bool = False
    max_minors: int = 10 ** 6
    braid: str | None = None
    strands: int | None = None

    def check(self) -> None:
        if self.command not in COMMANDS:
            raise JobError(f"unknown command {self.command!r}", "usage")
        if self.command == "scan-cv" and self.scan_order is None:
            raise JobError("scan-cv needs --scan-order N", "usage")
        if self.scan_order is not None and self.scan_order < 1:
            raise JobError("--scan-order must be positive", "usage")
        if self.command == "braid2pres" and self.braid is not None:
            if self.strands is None:
                raise JobError("--braid needs --strands", "usage")
        elif self.input is None:
            raise JobError(f"{self.command} needs --input PATH", "usage")


def _load(job: JobSpec) -> Document:
    try:
        return load_document(job.input, job.relations)
    except OSError as exc:
        raise JobError(f"cannot read {job.input}: {exc.strerror}", "io") from None


def _require_valid(doc: Document) -> None:
    report = validate(doc.presentation, doc.epsilon, doc.rho)
    if not report.ok:
        code, msg = report.problems[0]
        more = f" (+{len(report.problems) - 1} more)" if len(report.problems) > 1 else ""
        raise JobError(msg + more, code)


def _require_curve(doc: Document) -> None:
    if doc.curve is None:
        raise JobError("input has no 'curve' block", "missing-curve")


def _dispatch(job: JobSpec, out: TextIO) -> int:
    if job.command == "braid2pres":
        if job.braid is not None:
            pres = closure_presentation(parse_braid(job.braid, job.strands))
        else:
            doc = _load(job)
            if doc.braid is None:
                raise JobError("input has no closure-mode 'braid' block", "missing-braid")
            pres = doc.presentation
        return _emit_presentation(pres, job, out)

    doc = _load(job)
    if job.command == "zvk":
        if doc.mode != "zvk":
            raise JobError("input is not in zvk mode", "missing-monodromy")
        return _emit_presentation(doc.presentation, job, out)

    if job.command == "validate":
        report = validate(doc.presentation, doc.epsilon, doc.rho)
        out.write(emit(validation_fields(report), job.format))
        return EXIT_OK if report.ok else EXIT_INVALID

    if job.command == "compute":
        _require_valid(doc)
        report = compute_invariants(doc.presentation, doc.epsilon, doc.rho,
                                    cross_check=job.cross_check, max_minors=job.max_minors)
        out.write(emit(invariant_fields(report), job.format))
        return EXIT_OK

    if job.command == "scan-cv":
        try:
            entries = cv_scan(doc.presentation, job.scan_order)
        except ValueError as exc:
            raise JobError(str(exc), "scan") from None
        out.write(emit(scan_fields(job.scan_order, entries), job.format))
        return EXIT_OK

    if job.command == "check-theorem":
        _require_curve(doc)
        _require_valid(doc)
        report = theorem_check(doc.curve, doc.presentation, doc.epsilon, doc.rho)
        out.write(emit(theorem_fields(report), job.format))
        return EXIT_OK

    if job.command == "check-corollary":
        _require_curve(doc)
        report = corollary_check(doc.curve, doc.presentation)
        out.write(emit(theorem_fields(report, corollary=True), job.format))
        return EXIT_OK
    raise JobError(f"unknown command {job.command!r}", "usage")


def _emit_presentation(pres, job: JobSpec, out: TextIO) -> int:
    if job.format == "structured":
        out.write(emit(presentation_fields(pres), "structured"))
    else:
        out.write(presentation_document(pres))
    return EXIT_OK


def _diagnose(err: TextIO, code: str, message: str, line=None, column=None) -> None:
    loc = [f"line {line}"] if line is not None else []
    if column is not None:
        loc.append(f"column {column}")
    where = " at " + ", ".join(loc) if loc else ""
    err.write(f"twistalex: error[{code}]{where}: {message}\n")


def run(job: JobSpec, out: TextIO | None = None, err: TextIO | None = None) -> int:
    """Execute one job; returns the exit status."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        job.check()
        return _dispatch(job, out)
    except JobError as exc:
        _diagnose(err, exc.code, str(exc))
        return exc.status
    except ParseError as exc:
        _diagnose(err, exc.code, exc.message, exc.line, exc.column)
        return EXIT_INVALID
    except CurveError as exc:
        _diagnose(err, "curve", str(exc))
        return EXIT_INVALID
    except MinorLimitError as exc:
        _diagnose(err, "minor-limit", str(exc))
        return EXIT_ENGINE
    except ConsistencyError as exc:
        _diagnose(err, "consistency", str(exc))
        return EXIT_ENGINE
    except WadaError as exc:
        _diagnose(err, "wada", str(exc))
        return EXIT_ENGINE
    except (DimensionError, ArithmeticError) as exc:
        _diagnose(err, "engine", str(exc))
        return EXIT_ENGINE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="PATH", help="input document (YAML or JSON)")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--relations", choices=("full", "reduced"), default="reduced",
                        help="relator set for monodromy input")
    common.add_argument("--cross-check", action="store_true",
                        help="evaluate the Wada invariant at every admissible generator")
    common.add_argument("--max-minors", type=int, default=10 ** 6, metavar="COUNT",
                        help="abort minor enumeration beyond COUNT minors")
    parser = argparse.ArgumentParser(
        prog="twistalex",
        description="Twisted Alexander invariants of finitely presented groups.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    sub.add_parser("compute", parents=[common], help="homology orders, Wada invariant, torsion")
    b = sub.add_parser("braid2pres", parents=[common], help="presentation of a braid closure")
    b.add_argument("--braid", help="braid word such as 's1 s1 S2' (instead of --input)")
    b.add_argument("--strands", type=int)
    sub.add_parser("zvk", parents=[common], help="presentation from braid monodromy")
    s = sub.add_parser("scan-cv", parents=[common], help="rank-one character scan")
    s.add_argument("--scan-order", type=int, metavar="N")
    sub.add_parser("check-theorem", parents=[common], help="global/local divisibility check")
    sub.add_parser("check-corollary", parents=[common], help="classical divisibility check")
    sub.add_parser("validate", parents=[common], help="check that the twist is well defined")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    job = JobSpec(command=args.command, input=args.input, format=args.format,
                  scan_order=getattr(args, "scan_order", None), relations=args.relations,
                  cross_check=args.cross_check, max_minors=args.max_minors,
                  braid=getattr(args, "braid", None), strands=getattr(args, "strands", None))
    return run(job)


if __name__ == "__main__":
    sys.exit(main())
