"""Stable text and structured (JSON) rendering of engine results.

Each report is first flattened to an ordered list of ``(field, value)``
pairs; the text form prints them one per line and the structured form is the
same pairs as a JSON object, so the two always carry the same fields.
"""

from __future__ import annotations

import json
from typing import Any, Iterable

from .alexander import InvariantReport
from .curve import ScanEntry, TheoremReport
from .laurent import LaurentFraction, LaurentPoly, normalize_assoc
from .presentation import Presentation
from .repn import ValidationReport

__all__ = [
    "emit",
    "fmt_poly",
    "invariant_fields",
    "presentation_fields",
    "scan_fields",
    "theorem_fields",
    "validation_fields",
]

Fields = list[tuple[str, Any]]


def fmt_poly(p: LaurentPoly | LaurentFraction | None) -> str | None:
    if p is None:
        return None
    if isinstance(p, LaurentFraction):
        return str(p)
    return str(normalize_assoc(p))


def _bool(b: bool | None) -> str:
    return "indeterminate" if b is None else ("true" if b else "false")


def invariant_fields(r: InvariantReport) -> Fields:
    return [
        ("delta0", fmt_poly(r.delta0)),
        ("delta1", fmt_poly(r.delta1)),
        ("delta2", fmt_poly(r.delta2)),
        ("ranks", list(r.ranks)),
        ("delta", fmt_poly(r.delta)),
        ("wada", fmt_poly(r.wada)),
        ("wada_index", r.wada_index),
        ("torsion", fmt_poly(r.torsion)),
        ("h1_torsion", r.h1_torsion),
        ("acyclic", r.acyclic),
        ("notes", list(r.notes)),
    ]


def theorem_fields(r: TheoremReport, corollary: bool = False) -> Fields:
    out: Fields = [
        ("alpha", fmt_poly(r.alpha)),
        ("local", [{"label": label, "delta": fmt_poly(d)} for label, d in r.local_polys]),
        ("lhs", fmt_poly(r.lhs)),
        ("rhs_known", fmt_poly(r.rhs_known)),
        ("residual", fmt_poly(r.residual)),
        ("divisible", r.divisible),
        ("self_conjugate", r.self_conjugate),
        ("unitary", r.unitary),
        ("local_acyclic", dict(r.local_acyclic)),
        ("local_torsion", dict(r.local_torsion)),
        ("global_torsion", r.global_torsion),
    ]
    if corollary:
        out.append(("agrees_with_theorem", r.agrees_with_theorem))
    out.append(("notes", list(r.notes)))
    return out


def scan_fields(order: int, entries: Iterable[ScanEntry]) -> Fields:
    rows = [{"character": e.label, "delta0": fmt_poly(e.delta0), "delta1": fmt_poly(e.delta1),
             "h1_torsion": e.h1_torsion, "member": e.member} for e in entries]
    return [("scan_order", order), ("characters", rows)]


def validation_fields(r: ValidationReport) -> Fields:
    return [("valid", r.ok),
            ("problems", [{"code": code, "message": msg} for code, msg in r.problems])]


def presentation_fields(p: Presentation) -> Fields:
    doc = p.to_document()
    return [("generators", doc["generators"]), ("relators", doc["relators"])]


# -- rendering --------------------------------------------------------------------------

def _scalar(v: Any) -> str:
    if v is None:
        return "undefined"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list) and all(isinstance(x, int) for x in v):
        return " ".join(str(x) for x in v)
    return str(v)


def _text_lines(fields: Fields) -> list[str]:
    d = dict(fields)
    lines: list[str] = []
    for key, value in fields:
        if key == "divisible":
            continue
        if key == "residual" and "divisible" in d:
            lines.append(f"residual: {_scalar(value)}, divisible: {_bool(d['divisible'])}")
        elif key == "torsion" and value is None:
            lines.append("torsion: undefined (H1 not torsion)")
        elif key in ("self_conjugate", "agrees_with_theorem") and value is None:
            lines.append(f"{key}: indeterminate")
        elif key == "notes":
            lines.extend(f"note: {n}" for n in value)
        elif key == "local":
            lines.extend(f"local {x['label']}: {_scalar(x['delta'])}" for x in value)
        elif key == "characters":
            for x in value:
                lines.append(f"character {x['character']}: delta0: {x['delta0']}, "
                             f"delta1: {x['delta1']}, member: {_scalar(x['member'])}")
        elif key == "problems":
            lines.extend(f"problem[{x['code']}]: {x['message']}" for x in value)
        elif isinstance(value, dict):
            inner = ", ".join(f"{k}={_scalar(v)}" for k, v in value.items())
            lines.append(f"{key}: {inner}")
        elif key == "generators":
            names = [g["name"] + (f" ({g['component']})" if "component" in g else "")
                     if isinstance(g, dict) else g for g in value]
            lines.append(f"generators: {', '.join(names)}")
        elif key == "relators":
            lines.append(f"relators: {len(value)}")
            lines.extend(f"  {r}" for r in value)
        else:
            lines.append(f"{key}: {_scalar(value)}")
    return lines


def emit(fields: Fields, mode: str = "text") -> str:
    """Render ``fields`` as text lines or a JSON object (both newline-terminated)."""
    if mode == "structured":
        return json.dumps(dict(fields), indent=2, ensure_ascii=False) + "\n"
    if mode != "text":
        raise ValueError(f"unknown output mode {mode!r}")
    return "\n".join(_text_lines(fields)) + "\n"
