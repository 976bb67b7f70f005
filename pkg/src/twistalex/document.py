"""Input documents: presentation, twist data and optional curve block.

Documents are YAML (JSON is accepted as a subset).  Every diagnostic is a
:class:`~twistalex.presentation.ParseError` carrying a stable code and the
line/column of the offending node.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import yaml

from .coeff import CoefficientError, parse_coefficient
from .curve import Component, CurveData, Singularity
from .freegroup import Word
from .presentation import (
    BraidWord,
    MonodromyDatum,
    ParseError,
    Presentation,
    closure_presentation,
    infinity_presentation,
    local_group_extraction,
    parse_braid,
    parse_word,
    zvk_presentation,
)
from .repn import Epsilon, Representation, as_matrix, trivial_representation

__all__ = ["Document", "parse_document", "parse_presentation", "load_document"]

TOP_FIELDS = {"cyclotomic_order", "generators", "relators", "braid", "mode", "monodromy",
              "epsilon", "rho", "curve", "components", "name", "description"}


@dataclass
class Document:
    presentation: Presentation
    epsilon: Epsilon
    rho: Representation
    order: int = 1
    curve: CurveData | None = None
    braid: BraidWord | None = None
    monodromy: list[MonodromyDatum] = field(default_factory=list)
    mode: str = "manual"
    explicit_twist: bool = False


class _Node:
    """A plain value paired with its source position."""

    __slots__ = ("value", "line", "col")

    def __init__(self, value, line, col):
        self.value = value
        self.line = line
        self.col = col


def _convert(node: yaml.Node) -> _Node:
    line, col = node.start_mark.line + 1, node.start_mark.column + 1
    if isinstance(node, yaml.MappingNode):
        out = {}
        for k, v in node.value:
            key = _convert(k)
            if not isinstance(key.value, str):
                raise ParseError(f"mapping keys must be strings, got {key.value!r}", "schema",
                                 key.line, key.col)
            if key.value in out:
                raise ParseError(f"duplicate field {key.value!r}", "duplicate-name", key.line, key.col)
            out[key.value] = _convert(v)
        return _Node(out, line, col)
    if isinstance(node, yaml.SequenceNode):
        return _Node([_convert(v) for v in node.value], line, col)
    value = yaml.SafeLoader(" ").construct_object(node) if node.tag != "tag:yaml.org,2002:str" else node.value
    if isinstance(node, yaml.ScalarNode) and node.style in ('"', "'"):
        # quoted scalars point at the quote; content starts one column later
        col += 1
    return _Node(value, line, col)


def _fail(node: _Node, msg: str, code: str = "schema"):
    raise ParseError(msg, code, node.line, node.col)


def _expect(node: _Node, kind, what: str):
    if not isinstance(node.value, kind) or isinstance(node.value, bool) and kind is int:
        _fail(node, f"{what} must be a {getattr(kind, '__name__', kind)}")
    return node.value


def _check_fields(node: _Node, allowed: set[str], required: set[str], what: str) -> dict:
    mapping = _expect(node, dict, what)
    for k, v in mapping.items():
        if k not in allowed:
            _fail(v, f"unknown field {k!r} in {what}", "unknown-field")
    for k in sorted(required):
        if k not in mapping:
            _fail(node, f"missing field {k!r} in {what}", "missing-field")
    return mapping


def _word(node: _Node, names) -> Word:
    text = node.value
    if text is None:
        return Word()
    if isinstance(text, int) and not isinstance(text, bool):
        text = str(text)
    if not isinstance(text, str):
        _fail(node, "words must be strings", "malformed-word")
    try:
        return parse_word(text, names)
    except ParseError as exc:
        raise exc.at(node.line, node.col) from None


def _braid(node: _Node, strands: int) -> BraidWord:
    text = node.value if node.value is not None else ""
    if not isinstance(text, str):
        _fail(node, "braid words must be strings", "malformed-braid")
    try:
        return parse_braid(text, strands)
    except ParseError as exc:
        raise exc.at(node.line, node.col) from None


def _int(node: _Node, what: str) -> int:
    if isinstance(node.value, bool) or not isinstance(node.value, int):
        _fail(node, f"{what} must be an integer")
    return node.value


def _generators(node: _Node) -> tuple[list[str], dict[str, str]]:
    names: list[str] = []
    comps: dict[str, str] = {}
    for item in _expect(node, list, "generators"):
        if isinstance(item.value, dict):
            fields = _check_fields(item, {"name", "component"}, {"name"}, "generator entry")
            name = fields["name"].value
            if "component" in fields:
                comps[str(name)] = str(fields["component"].value)
        else:
            name = item.value
        if not isinstance(name, str) or not name.isidentifier():
            _fail(item, f"invalid generator name {name!r}")
        if name in names:
            _fail(item, f"duplicate generator name {name!r}", "duplicate-name")
        names.append(name)
    return names, comps


def _manual_presentation(doc: dict, root: _Node) -> Presentation:
    if "generators" not in doc:
        _fail(root, "missing field 'generators' (or 'braid')", "missing-field")
    names, comps = _generators(doc["generators"])
    relators = []
    if "relators" in doc and doc["relators"].value is not None:
        for item in _expect(doc["relators"], list, "relators"):
            w = _word(item, names)
            if w:
                relators.append(w)
    return Presentation(names, relators, comps, "manual")


def _monodromy(node: _Node, d: int) -> list[MonodromyDatum]:
    data = []
    for k, item in enumerate(_expect(node, list, "monodromy"), start=1):
        fields = _check_fields(item, {"braid", "conjugators", "multiplicity", "strands",
                                      "local_braid", "label"}, {"braid", "multiplicity"},
                               "monodromy entry")
        braid = _braid(fields["braid"], d)
        m = _int(fields["multiplicity"], "multiplicity")
        names = [f"g{i}" for i in range(1, d + 1)]
        if "strands" in fields:
            strands = [_int(x, "strand index") for x in _expect(fields["strands"], list, "strands")]
        else:
            touched = sorted({abs(x) for x in braid.letters} | {abs(x) + 1 for x in braid.letters})
            strands = touched if len(touched) == m else list(range(1, m + 1))
        if "conjugators" in fields:
            conj = [_word(x, names) for x in _expect(fields["conjugators"], list, "conjugators")]
        else:
            conj = [Word()] * m
        local = None
        if "local_braid" in fields:
            local = _braid(fields["local_braid"], m)
        label = str(fields["label"].value) if "label" in fields else f"P{k}"
        datum = MonodromyDatum(braid, conj, strands, m, local, label)
        try:
            datum.validate(d)
        except ValueError as exc:
            _fail(item, f"monodromy entry {k}: {exc}", "monodromy")
        data.append(datum)
    return data


def _order(doc: dict) -> int:
    if "cyclotomic_order" not in doc:
        return 1
    n = _int(doc["cyclotomic_order"], "cyclotomic_order")
    if n < 1:
        _fail(doc["cyclotomic_order"], "cyclotomic_order must be positive")
    return n


def _epsilon(doc: dict, pres: Presentation) -> Epsilon:
    if "epsilon" not in doc:
        return Epsilon.constant(pres, 1)
    mapping = _expect(doc["epsilon"], dict, "epsilon")
    weights = {}
    for name, v in mapping.items():
        if name not in pres.generators:
            _fail(v, f"epsilon given for unknown generator {name!r}", "unknown-generator")
        weights[name] = _int(v, f"epsilon[{name}]")
    for g in pres.generators:
        if g not in weights:
            _fail(doc["epsilon"], f"epsilon missing generator {g!r}", "missing-field")
    return Epsilon(weights)


def _rho(doc: dict, pres: Presentation, order: int) -> Representation:
    if "rho" not in doc:
        return trivial_representation(pres, order)
    mapping = _expect(doc["rho"], dict, "rho")
    images = {}
    dim = None
    for name, v in mapping.items():
        if name not in pres.generators:
            _fail(v, f"rho given for unknown generator {name!r}", "unknown-generator")
        rows = _expect(v, list, f"rho[{name}]")
        if not rows:
            _fail(v, f"rho[{name}] is empty")
        parsed = []
        for row in rows:
            entries = _expect(row, list, f"row of rho[{name}]")
            out = []
            for e in entries:
                try:
                    out.append(parse_coefficient(e.value, order))
                except CoefficientError as exc:
                    _fail(e, str(exc), "coefficient")
            parsed.append(out)
        n = len(parsed)
        if any(len(r) != n for r in parsed):
            _fail(v, f"rho[{name}] is not square", "rho-shape")
        if dim is None:
            dim = n
        elif dim != n:
            _fail(v, f"rho[{name}] has size {n}, expected {dim}", "rho-shape")
        images[name] = as_matrix(parsed, order)
    for g in pres.generators:
        if g not in images:
            _fail(doc["rho"], f"rho missing generator {g!r}", "missing-field")
    return Representation(dim or 1, order, images)


def _local_presentation(fields: dict, item: _Node) -> Presentation:
    if "braid" in fields:
        bf = _check_fields(fields["braid"], {"strands", "word"}, {"strands"}, "local braid")
        strands = _int(bf["strands"], "strands")
        if strands < 1:
            _fail(bf["strands"], "strands must be positive")
        word = _braid(bf["word"], strands) if "word" in bf else BraidWord(strands)
        pres = closure_presentation(word)
        if "generators" in fields:
            names, _ = _generators(fields["generators"])
            if len(names) != strands:
                _fail(fields["generators"], "generator count differs from the strand count")
            pres = Presentation(names, pres.relators, {}, "closure")
        return pres
    if "generators" not in fields:
        _fail(item, "singularity needs 'generators' or 'braid'", "missing-field")
    return _manual_presentation(fields, item)


def _curve(node: _Node, pres: Presentation, monodromy: list[MonodromyDatum]) -> CurveData:
    fields = _check_fields(node, {"components", "singularities"}, {"components"}, "curve")
    components = []
    for item in _expect(fields["components"], list, "curve components"):
        c = _check_fields(item, {"label", "chi", "q", "meridian", "sing_count"},
                          {"label", "chi", "meridian", "sing_count"}, "curve component")
        q = _int(c["q"], "q") if "q" in c else 1
        components.append(Component(str(c["label"].value), _int(c["chi"], "chi"), q,
                                    _word(c["meridian"], pres.generators),
                                    _int(c["sing_count"], "sing_count")))
    singularities = []
    if "singularities" in fields:
        for item in _expect(fields["singularities"], list, "singularities"):
            s = _check_fields(item, {"label", "infinity", "generators", "relators", "braid",
                                     "inclusion"}, {"label", "inclusion"}, "singularity")
            local = _local_presentation(s, item)
            incl_map = _expect(s["inclusion"], dict, "inclusion")
            inclusion = {}
            for name, w in incl_map.items():
                if name not in local.generators:
                    _fail(w, f"inclusion given for unknown local generator {name!r}",
                          "unknown-generator")
                inclusion[name] = _word(w, pres.generators)
            infinity = False
            if "infinity" in s:
                if not isinstance(s["infinity"].value, bool):
                    _fail(s["infinity"], "infinity must be true or false")
                infinity = s["infinity"].value
            singularities.append(Singularity(str(s["label"].value), local, inclusion, infinity))
    elif monodromy:
        for datum in monodromy:
            try:
                local, inclusion = local_group_extraction(datum)
            except ValueError as exc:
                _fail(node, f"singularity {datum.label}: {exc}", "monodromy")
            singularities.append(Singularity(datum.label, local, inclusion))
        local, inclusion = infinity_presentation(pres.num_generators, monodromy)
        singularities.append(Singularity("infinity", local, inclusion, True))
    else:
        _fail(node, "missing field 'singularities' in curve", "missing-field")
    curve = CurveData(components, singularities)
    try:
        curve.validate(pres)
    except ValueError as exc:
        _fail(node, str(exc), "curve")
    return curve


def _override_components(node: _Node, pres: Presentation) -> Presentation:
    mapping = _expect(node, dict, "components")
    labels = dict(pres.component_of)
    for name, v in mapping.items():
        if name not in pres.generators:
            _fail(v, f"component label for unknown generator {name!r}", "unknown-generator")
        labels[name] = str(v.value)
    return Presentation(pres.generators, pres.relators, labels, pres.provenance)


def parse_document(text: str, relations: str = "reduced") -> Document:
    """Parse one input document.

    ``relations`` selects ``reduced`` (``k = 1 .. m-1``) or ``full`` relator
    sets for monodromy input.
    """
    try:
        root_yaml = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ParseError(f"invalid YAML: {getattr(exc, 'problem', exc)}", "yaml",
                         mark.line + 1 if mark else None, mark.column + 1 if mark else None) from None
    if root_yaml is None:
        raise ParseError("empty document", "schema", 1, 1)
    root = _convert(root_yaml)
    doc = _check_fields(root, TOP_FIELDS, set(), "document")
    order = _order(doc)

    mode = "manual"
    braid = None
    monodromy: list[MonodromyDatum] = []
    if "braid" in doc:
        if "generators" in doc or "relators" in doc:
            _fail(doc["braid"], "give either 'braid' or 'generators'/'relators', not both")
        bf = _check_fields(doc["braid"], {"strands", "word", "mode"}, {"strands"}, "braid")
        strands = _int(bf["strands"], "strands")
        if strands < 1:
            _fail(bf["strands"], "strands must be positive")
        mode_node = bf.get("mode") or doc.get("mode")
        mode = str(mode_node.value) if mode_node is not None else "closure"
        if mode not in ("closure", "zvk"):
            _fail(mode_node, f"mode must be 'closure' or 'zvk', not {mode!r}")
        if mode == "closure":
            braid = _braid(bf["word"], strands) if "word" in bf else BraidWord(strands)
            pres = closure_presentation(braid)
        else:
            if "monodromy" not in doc:
                _fail(doc["braid"], "zvk mode needs a 'monodromy' list", "missing-field")
            monodromy = _monodromy(doc["monodromy"], strands)
            if relations not in ("reduced", "full"):
                raise ValueError(f"relations must be 'reduced' or 'full', not {relations!r}")
            pres = zvk_presentation(strands, monodromy, full=relations == "full")
    else:
        for key in ("monodromy", "mode"):
            if key in doc:
                _fail(doc[key], f"{key!r} requires a 'braid' block")
        pres = _manual_presentation(doc, root)

    if "components" in doc:
        pres = _override_components(doc["components"], pres)
    eps = _epsilon(doc, pres)
    rho = _rho(doc, pres, order)
    curve = _curve(doc["curve"], pres, monodromy) if "curve" in doc else None
    return Document(pres, eps, rho, order, curve, braid, monodromy, mode,
                    explicit_twist="epsilon" in doc or "rho" in doc)


def parse_presentation(text: str, relations: str = "reduced") -> Presentation:
    return parse_document(text, relations).presentation


def load_document(path: str, relations: str = "reduced") -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read(), relations)


def presentation_document(pres: Presentation) -> str:
    """YAML text for a presentation, parseable by :func:`parse_document`."""
    return yaml.safe_dump(pres.to_document(), sort_keys=False, default_flow_style=None, width=100)
