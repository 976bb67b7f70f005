"""Group presentations, braid words and the presentation compilers.

Braids act on the free group ``F_d = <x_1, ..., x_d>`` through the Artin
automorphisms

    sigma_k : x_k -> x_k x_{k+1} x_k^-1,   x_{k+1} -> x_k,   x_i -> x_i otherwise,

and a braid word ``s_{i1} ... s_{ik}`` acts as the composite
``sigma_{i1} o ... o sigma_{ik}`` so that braid multiplication maps to
composition of automorphisms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .freegroup import Word

__all__ = [
    "BraidWord",
    "MonodromyDatum",
    "ParseError",
    "Presentation",
    "artin_action",
    "artin_generator_images",
    "closure_presentation",
    "local_group_extraction",
    "parse_braid",
    "parse_word",
    "zvk_presentation",
]


class ParseError(ValueError):
    """Malformed input; ``code`` is a stable diagnostic identifier."""

    def __init__(self, message: str, code: str = "parse", line: int | None = None,
                 column: int | None = None):
        self.message = message
        self.code = code
        self.line = line
        self.column = column
        loc = []
        if line is not None:
            loc.append(f"line {line}")
        if column is not None:
            loc.append(f"column {column}")
        super().__init__(f"{message} ({', '.join(loc)})" if loc else message)

    def at(self, line: int | None, column: int | None) -> "ParseError":
        """Re-anchor a string-relative error at a position in the source document."""
        col = column
        if column is not None and self.column is not None:
            col = column + self.column - 1
        return ParseError(self.message, self.code, line, col)


# -- words ---------------------------------------------------------------------

_WORD_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_']*)|(-?\d+)|(\^|\*|\(|\)|\[|\]|,))")


class _WordParser:
    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.index = {n: i + 1 for i, n in enumerate(names)}
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if not text[pos:].strip():
                break
            m = _WORD_TOKEN.match(text, pos)
            if not m:
                col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
                raise ParseError(f"malformed word {text!r}: unexpected character", "malformed-word",
                                 column=col)
            col = m.end() - len(m.group(m.lastindex)) + 1
            kind = ("name", "int", "op")[m.lastindex - 1]
            self.toks.append((kind, m.group(m.lastindex), col))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", "", len(self.text) + 1)

    def fail(self, msg, code="malformed-word"):
        raise ParseError(f"{msg} in word {self.text!r}", code, column=self.peek()[2])

    def parse(self) -> Word:
        if not self.toks or (len(self.toks) == 1 and self.toks[0][1] in ("1", "e")
                             and self.toks[0][1] not in self.index):
            return Word()
        w = self.product()
        if self.peek()[0] != "end":
            self.fail("unexpected token")
        return w

    def product(self) -> Word:
        w = Word()
        while True:
            kind, tok, _ = self.peek()
            if kind == "op" and tok == "*":
                self.i += 1
                continue
            if kind == "name" or (kind == "op" and tok in "([") or (kind == "int" and tok == "1"):
                w = w * self.factor()
            else:
                return w

    def factor(self) -> Word:
        w = self.atom()
        if self.peek()[1] == "^":
            self.i += 1
            kind, tok, _ = self.peek()
            if kind != "int":
                self.fail("expected integer exponent")
            self.i += 1
            w = w ** int(tok)
        return w

    def atom(self) -> Word:
        kind, tok, col = self.peek()
        self.i += 1
        if kind == "int" and tok == "1":
            return Word()
        if kind == "name":
            if tok in self.index:
                return Word.gen(self.index[tok])
            low = tok[0].lower() + tok[1:]
            if tok[0].isupper() and low in self.index:
                return Word.gen(self.index[low], -1)
            self.i -= 1
            self.fail(f"unknown generator {tok!r}", "unknown-generator")
        if kind == "op" and tok == "(":
            w = self.product()
            if self.peek()[1] != ")":
                self.fail("expected ')'")
            self.i += 1
            return w
        if kind == "op" and tok == "[":
            u = self.product()
            if self.peek()[1] != ",":
                self.fail("expected ',' in commutator")
            self.i += 1
            v = self.product()
            if self.peek()[1] != "]":
                self.fail("expected ']'")
            self.i += 1
            return u * v * u.inverse() * v.inverse()
        self.i -= 1
        self.fail("unexpected token")


def parse_word(text: str, names: Sequence[str]) -> Word:
    """Parse a word over the given generator names.

    Accepts whitespace or ``*`` separated letters, capitalized names for
    inverses (``A`` for ``a^-1``), integer powers ``a^-2``, parentheses, and
    commutators ``[u, v] = u v u^-1 v^-1``.  ``1`` or the empty string is the
    identity.
    """
    return _WordParser(str(text), names).parse()


# -- presentations ---------------------------------------------------------------

PROVENANCES = ("manual", "closure", "zvk")


@dataclass
class Presentation:
    generators: list[str]
    relators: list[Word] = field(default_factory=list)
    component_of: dict[str, str] = field(default_factory=dict)
    provenance: str = "manual"

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            dup = next(g for g in self.generators if self.generators.count(g) > 1)
            raise ParseError(f"duplicate generator name {dup!r}", "duplicate-name")
        m = len(self.generators)
        for k, r in enumerate(self.relators):
            bad = [i for i in r.generators() if i > m]
            if bad:
                raise ParseError(f"relator {k + 1} uses undeclared generator index {bad[0]}",
                                 "unknown-generator")
        for g in self.component_of:
            if g not in self.generators:
                raise ParseError(f"component label for undeclared generator {g!r}",
                                 "unknown-generator")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    @property
    def num_relators(self) -> int:
        return len(self.relators)

    def index(self, name: str) -> int:
        """1-based generator index."""
        return self.generators.index(name) + 1

    def word(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def components(self) -> list[str]:
        """Component labels in order of first appearance along the generators."""
        seen: list[str] = []
        for g in self.generators:
            c = self.component_of.get(g)
            if c is not None and c not in seen:
                seen.append(c)
        return seen

    def format_word(self, w: Word) -> str:
        return w.to_string(self.generators)

    def to_document(self) -> dict:
        """Plain-data form accepted back by the input parser."""
        if self.component_of:
            gens = [{"name": g, "component": self.component_of[g]} if g in self.component_of
                    else g for g in self.generators]
        else:
            gens = list(self.generators)
        return {"generators": gens,
                "relators": [self.format_word(r) for r in self.relators]}

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return (self.generators == other.generators and self.relators == other.relators
                and self.component_of == other.component_of)


# -- braids ----------------------------------------------------------------------

@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        for x in self.letters:
            if x == 0 or abs(x) >= self.strands:
                raise ParseError(f"braid generator s{abs(x)} out of range for {self.strands} strands",
                                 "braid-range")

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if other.strands != self.strands:
            raise ValueError("strand count mismatch")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))

    def permutation(self) -> list[int]:
        """0-based images of the strand positions under the underlying permutation."""
        perm = list(range(self.strands))
        for x in self.letters:
            k = abs(x) - 1
            perm[k], perm[k + 1] = perm[k + 1], perm[k]
        return perm

    def cycles(self) -> list[list[int]]:
        perm = self.permutation()
        return _orbits(self.strands, [perm])

    def to_string(self) -> str:
        return " ".join(f"s{x}" if x > 0 else f"S{-x}" for x in self.letters) or "1"


def _orbits(n: int, perms: Sequence[Sequence[int]]) -> list[list[int]]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for i, j in enumerate(p):
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


_BRAID_TOKEN = re.compile(r"\s*([sS])(\d+)(?:\^(-?\d+))?")


def parse_braid(text: str, strands: int) -> BraidWord:
    """Parse ``"s1 s2 S1 s3^-2"`` (``S`` is the inverse generator)."""
    letters: list[int] = []
    s = str(text)
    pos = 0
    if s.strip() in ("", "1"):
        return BraidWord(strands)
    while pos < len(s):
        if not s[pos:].strip():
            break
        m = _BRAID_TOKEN.match(s, pos)
        if not m:
            col = pos + len(s[pos:]) - len(s[pos:].lstrip()) + 1
            raise ParseError(f"malformed braid word {s!r}", "malformed-braid", column=col)
        k = int(m.group(2))
        sign = 1 if m.group(1) == "s" else -1
        power = int(m.group(3)) if m.group(3) else 1
        if k < 1 or k >= strands:
            raise ParseError(f"braid generator s{k} out of range for {strands} strands",
                             "braid-range", column=m.start(1) + 1)
        letters.extend([sign * k if power > 0 else -sign * k] * abs(power))
        pos = m.end()
    return BraidWord(strands, tuple(letters))


def artin_generator_images(b: BraidWord) -> dict[int, Word]:
    """Images of ``x_1 .. x_d`` under the automorphism induced by ``b``."""
    images = {i: Word.gen(i) for i in range(1, b.strands + 1)}
    # phi_b = sigma_{i1} o ... o sigma_{ik}: substitute letters right to left
    for x in reversed(b.letters):
        k = abs(x)
        if x > 0:
            step = {k: Word([k, k + 1, -k]), k + 1: Word([k])}
        else:
            step = {k: Word([k + 1]), k + 1: Word([-(k + 1), k, k + 1])}
        images = {i: w.substitute(step) for i, w in images.items()}
    return images


def artin_action(b: BraidWord, w: Word) -> Word:
    if any(i > b.strands for i in w.generators()):
        raise ValueError("word uses generators beyond the braid's strands")
    return w.substitute(artin_generator_images(b))


def _generator_names(d: int) -> list[str]:
    return [f"g{i}" for i in range(1, d + 1)]


def _labels_from_orbits(names: Sequence[str], orbits: Sequence[Sequence[int]]) -> dict[str, str]:
    out = {}
    for c, orbit in enumerate(orbits, start=1):
        for i in orbit:
            out[names[i]] = f"c{c}"
    return out


def closure_presentation(b: BraidWord, names: Sequence[str] | None = None) -> Presentation:
    """Presentation of the complement of the closed braid.

    Relators ``phi_b(x_j) x_j^-1`` for ``j = 1 .. d-1``; the relation for
    ``j = d`` is a consequence of the others and is dropped.
    """
    d = b.strands
    names = list(names) if names else _generator_names(d)
    images = artin_generator_images(b)
    relators = []
    for j in range(1, d):
        r = images[j] * Word.gen(j, -1)
        if r:
            relators.append(r)
    return Presentation(names, relators, _labels_from_orbits(names, b.cycles()), "closure")


# -- Zariski-van Kampen --------------------------------------------------------

@dataclass
class MonodromyDatum:
    """Braid monodromy around one critical value.

    ``braid`` is the braid on all ``d`` strands; ``local_strands`` lists the
    (1-based) strands collapsing at the singular point; ``conjugators`` are
    the words ``omega_k`` with ``omega_k x_{local_strands[k]} omega_k^-1``
    the local meridians.  ``local_braid`` (on ``multiplicity`` strands) is
    only needed for local extraction when it cannot be read off ``braid``.
    """

    braid: BraidWord
    conjugators: list[Word]
    local_strands: list[int]
    multiplicity: int
    local_braid: BraidWord | None = None
    label: str = ""

    def validate(self, d: int) -> None:
        m = self.multiplicity
        if not 1 <= m <= d:
            raise ValueError(f"multiplicity {m} outside 1..{d}")
        if len(self.conjugators) != m:
            raise ValueError(f"{len(self.conjugators)} conjugators given for multiplicity {m}")
        if len(self.local_strands) != m:
            raise ValueError(f"{len(self.local_strands)} local strands given for multiplicity {m}")
        if len(set(self.local_strands)) != m or any(not 1 <= i <= d for i in self.local_strands):
            raise ValueError(f"invalid local strands {self.local_strands} for {d} strands")
        if self.braid.strands != d:
            raise ValueError(f"braid has {self.braid.strands} strands, expected {d}")
        if self.local_braid is not None and self.local_braid.strands != m:
            raise ValueError("local braid strand count differs from the multiplicity")
        for w in self.conjugators:
            if any(i > d for i in w.generators()):
                raise ValueError("conjugator uses generators beyond the strand count")

    def local_meridians(self) -> list[Word]:
        return [Word.gen(i).conjugate(w) for i, w in zip(self.local_strands, self.conjugators)]


def zvk_presentation(d: int, data: Sequence[MonodromyDatum], full: bool = False,
                     names: Sequence[str] | None = None) -> Presentation:
    """Zariski-van Kampen presentation from braid monodromy data.

    For each datum the relators are ``sigma(g~_k) g~_k^-1`` for
    ``k = 1 .. m-1`` (``1 .. m`` when ``full``), with ``g~_k`` the local
    meridians.  Trivial relators are dropped.
    """
    names = list(names) if names else _generator_names(d)
    relators: list[Word] = []
    perms = []
    for datum in data:
        datum.validate(d)
        images = artin_generator_images(datum.braid)
        meridians = datum.local_meridians()
        count = datum.multiplicity if full else datum.multiplicity - 1
        for g in meridians[:count]:
            r = g.substitute(images) * g.inverse()
            if r:
                relators.append(r)
        perms.append(datum.braid.permutation())
    orbits = _orbits(d, perms) if perms else [[i] for i in range(d)]
    return Presentation(names, relators, _labels_from_orbits(names, orbits), "zvk")


def derive_local_braid(datum: MonodromyDatum) -> BraidWord:
    """The local braid on ``multiplicity`` strands.

    Read off the global braid when it only involves consecutive local strands.
    """
    if datum.local_braid is not None:
        return datum.local_braid
    m = datum.multiplicity
    lo = min(datum.local_strands)
    if sorted(datum.local_strands) != list(range(lo, lo + m)):
        raise ValueError("local strands are not consecutive; give local_braid explicitly")
    letters = datum.braid.letters
    if any(not lo <= abs(x) <= lo + m - 2 for x in letters):
        raise ValueError("braid involves strands outside the local ones; give local_braid explicitly")
    return BraidWord(m, tuple((abs(x) - lo + 1) * (1 if x > 0 else -1) for x in letters))


def local_group_extraction(datum: MonodromyDatum) -> tuple[Presentation, dict[str, Word]]:
    """Local link group at the datum's singular point and its inclusion map.

    Returns the closure presentation of the local braid on generators
    ``g1 .. gm`` and the words (in the global generators) that the local
    meridians map to.
    """
    local = derive_local_braid(datum)
    pres = closure_presentation(local)
    inclusion = dict(zip(pres.generators, datum.local_meridians()))
    return pres, inclusion


def infinity_presentation(d: int, data: Sequence[MonodromyDatum]) -> tuple[Presentation, dict[str, Word]]:
    """Link at infinity: closure of the product of all monodromy braids."""
    product = BraidWord(d)
    for datum in data:
        product = product * datum.braid
    pres = closure_presentation(product)
    return pres, {name: Word.gen(i) for i, name in enumerate(pres.generators, start=1)}
