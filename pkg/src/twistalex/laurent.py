"""Laurent polynomials over Q(zeta_n) and exact linear algebra over them.

``K[t, 1/t]`` is a Euclidean domain with degree function ``span = maxdeg -
mindeg``; every gcd, determinant and Smith form here is computed exactly and
normalized up to units ``u * t^k``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .coeff import CoefficientError, CycloNumber, root_of_unity

__all__ = [
    "DimensionError",
    "LaurentFraction",
    "LaurentMatrix",
    "LaurentPoly",
    "MinorLimitError",
    "SmithForm",
    "conj_poly",
    "det",
    "gcd_poly",
    "minors_gcd",
    "normalize_assoc",
    "parse_laurent",
    "smith_normal_form",
]


class DimensionError(ValueError):
    pass


class MinorLimitError(RuntimeError):
    """Raised when a minors enumeration exceeds the configured guard."""


class LaurentPoly:
    """Immutable Laurent polynomial ``sum c_k t^k``.

    Stored densely as ``coeffs`` (lowest exponent first) and ``val`` (the
    lowest exponent).  The zero polynomial has empty ``coeffs``.
    """

    __slots__ = ("order", "val", "coeffs")

    def __init__(self, order: int, val: int, coeffs: Sequence[CycloNumber]):
        coeffs = list(coeffs)
        lo = 0
        while lo < len(coeffs) and coeffs[lo].is_zero():
            lo += 1
        hi = len(coeffs)
        while hi > lo and coeffs[hi - 1].is_zero():
            hi -= 1
        self.order = order
        self.coeffs = tuple(coeffs[lo:hi])
        self.val = val + lo if self.coeffs else 0

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, order: int = 1) -> "LaurentPoly":
        return cls(order, 0, ())

    @classmethod
    def one(cls, order: int = 1) -> "LaurentPoly":
        return cls(order, 0, (CycloNumber.one(order),))

    @classmethod
    def monomial(cls, c, k: int = 0, order: int = 1) -> "LaurentPoly":
        if not isinstance(c, CycloNumber):
            c = CycloNumber(order, [c])
        return cls(c.order, k, (c,))

    @classmethod
    def t(cls, order: int = 1) -> "LaurentPoly":
        return cls.monomial(1, 1, order)

    @classmethod
    def from_terms(cls, terms: dict, order: int = 1) -> "LaurentPoly":
        """Build from ``{exponent: coefficient}``."""
        terms = {k: (c if isinstance(c, CycloNumber) else CycloNumber(order, [c]))
                 for k, c in terms.items()}
        if not terms:
            return cls.zero(order)
        lo, hi = min(terms), max(terms)
        zero = CycloNumber.zero(order)
        return cls(order, lo, [terms.get(k, zero) for k in range(lo, hi + 1)])

    @classmethod
    def from_ints(cls, coeffs: Sequence[int], val: int = 0, order: int = 1) -> "LaurentPoly":
        """Coefficients lowest degree first, starting at ``t^val``."""
        return cls(order, val, [CycloNumber(order, [c]) for c in coeffs])

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_unit(self) -> bool:
        return len(self.coeffs) == 1

    @property
    def maxdeg(self) -> int:
        return self.val + len(self.coeffs) - 1

    @property
    def span(self) -> int:
        if not self.coeffs:
            raise ValueError("span of the zero polynomial is undefined")
        return len(self.coeffs) - 1

    def terms(self) -> dict[int, CycloNumber]:
        return {self.val + i: c for i, c in enumerate(self.coeffs) if not c.is_zero()}

    def leading(self) -> CycloNumber:
        return self.coeffs[-1]

    # -- arithmetic --------------------------------------------------------

    def _lift(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.order != self.order:
                raise CoefficientError(
                    f"cannot mix cyclotomic orders {self.order} and {other.order}")
            return other
        if isinstance(other, (int, Fraction, CycloNumber)):
            return LaurentPoly.monomial(other, 0, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        lo = min(self.val, other.val)
        hi = max(self.maxdeg, other.maxdeg)
        out = [CycloNumber.zero(self.order)] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.val - lo + i] = c
        for i, c in enumerate(other.coeffs):
            j = other.val - lo + i
            out[j] = out[j] + c
        return LaurentPoly(self.order, lo, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.order, self.val, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloNumber)):
            if isinstance(other, CycloNumber) and other.order != self.order:
                raise CoefficientError("cyclotomic order mismatch")
            return LaurentPoly(self.order, self.val, [c * other for c in self.coeffs])
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return LaurentPoly.zero(self.order)
        zero = CycloNumber.zero(self.order)
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return LaurentPoly(self.order, self.val + other.val, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_unit():
                raise ValueError(f"{self} is not a unit; cannot take negative power")
            c = self.coeffs[0].inverse()
            return LaurentPoly.monomial(c, -self.val, self.order) ** (-k)
        result = LaurentPoly.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``t^k``."""
        if not self.coeffs:
            return self
        return LaurentPoly(self.order, self.val + k, self.coeffs)

    def unit_inverse(self) -> "LaurentPoly":
        if not self.is_unit():
            raise ValueError(f"{self} is not a unit")
        return LaurentPoly(self.order, -self.val, (self.coeffs[0].inverse(),))

    def __divmod__(self, other: "LaurentPoly"):
        """Euclidean division: ``self = q*other + r`` with span(r) < span(other)."""
        other = self._lift(other)
        if not other.coeffs:
            raise ZeroDivisionError("Laurent division by zero")
        if not self.coeffs:
            return LaurentPoly.zero(self.order), self
        a = list(self.coeffs)
        b = other.coeffs
        nb = len(b)
        if len(a) < nb:
            return LaurentPoly.zero(self.order), self
        inv_lead = b[-1].inverse()
        zero = CycloNumber.zero(self.order)
        q = [zero] * (len(a) - nb + 1)
        for k in range(len(a) - nb, -1, -1):
            c = a[k + nb - 1]
            if c.is_zero():
                continue
            c = c * inv_lead
            q[k] = c
            for j in range(nb):
                if not b[j].is_zero():
                    a[k + j] = a[k + j] - c * b[j]
        quo = LaurentPoly(self.order, self.val - other.val, q)
        rem = LaurentPoly(self.order, self.val, a[: nb - 1])
        return quo, rem

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        q, r = divmod(self, other)
        if r:
            raise ValueError(f"{other} does not divide {self}")
        return q

    def divides(self, other: "LaurentPoly") -> bool:
        """True when ``self`` divides ``other`` (0 divides only 0)."""
        if not self.coeffs:
            return not other.coeffs
        return not (other % self).coeffs

    def conj(self) -> "LaurentPoly":
        """Coefficient conjugation together with ``t -> 1/t``."""
        if not self.coeffs:
            return self
        return LaurentPoly(self.order, -self.maxdeg, [c.conj() for c in reversed(self.coeffs)])

    def subs_power(self, q: int) -> "LaurentPoly":
        """Substitute ``t -> t^q``."""
        if q == 0:
            total = LaurentPoly.zero(self.order)
            for c in self.coeffs:
                total = total + c
            return total
        return LaurentPoly.from_terms({k * q: c for k, c in self.terms().items()}, self.order)

    def __call__(self, x):
        """Evaluate at a nonzero field element."""
        total = CycloNumber.zero(self.order)
        for k, c in self.terms().items():
            total = total + c * (x ** k)
        return total

    # -- comparison / display ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.order == other.order and self.val == other.val and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, CycloNumber)):
            if not other:
                return not self.coeffs
            return self.val == 0 and len(self.coeffs) == 1 and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        return hash((self.val, self.coeffs))

    def __repr__(self):
        return f"LaurentPoly({str(self)!r}, order={self.order})"

    def __str__(self):
        return format_laurent(self)


def format_laurent(p: LaurentPoly) -> str:
    """Serialize as ``c_k*t^k +- ...`` in descending exponent order."""
    if not p.coeffs:
        return "0"
    parts: list[tuple[str, str]] = []
    for k in range(p.maxdeg, p.val - 1, -1):
        c = p.coeffs[k - p.val]
        if c.is_zero():
            continue
        mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        if c.is_monomial():
            sign = "-" if min(c.coords) < 0 else "+"
            cabs = -c if sign == "-" else c
            cs = str(cabs)
            if not mono:
                body = cs
            elif cs == "1":
                body = mono
            else:
                body = f"{cs}*{mono}"
        else:
            sign = "+"
            body = f"({c})" + (f"*{mono}" if mono else "")
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([tz])|(\*\*|[-+*/^()]))")


class _Parser:
    def __init__(self, text: str, order: int, allow_t: bool = True):
        self.text = text
        self.order = order
        self.allow_t = allow_t
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise ValueError(f"unexpected character {text[pos:].strip()[0]!r} "
                                 f"at column {pos + 1} in {text!r}")
            col = m.start() + len(m.group(0)) - len(m.group(0).lstrip()) + 1
            if m.group(1):
                self.tokens.append(("num", m.group(1), col))
            elif m.group(2):
                self.tokens.append(("sym", m.group(2), col))
            else:
                self.tokens.append(("op", "^" if m.group(3) == "**" else m.group(3), col))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", "", len(self.text) + 1)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def fail(self, msg):
        raise ValueError(f"{msg} at column {self.peek()[2]} in {self.text!r}")

    def parse(self) -> LaurentPoly:
        if not self.tokens:
            raise ValueError("empty polynomial")
        value = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected token")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while True:
            kind, tok, _ = self.peek()
            if kind == "op" and tok == "*":
                self.take()
                value = value * self.unary()
            elif kind == "op" and tok == "/":
                self.take()
                den = self.unary()
                if not den.is_unit():
                    self.fail("division only by monomials")
                value = value * den.unit_inverse()
            elif kind in ("num", "sym") or (kind == "op" and tok == "("):
                value = value * self.unary()
            else:
                return value

    def unary(self):
        kind, tok, _ = self.peek()
        if kind == "op" and tok in ("-", "+"):
            self.take()
            v = self.unary()
            return -v if tok == "-" else v
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            sign = 1
            while self.peek()[0] == "op" and self.peek()[1] in "+-":
                if self.take()[1] == "-":
                    sign = -sign
            kind, tok, _ = self.take()
            if kind != "num":
                self.i -= 1
                self.fail("expected integer exponent")
            return base ** (sign * int(tok))
        return base

    def atom(self):
        kind, tok, _ = self.take()
        if kind == "num":
            return LaurentPoly.monomial(int(tok), 0, self.order)
        if kind == "sym":
            if tok == "t":
                if not self.allow_t:
                    self.i -= 1
                    self.fail("symbol t not allowed here")
                return LaurentPoly.t(self.order)
            if self.order == 1:
                self.i -= 1
                self.fail("symbol z used but cyclotomic_order is 1")
            return LaurentPoly.monomial(root_of_unity(self.order, 1), 0, self.order)
        if kind == "op" and tok == "(":
            value = self.expr()
            if self.take()[1] != ")":
                self.i -= 1
                self.fail("expected ')'")
            return value
        self.i -= 1
        self.fail("unexpected token")


def parse_laurent(text, order: int = 1) -> LaurentPoly:
    """Parse the serialization produced by :func:`format_laurent`."""
    if isinstance(text, int) and not isinstance(text, bool):
        return LaurentPoly.monomial(text, 0, order)
    return _Parser(str(text), order).parse()


# -- ring operations ----------------------------------------------------------

def normalize_assoc(p: LaurentPoly) -> LaurentPoly:
    """Canonical representative of the unit class: min exponent 0, monic."""
    if not p.coeffs:
        return p
    lead = p.coeffs[-1]
    if lead == 1 and p.val == 0:
        return p
    inv = lead.inverse()
    return LaurentPoly(p.order, 0, [c * inv for c in p.coeffs])


def gcd_poly(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    a, b = p, q
    while b.coeffs:
        a, b = b, a % b
    return normalize_assoc(a)


def conj_poly(p: LaurentPoly) -> LaurentPoly:
    return p.conj()


def associated(p: LaurentPoly, q: LaurentPoly) -> bool:
    """Equality up to units ``u * t^k``."""
    return normalize_assoc(p) == normalize_assoc(q)


# -- fractions ------------------------------------------------------------------

class LaurentFraction:
    """Reduced quotient of Laurent polynomials, both parts unit-normalized.

    The unit factor is discarded: fractions are only meaningful up to
    ``u * t^k``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None:
            den = LaurentPoly.one(num.order)
        if not den.coeffs:
            raise ZeroDivisionError("fraction with zero denominator")
        if not num.coeffs:
            self.num, self.den = num, LaurentPoly.one(num.order)
            return
        g = gcd_poly(num, den)
        if not g.is_unit():
            num, den = num.exact_div(g), den.exact_div(g)
        self.num = normalize_assoc(num)
        self.den = normalize_assoc(den)

    @property
    def order(self) -> int:
        return self.num.order

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_unit()

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            other = LaurentFraction(other)
        return LaurentFraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, LaurentPoly):
            other = LaurentFraction(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero fraction")
        return LaurentFraction(self.num * other.den, self.den * other.num)

    def __pow__(self, k: int):
        if k >= 0:
            return LaurentFraction(self.num ** k, self.den ** k)
        if self.is_zero():
            raise ZeroDivisionError("negative power of zero")
        return LaurentFraction(self.den ** (-k), self.num ** (-k))

    def conj(self) -> "LaurentFraction":
        return LaurentFraction(self.num.conj(), self.den.conj())

    def __eq__(self, other):
        """Equality up to units (both sides are normalized)."""
        if isinstance(other, LaurentPoly):
            other = LaurentFraction(other)
        if isinstance(other, LaurentFraction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, CycloNumber)):
            return self == LaurentFraction(LaurentPoly.monomial(other, 0, self.order))
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"LaurentFraction({str(self)!r})"

    def __str__(self):
        if self.den.is_unit():
            return str(self.num)
        num = str(self.num)
        if self.num.is_unit() is False and len(self.num.terms()) > 1:
            num = f"({num})"
        return f"{num} / ({self.den})"


# -- matrices -------------------------------------------------------------------

@dataclass
class LaurentMatrix:
    """Dense rectangular matrix of Laurent polynomials."""

    rows: int
    cols: int
    entries: list[list[LaurentPoly]]
    order: int = 1

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[LaurentPoly]], order: int | None = None,
                  cols: int | None = None) -> "LaurentMatrix":
        rows = [list(r) for r in rows]
        if order is None:
            order = next((e.order for r in rows for e in r), 1)
        ncols = len(rows[0]) if rows else (cols or 0)
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged matrix rows")
        return cls(len(rows), ncols, rows, order)

    @classmethod
    def zeros(cls, rows: int, cols: int, order: int = 1) -> "LaurentMatrix":
        z = LaurentPoly.zero(order)
        return cls(rows, cols, [[z] * cols for _ in range(rows)], order)

    @classmethod
    def identity(cls, n: int, order: int = 1) -> "LaurentMatrix":
        m = cls.zeros(n, n, order)
        one = LaurentPoly.one(order)
        for i in range(n):
            m.entries[i][i] = one
        return m

    @classmethod
    def from_ints(cls, rows: Sequence[Sequence[int]], order: int = 1) -> "LaurentMatrix":
        return cls.from_rows([[LaurentPoly.monomial(x, 0, order) for x in r] for r in rows], order)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def copy(self) -> "LaurentMatrix":
        return LaurentMatrix(self.rows, self.cols, [list(r) for r in self.entries], self.order)

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        zero = LaurentPoly.zero(self.order)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a.coeffs:
                        b = other.entries[k][j]
                        if b.coeffs:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return LaurentMatrix(self.rows, other.cols, out, self.order)

    def __add__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch")
        return LaurentMatrix(self.rows, self.cols,
                             [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
                             self.order)

    def __sub__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch")
        return LaurentMatrix(self.rows, self.cols,
                             [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
                             self.order)

    def scale(self, p: LaurentPoly) -> "LaurentMatrix":
        return LaurentMatrix(self.rows, self.cols, [[p * a for a in r] for r in self.entries], self.order)

    def is_zero(self) -> bool:
        return all(not e.coeffs for r in self.entries for e in r)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "LaurentMatrix":
        return LaurentMatrix(len(rows), len(cols),
                             [[self.entries[i][j] for j in cols] for i in rows], self.order)

    def delete_columns(self, cols: Iterable[int]) -> "LaurentMatrix":
        drop = set(cols)
        keep = [j for j in range(self.cols) if j not in drop]
        return self.submatrix(range(self.rows), keep)

    def transpose(self) -> "LaurentMatrix":
        return LaurentMatrix(self.cols, self.rows,
                             [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
                             self.order)

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.entries == other.entries

    def __str__(self):
        return "[" + ",\n ".join("[" + ", ".join(str(e) for e in r) + "]" for r in self.entries) + "]"


def block_matrix(blocks: Sequence[Sequence[LaurentMatrix]], order: int = 1) -> LaurentMatrix:
    """Assemble a matrix from a grid of equally sized blocks."""
    rows: list[list[LaurentPoly]] = []
    for brow in blocks:
        height = brow[0].rows
        for i in range(height):
            rows.append([e for b in brow for e in b.entries[i]])
    return LaurentMatrix.from_rows(rows, order)


def det(m: LaurentMatrix) -> LaurentPoly:
    """Determinant by cofactor expansion (n <= 3) or fraction-free Bareiss elimination."""
    if m.rows != m.cols:
        raise DimensionError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    a = m.entries
    if n == 0:
        return LaurentPoly.one(m.order)
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    if n == 3:
        return (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))
    a = [list(r) for r in a]
    sign = 1
    prev = LaurentPoly.one(m.order)
    for k in range(n - 1):
        if not a[k][k].coeffs:
            swap = next((i for i in range(k + 1, n) if a[i][k].coeffs), None)
            if swap is None:
                return LaurentPoly.zero(m.order)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (piv * a[i][j] - a[i][k] * a[k][j]).exact_div(prev)
        prev = piv
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def minors_gcd(m: LaurentMatrix, k: int, max_minors: int | None = None) -> LaurentPoly:
    """Unit-normalized gcd of all k x k minors; 0 when they all vanish.

    Row and column subsets are visited in lexicographic order and the scan
    stops as soon as the running gcd is a unit.
    """
    if k < 1 or k > min(m.rows, m.cols):
        raise DimensionError(f"minor size {k} out of range for {m.rows}x{m.cols} matrix")
    if max_minors is not None:
        from math import comb
        count = comb(m.rows, k) * comb(m.cols, k)
        if count > max_minors:
            raise MinorLimitError(f"{count} minors of size {k} exceed the limit {max_minors}")
    g = LaurentPoly.zero(m.order)
    for rows in itertools.combinations(range(m.rows), k):
        sub_rows = [m.entries[i] for i in rows]
        if any(all(not e.coeffs for e in r) for r in sub_rows):
            continue
        for cols in itertools.combinations(range(m.cols), k):
            d = det(LaurentMatrix(k, k, [[r[j] for j in cols] for r in sub_rows], m.order))
            if d.coeffs:
                g = gcd_poly(g, d)
                if g.is_unit():
                    return LaurentPoly.one(m.order)
    return g


# -- Smith normal form -----------------------------------------------------------

@dataclass
class SmithForm:
    """``U @ M @ V == diag(factors)`` with ``U``, ``V`` invertible.

    ``U_inv`` is the inverse of ``U``; the transforms are present only when
    requested.
    """

    factors: list[LaurentPoly]
    rank: int
    U: LaurentMatrix | None = None
    V: LaurentMatrix | None = None
    U_inv: LaurentMatrix | None = None
    shape: tuple[int, int] = (0, 0)

    @property
    def nonzero_factors(self) -> list[LaurentPoly]:
        return self.factors[: self.rank]

    def order(self) -> LaurentPoly:
        """Product of the nonzero invariant factors (order of the torsion of the cokernel)."""
        out = None
        for f in self.nonzero_factors:
            out = f if out is None else out * f
        if out is None:
            return LaurentPoly.one(self.factors[0].order if self.factors else 1)
        return normalize_assoc(out)


def smith_normal_form(m: LaurentMatrix, transforms: bool = False) -> SmithForm:
    """Smith normal form over the Euclidean domain K[t, 1/t].

    Pivots are chosen as the nonzero entry of minimal span, ties broken in
    row-major order.  The invariant factors satisfy d_1 | d_2 | ... and are
    unit-normalized.
    """
    order = m.order
    a = [list(r) for r in m.entries]
    nr, nc = m.rows, m.cols
    if transforms:
        U = LaurentMatrix.identity(nr, order).entries
        Ui = LaurentMatrix.identity(nr, order).entries
        V = LaurentMatrix.identity(nc, order).entries
    zero = LaurentPoly.zero(order)

    def swap_rows(i, j):
        if i == j:
            return
        a[i], a[j] = a[j], a[i]
        if transforms:
            U[i], U[j] = U[j], U[i]
            for r in Ui:
                r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        if i == j:
            return
        for r in a:
            r[i], r[j] = r[j], r[i]
        if transforms:
            for r in V:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        a[dst] = [x + c * y if y.coeffs else x for x, y in zip(a[dst], a[src])]
        if transforms:
            U[dst] = [x + c * y if y.coeffs else x for x, y in zip(U[dst], U[src])]
            for r in Ui:
                if r[dst].coeffs:
                    r[src] = r[src] - r[dst] * c

    def add_col(dst, src, c):
        for r in a:
            if r[src].coeffs:
                r[dst] = r[dst] + r[src] * c
        if transforms:
            for r in V:
                if r[src].coeffs:
                    r[dst] = r[dst] + r[src] * c

    def scale_row(i, u):
        inv = u.unit_inverse()
        a[i] = [x * u for x in a[i]]
        if transforms:
            U[i] = [x * u for x in U[i]]
            for r in Ui:
                r[i] = r[i] * inv

    rank = 0
    for s in range(min(nr, nc)):
        best = None
        for i in range(s, nr):
            for j in range(s, nc):
                e = a[i][j]
                if e.coeffs and (best is None or e.span < best[0]):
                    best = (e.span, i, j)
                    if best[0] == 0:
                        break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        swap_rows(s, best[1])
        swap_cols(s, best[2])
        while True:
            dirty = False
            for i in range(s + 1, nr):
                if a[i][s].coeffs:
                    q, r = divmod(a[i][s], a[s][s])
                    add_row(i, s, -q)
                    if r.coeffs:
                        dirty = True
            for j in range(s + 1, nc):
                if a[s][j].coeffs:
                    q, r = divmod(a[s][j], a[s][s])
                    add_col(j, s, -q)
                    if r.coeffs:
                        dirty = True
            if dirty:
                # bring the smallest remaining entry of row/column s to the pivot
                cand = [(a[i][s].span, i, s) for i in range(s + 1, nr) if a[i][s].coeffs]
                cand += [(a[s][j].span, s, j) for j in range(s + 1, nc) if a[s][j].coeffs]
                _, i, j = min(cand)
                if a[s][s].coeffs and a[s][s].span <= _:
                    continue
                if j == s:
                    swap_rows(s, i)
                else:
                    swap_cols(s, j)
                continue
            piv = a[s][s]
            bad = None
            for i in range(s + 1, nr):
                for j in range(s + 1, nc):
                    if a[i][j].coeffs and not piv.divides(a[i][j]):
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(s, bad, LaurentPoly.one(order))
        piv = a[s][s]
        unit = LaurentPoly(order, -piv.val, (piv.leading().inverse(),))
        scale_row(s, unit)
        rank += 1

    factors = [a[i][i] if i < nr and i < nc else zero for i in range(min(nr, nc))]
    result = SmithForm(factors=factors, rank=rank, shape=(nr, nc))
    if transforms:
        result.U = LaurentMatrix(nr, nr, U, order)
        result.U_inv = LaurentMatrix(nr, nr, Ui, order)
        result.V = LaurentMatrix(nc, nc, V, order)
    return result
