"""Exact arithmetic in Q and in cyclotomic fields Q(zeta_n).

Elements of Q(zeta_n) are stored as dense coordinate vectors in the power
basis 1, z, ..., z^(phi(n)-1), always reduced modulo the n-th cyclotomic
polynomial.  Q itself is the order-1 field (Phi_1 = x - 1, one coordinate).
"""

from __future__ import annotations

import functools
import re
from fractions import Fraction
from typing import Sequence, Union

__all__ = [
    "CoefficientError",
    "CycloNumber",
    "cyclotomic_polynomial",
    "euler_phi",
    "parse_coefficient",
    "root_of_unity",
]

Scalar = Union[int, Fraction]


class CoefficientError(ValueError):
    """Bad coefficient input, order mismatch, or division by zero."""


# -- integer / rational polynomial helpers (lists, low degree first) --------

def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    a = [Fraction(c) for c in a]
    b = _trim([Fraction(c) for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                a[k + j] -= c * bj
    return _trim(q), _trim(a[: len(b) - 1])


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first.

    Computed by dividing x^n - 1 by Phi_d for every proper divisor d of n.
    """
    if n < 1:
        raise CoefficientError(f"cyclotomic order must be positive, got {n}")
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, cyclotomic_polynomial(d))
            assert not rem
    return tuple(int(c) for c in num)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@functools.lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Reduced coordinates of z^k for k = 0 .. max(2*phi - 2, n - 1)."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    top = max(2 * deg - 1, n)
    rows = []
    cur = [Fraction(0)] * deg
    cur[0] = Fraction(1)
    for _ in range(top):
        rows.append(tuple(cur))
        # multiply by z and reduce the overflow using the monic Phi_n
        carry = cur[-1]
        cur = [Fraction(0)] + cur[:-1]
        if carry:
            cur = [c - carry * phi[i] for i, c in enumerate(cur)]
    return tuple(rows)


@functools.lru_cache(maxsize=None)
def _conj_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    table = _power_table(n)
    deg = euler_phi(n)
    return tuple(table[(-k) % n] for k in range(deg))


def _check_order(a: "CycloNumber", b: "CycloNumber") -> None:
    if a.order != b.order:
        raise CoefficientError(
            f"cannot mix cyclotomic orders {a.order} and {b.order}; promote explicitly")


class CycloNumber:
    """Immutable element of Q(zeta_n)."""

    __slots__ = ("order", "coords", "_hash")

    def __init__(self, order: int, coords: Sequence[Scalar]):
        deg = euler_phi(order)
        vals = [Fraction(c) for c in coords]
        if len(vals) > deg:
            vals = _reduce_vector(order, vals)
        vals += [Fraction(0)] * (deg - len(vals))
        self.order = order
        self.coords = tuple(vals)
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_scalar(cls, value: Scalar, order: int = 1) -> "CycloNumber":
        return cls(order, [value])

    @classmethod
    def zero(cls, order: int = 1) -> "CycloNumber":
        return cls(order, [])

    @classmethod
    def one(cls, order: int = 1) -> "CycloNumber":
        return cls(order, [1])

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise CoefficientError(f"{self} is not rational")
        return self.coords[0]

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "CycloNumber":
        if isinstance(other, CycloNumber):
            _check_order(self, other)
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNumber(self.order, [other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNumber(self.order, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.order, [-a for a in self.coords])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNumber(self.order, [a - b for a, b in zip(self.coords, other.coords)])

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloNumber(self.order, [a * other for a in self.coords])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coords, other.coords
        if len(a) == 1:
            return CycloNumber(self.order, [a[0] * b[0]])
        prod = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        return CycloNumber(self.order, _reduce_vector(self.order, prod))

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        if self.is_zero():
            raise CoefficientError("inversion of zero in cyclotomic field")
        if len(self.coords) == 1:
            return CycloNumber(self.order, [1 / self.coords[0]])
        # extended Euclid: find u with u*a == 1 mod Phi_n
        r0, r1 = list(map(Fraction, cyclotomic_polynomial(self.order))), _trim(list(self.coords))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        c = r1[0]
        return CycloNumber(self.order, _reduce_vector(self.order, [x / c for x in s1]))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise CoefficientError("division by zero")
            return CycloNumber(self.order, [a / other for a in self.coords])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloNumber.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "CycloNumber":
        """Complex conjugation z -> z^-1."""
        if len(self.coords) == 1:
            return self
        table = _conj_table(self.order)
        out = [Fraction(0)] * len(self.coords)
        for k, a in enumerate(self.coords):
            if a:
                for j, v in enumerate(table[k]):
                    if v:
                        out[j] += a * v
        return CycloNumber(self.order, out)

    def promote(self, order: int) -> "CycloNumber":
        """Embed into Q(zeta_order); requires self.order | order."""
        if order % self.order:
            raise CoefficientError(f"cannot promote order {self.order} to {order}")
        step = order // self.order
        table = _power_table(order)
        out = [Fraction(0)] * euler_phi(order)
        for k, a in enumerate(self.coords):
            if a:
                for j, v in enumerate(table[(k * step) % order]):
                    out[j] += a * v
        return CycloNumber(order, out)

    # -- comparison / display ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, CycloNumber):
            return self.order == other.order and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coords[0] if self.is_rational() else self.coords)
        return self._hash

    def __repr__(self):
        return f"CycloNumber({self.order}, {str(self)!r})"

    def __str__(self):
        terms = []
        for k, a in enumerate(self.coords):
            if not a:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if not mono:
                body = _fmt_rational(abs(a))
            elif abs(a) == 1:
                body = mono
            else:
                body = f"{_fmt_rational(abs(a))}*{mono}"
            terms.append(("-" if a < 0 else "+", body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def is_monomial(self) -> bool:
        """True when at most one coordinate is nonzero."""
        return sum(1 for a in self.coords if a) <= 1


def _fmt_rational(a: Fraction) -> str:
    return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _reduce_vector(n: int, vals: Sequence[Fraction]) -> list[Fraction]:
    deg = euler_phi(n)
    if len(vals) <= deg:
        return list(vals)
    table = _power_table(n)
    if len(vals) > len(table):
        _, rem = _poly_divmod(vals, cyclotomic_polynomial(n))
        return rem
    out = list(vals[:deg])
    for k in range(deg, len(vals)):
        a = vals[k]
        if a:
            for j, v in enumerate(table[k]):
                if v:
                    out[j] += a * v
    return out


def root_of_unity(n: int, k: int = 1) -> CycloNumber:
    """zeta_n^k as an element of Q(zeta_n)."""
    table = _power_table(n)
    return CycloNumber(n, table[k % n])


# -- textual encoding ------------------------------------------------------

_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+(?:/\d+)?)\s*(?:\*\s*)?)?
        (?P<z>z(?:\s*\^\s*(?P<exp>-?\d+))?)?\s*""",
    re.VERBOSE,
)


def parse_coefficient(text, order: int = 1) -> CycloNumber:
    """Parse "p/q", "p", or a polynomial in z such as "1/2 + 3*z^2".

    z stands for zeta_order; negative powers are allowed.
    """
    if isinstance(text, CycloNumber):
        if text.order != order:
            raise CoefficientError(f"coefficient has order {text.order}, expected {order}")
        return text
    if isinstance(text, bool):
        raise CoefficientError(f"not a coefficient: {text!r}")
    if isinstance(text, (int, Fraction)):
        return CycloNumber(order, [text])
    s = str(text).strip()
    if not s:
        raise CoefficientError("empty coefficient")
    pos = 0
    total = CycloNumber.zero(order)
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos or not (m.group("coef") or m.group("z")):
            raise CoefficientError(f"malformed coefficient {s!r} at column {pos + 1}")
        if not first and m.group("sign") is None:
            raise CoefficientError(f"missing operator in {s!r} at column {pos + 1}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("sign") == "-":
            coef = -coef
        if m.group("z"):
            if order == 1:
                raise CoefficientError(f"symbol z used in {s!r} but cyclotomic_order is 1")
            exp = int(m.group("exp")) if m.group("exp") else 1
            total = total + root_of_unity(order, exp) * coef
        else:
            total = total + coef
        pos = m.end()
        first = False
    return total
