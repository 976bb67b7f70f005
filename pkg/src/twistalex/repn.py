"""Twist data: an integer weighting of the generators and a linear representation."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .coeff import CycloNumber, root_of_unity
from .freegroup import Word, eps_of_word
from .laurent import LaurentMatrix, LaurentPoly, det
from .presentation import Presentation

__all__ = [
    "Character",
    "Epsilon",
    "Representation",
    "ValidationReport",
    "direct_sum",
    "is_unitary",
    "phi_of_word",
    "rank1_characters",
    "trivial_representation",
    "validate",
]

Matrix = tuple[tuple[CycloNumber, ...], ...]


# -- constant matrices over Q(zeta_n) ----------------------------------------------

def mat_identity(n: int, order: int) -> Matrix:
    one, zero = CycloNumber.one(order), CycloNumber.zero(order)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for l in range(1, k):
                acc = acc + a[i][l] * b[l][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_inverse(a: Matrix) -> Matrix | None:
    """Gauss-Jordan inverse; ``None`` when singular."""
    n = len(a)
    order = a[0][0].order
    work = [list(row) + list(e) for row, e in zip(a, mat_identity(n, order))]
    for col in range(n):
        piv = next((r for r in range(col, n) if not work[r][col].is_zero()), None)
        if piv is None:
            return None
        work[col], work[piv] = work[piv], work[col]
        inv = work[col][col].inverse()
        work[col] = [x * inv for x in work[col]]
        for r in range(n):
            if r != col and not work[r][col].is_zero():
                c = work[r][col]
                work[r] = [x - c * y for x, y in zip(work[r], work[col])]
    return tuple(tuple(row[n:]) for row in work)


def mat_conj_transpose(a: Matrix) -> Matrix:
    return tuple(tuple(a[j][i].conj() for j in range(len(a))) for i in range(len(a[0])))


def mat_det(a: Matrix) -> CycloNumber:
    m = LaurentMatrix.from_rows([[LaurentPoly.monomial(x, 0) for x in row] for row in a], a[0][0].order)
    d = det(m)
    return d.coeffs[0] if d.coeffs else CycloNumber.zero(a[0][0].order)


def as_matrix(rows: Sequence[Sequence], order: int) -> Matrix:
    return tuple(tuple(x if isinstance(x, CycloNumber) else CycloNumber(order, [x]) for x in r)
                 for r in rows)


def format_matrix(a: Matrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in a]


# -- twist data --------------------------------------------------------------------

@dataclass(frozen=True)
class Epsilon:
    """Integer weight of each generator (the map to Z = <t>)."""

    weights: Mapping[str, int]

    def of_word(self, pres: Presentation, w: Word) -> int:
        return eps_of_word(w, self.vector(pres))

    def vector(self, pres: Presentation) -> list[int]:
        return [self.weights[g] for g in pres.generators]

    @classmethod
    def constant(cls, pres: Presentation, value: int = 1) -> "Epsilon":
        return cls({g: value for g in pres.generators})


@dataclass
class Representation:
    """Images of the generators as invertible ``dim x dim`` matrices over Q(zeta_order)."""

    dim: int
    order: int
    images: dict[str, Matrix]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def image(self, pres: Presentation, w: Word) -> Matrix:
        """rho(w) for a word over ``pres``'s generators."""
        key = (tuple(pres.generators), w)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        mats = self._indexed(pres)
        result = mat_identity(self.dim, self.order)
        for x in w.letters:
            result = mat_mul(result, mats[x])
        self._cache[key] = result
        return result

    def _indexed(self, pres: Presentation) -> dict[int, Matrix]:
        key = tuple(pres.generators)
        hit = self._cache.get(key)
        if hit is None:
            hit = {}
            for i, g in enumerate(pres.generators, start=1):
                m = self.images[g]
                inv = mat_inverse(m)
                if inv is None:
                    raise ValueError(f"image of generator {g!r} is singular")
                hit[i] = m
                hit[-i] = inv
            self._cache[key] = hit
        return hit

    def restrict(self, names: Sequence[str], words: Mapping[str, Word],
                 pres: Presentation) -> "Representation":
        """Pull back along ``local generator -> global word``."""
        return Representation(self.dim, self.order,
                              {n: self.image(pres, words[n]) for n in names})


def trivial_representation(pres: Presentation, order: int = 1) -> Representation:
    one = mat_identity(1, order)
    return Representation(1, order, {g: one for g in pres.generators})


def direct_sum(rho1: Representation, rho2: Representation) -> Representation:
    """Block-diagonal sum on the common generator names."""
    if rho1.order != rho2.order:
        raise ValueError(f"cyclotomic order mismatch: {rho1.order} vs {rho2.order}")
    if set(rho1.images) != set(rho2.images):
        raise ValueError("representations are defined on different generators")
    zero = CycloNumber.zero(rho1.order)
    d1, d2 = rho1.dim, rho2.dim
    images = {}
    for g, a in rho1.images.items():
        b = rho2.images[g]
        rows = [tuple(a[i]) + (zero,) * d2 for i in range(d1)]
        rows += [(zero,) * d1 + tuple(b[i]) for i in range(d2)]
        images[g] = tuple(rows)
    return Representation(d1 + d2, rho1.order, images)


def phi_of_word(pres: Presentation, w: Word, eps: Epsilon, rho: Representation) -> LaurentMatrix:
    """``t^eps(w) * rho(w)`` as a Laurent matrix."""
    k = eps.of_word(pres, w)
    m = rho.image(pres, w)
    return LaurentMatrix(rho.dim, rho.dim,
                         [[LaurentPoly(rho.order, k, (x,)) for x in row] for row in m], rho.order)


def is_unitary(rho: Representation) -> bool:
    """Whether every generator image satisfies ``M^* M = Id`` for the standard hermitian form."""
    ident = mat_identity(rho.dim, rho.order)
    return all(mat_mul(mat_conj_transpose(m), m) == ident for m in rho.images.values())


# -- validation ----------------------------------------------------------------------

@dataclass
class ValidationReport:
    problems: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def add(self, code: str, message: str) -> None:
        self.problems.append((code, message))

    def __bool__(self):
        return self.ok


def validate(pres: Presentation, eps: Epsilon, rho: Representation,
             require_nonzero_weights: bool = False) -> ValidationReport:
    """Check that (eps, rho) is well defined on the presented group.

    Every relator must have weight 0 and image Id, every image must be
    invertible, and the weights must generate Z.
    """
    report = ValidationReport()
    missing = [g for g in pres.generators if g not in eps.weights]
    if missing:
        report.add("epsilon-missing", f"epsilon undefined on {', '.join(missing)}")
    extra = [g for g in eps.weights if g not in pres.generators]
    if extra:
        report.add("epsilon-unknown", f"epsilon given for undeclared {', '.join(extra)}")
    rmissing = [g for g in pres.generators if g not in rho.images]
    if rmissing:
        report.add("rho-missing", f"rho undefined on {', '.join(rmissing)}")
    rextra = [g for g in rho.images if g not in pres.generators]
    if rextra:
        report.add("rho-unknown", f"rho given for undeclared {', '.join(rextra)}")
    if report.problems:
        return report

    weights = eps.vector(pres)
    g = 0
    for w in weights:
        g = math.gcd(g, w)
    if g != 1:
        report.add("epsilon-surjectivity", f"gcd of generator weights is {g}, not 1")
    if require_nonzero_weights:
        zeros = [n for n, w in zip(pres.generators, weights) if w == 0]
        if zeros:
            report.add("epsilon-zero", f"zero weight on meridian(s) {', '.join(zeros)}")

    singular = False
    for name, m in rho.images.items():
        if len(m) != rho.dim or any(len(r) != rho.dim for r in m):
            report.add("rho-shape", f"image of {name} is not {rho.dim}x{rho.dim}")
            singular = True
        elif any(x.order != rho.order for r in m for x in r):
            report.add("rho-order", f"image of {name} is not over Q(zeta_{rho.order})")
            singular = True
        elif mat_inverse(m) is None:
            report.add("rho-singular", f"image of {name} is not invertible")
            singular = True

    ident = mat_identity(rho.dim, rho.order)
    for k, r in enumerate(pres.relators, start=1):
        e = eps_of_word(r, weights)
        if e:
            report.add("relator-epsilon", f"relator {k} ({pres.format_word(r)}) has weight {e}")
        if not singular and rho.image(pres, r) != ident:
            report.add("relator-rho", f"relator {k} ({pres.format_word(r)}) does not map to Id")
    return report


# -- rank one characters ---------------------------------------------------------------

@dataclass
class Character:
    """Rank-one representation constant on each component's meridians.

    ``exponents[l] = k`` means meridians of the l-th component map to
    ``zeta_N^k``.
    """

    components: tuple[str, ...]
    exponents: tuple[int, ...]
    order: int
    rho: Representation

    def label(self) -> str:
        return "(" + ", ".join(f"z^{k}" for k in self.exponents) + ")"


def character_representation(pres: Presentation, exponents: Sequence[int], order: int) -> Representation:
    comps = pres.components()
    images = {}
    for g in pres.generators:
        k = exponents[comps.index(pres.component_of[g])]
        images[g] = ((root_of_unity(order, k),),)
    return Representation(1, order, images)


def rank1_characters(pres: Presentation, n: int, cap: int = 10 ** 4) -> list[Character]:
    """All characters sending meridians of each component to an n-th root of unity.

    Tuples are enumerated in lexicographic order of exponents; those
    violating a relator are dropped.
    """
    if n < 1:
        raise ValueError("scan order must be positive")
    comps = pres.components()
    if not comps or any(g not in pres.component_of for g in pres.generators):
        raise ValueError("every generator needs a component label for a character scan")
    total = n ** len(comps)
    if total > cap:
        raise ValueError(f"{total} characters exceed the cap of {cap}")
    ident = mat_identity(1, n)
    out = []
    for exps in itertools.product(range(n), repeat=len(comps)):
        rho = character_representation(pres, exps, n)
        if all(rho.image(pres, r) == ident for r in pres.relators):
            out.append(Character(tuple(comps), tuple(exps), n, rho))
    return out
