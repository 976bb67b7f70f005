"""Global/local divisibility harness for plane curve complements.

For a curve with components ``C_l`` (Euler characteristic ``chi_l``, meridian
``nu_l``, ``s_l`` singular points) and local links ``L_k`` (including the
link at infinity) the quantities compared are

    lhs = prod_l det(Id - Phi(nu_l))^(s_l - chi_l) * prod_k Delta(L_k)
    rhs = Delta(C) * conj(Delta(C))

and the residual ``lhs / rhs`` is reported as the candidate determinant of
the intersection form.  It is never computed from an intersection pairing.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .alexander import InvariantReport, assemble_complex, compute_invariants, homology_orders
from .freegroup import Word
from .laurent import LaurentFraction, LaurentMatrix, LaurentPoly, det, normalize_assoc
from .presentation import Presentation
from .repn import (
    Character,
    Epsilon,
    Representation,
    is_unitary,
    phi_of_word,
    rank1_characters,
    trivial_representation,
    validate,
)

__all__ = [
    "Component",
    "CurveData",
    "CurveError",
    "LocalResult",
    "ScanEntry",
    "Singularity",
    "TheoremReport",
    "alpha_factor",
    "corollary_check",
    "cv_scan",
    "local_invariants",
    "theorem_check",
]


class CurveError(ValueError):
    pass


@dataclass
class Component:
    label: str
    chi: int
    q: int
    meridian: Word
    sing_count: int


@dataclass
class Singularity:
    label: str
    presentation: Presentation
    inclusion: dict[str, Word]
    infinity: bool = False


@dataclass
class CurveData:
    components: list[Component]
    singularities: list[Singularity]

    def validate(self, pres: Presentation) -> None:
        if not self.components:
            raise CurveError("a curve needs at least one component")
        labels = [c.label for c in self.components]
        if len(set(labels)) != len(labels):
            raise CurveError("duplicate component labels")
        g = 0
        for c in self.components:
            if c.q == 0:
                raise CurveError(f"component {c.label}: weight q must be nonzero")
            if c.sing_count < 0:
                raise CurveError(f"component {c.label}: negative sing_count")
            if any(i > pres.num_generators for i in c.meridian.generators()):
                raise CurveError(f"component {c.label}: meridian uses undeclared generators")
            g = math.gcd(g, c.q)
        if g != 1:
            raise CurveError(f"gcd of component weights is {g}, not 1")
        inf = [s for s in self.singularities if s.infinity]
        if len(inf) != 1:
            raise CurveError(f"exactly one singularity must be marked infinity, found {len(inf)}")
        slabels = [s.label for s in self.singularities]
        if len(set(slabels)) != len(slabels):
            raise CurveError("duplicate singularity labels")
        for s in self.singularities:
            missing = [n for n in s.presentation.generators if n not in s.inclusion]
            if missing:
                raise CurveError(f"singularity {s.label}: inclusion undefined on {', '.join(missing)}")
            for n, w in s.inclusion.items():
                if any(i > pres.num_generators for i in w.generators()):
                    raise CurveError(f"singularity {s.label}: image of {n} uses undeclared generators")

    @property
    def affine_singularities(self) -> list[Singularity]:
        return [s for s in self.singularities if not s.infinity]

    def euler_characteristic(self) -> int:
        """chi(C) from ``sum_l (s_l - chi_l) = s - chi(C)``."""
        s = len(self.affine_singularities)
        return s - sum(c.sing_count - c.chi for c in self.components)


def _check_weights(curve: CurveData, pres: Presentation, eps: Epsilon) -> None:
    for c in curve.components:
        w = eps.of_word(pres, c.meridian)
        if w != c.q:
            raise CurveError(f"component {c.label}: epsilon of the meridian is {w}, but q = {c.q}")


def _meridian_det(pres: Presentation, w: Word, eps: Epsilon, rho: Representation) -> LaurentPoly:
    ident = LaurentMatrix.identity(rho.dim, rho.order)
    return det(ident - phi_of_word(pres, w, eps, rho))


def alpha_factor(curve: CurveData, pres: Presentation, eps: Epsilon, rho: Representation,
                 check_conjugates: bool = True) -> LaurentFraction:
    """``prod_l det(Id - Phi(nu_l))^(s_l - chi_l)``.

    With ``check_conjugates`` each factor is recomputed with the meridian
    conjugated by every generator; a change raises :class:`CurveError`.
    """
    total = LaurentFraction(LaurentPoly.one(rho.order))
    for c in curve.components:
        d = _meridian_det(pres, c.meridian, eps, rho)
        if not d.coeffs:
            raise CurveError(f"det(Id - Phi(nu)) vanishes for component {c.label}")
        if check_conjugates:
            for i in range(1, pres.num_generators + 1):
                other = _meridian_det(pres, c.meridian.conjugate(Word.gen(i)), eps, rho)
                if normalize_assoc(other) != normalize_assoc(d):
                    raise CurveError(f"component {c.label}: factor changes under conjugation")
        total = total * LaurentFraction(d) ** (c.sing_count - c.chi)
    return total


@dataclass
class LocalResult:
    label: str
    infinity: bool
    report: InvariantReport
    epsilon: Epsilon
    rho: Representation

    @property
    def delta(self) -> LaurentFraction | None:
        return self.report.delta

    @property
    def torsion_ok(self) -> bool:
        return self.report.h1_torsion

    @property
    def acyclic(self) -> bool:
        return self.report.acyclic


def restrict_twist(sing: Singularity, pres: Presentation, eps: Epsilon,
                   rho: Representation) -> tuple[Epsilon, Representation]:
    local = sing.presentation
    weights = {n: eps.of_word(pres, sing.inclusion[n]) for n in local.generators}
    return Epsilon(weights), rho.restrict(local.generators, sing.inclusion, pres)


def local_invariants(curve: CurveData, pres: Presentation, eps: Epsilon,
                     rho: Representation) -> list[LocalResult]:
    """Invariants of every local link under the restricted twist (input order)."""
    out = []
    for s in curve.singularities:
        leps, lrho = restrict_twist(s, pres, eps, rho)
        report = validate(s.presentation, leps, lrho)
        bad = [msg for code, msg in report.problems if code != "epsilon-surjectivity"]
        if bad:
            raise CurveError(f"singularity {s.label}: restricted twist is not well defined: {bad[0]}")
        inv = compute_invariants(s.presentation, leps, lrho)
        out.append(LocalResult(s.label, s.infinity, inv, leps, lrho))
    return out


@dataclass
class TheoremReport:
    alpha: LaurentFraction | None
    local_polys: list[tuple[str, LaurentFraction | None]]
    lhs: LaurentFraction | None
    rhs_known: LaurentFraction | None
    residual: LaurentFraction | None
    divisible: bool | None
    unitary: bool
    local_acyclic: dict[str, bool]
    local_torsion: dict[str, bool]
    global_torsion: bool
    self_conjugate: bool | None
    notes: list[str] = field(default_factory=list)
    agrees_with_theorem: bool | None = None

    @property
    def gates_passed(self) -> bool:
        return (self.unitary and all(self.local_acyclic.values())
                and all(self.local_torsion.values()) and self.global_torsion)


def _assemble(alpha, locals_, global_report: InvariantReport, unitary: bool,
              notes: list[str]) -> TheoremReport:
    local_polys = [(r.label, r.delta) for r in locals_]
    local_acyclic = {r.label: r.acyclic for r in locals_}
    local_torsion = {r.label: r.torsion_ok for r in locals_}
    lhs = alpha
    if lhs is not None:
        for _, d in local_polys:
            lhs = None if (lhs is None or d is None) else lhs * d
    delta = global_report.delta
    rhs = None if delta is None else delta * delta.conj()
    residual = None
    if lhs is not None and rhs is not None and not rhs.is_zero():
        residual = lhs / rhs
    report = TheoremReport(
        alpha=alpha, local_polys=local_polys, lhs=lhs, rhs_known=rhs, residual=residual,
        divisible=None, unitary=unitary, local_acyclic=local_acyclic,
        local_torsion=local_torsion, global_torsion=global_report.h1_torsion,
        self_conjugate=None if residual is None else residual == residual.conj(),
        notes=notes)
    if residual is not None and report.gates_passed:
        report.divisible = residual.is_polynomial()
    else:
        if not unitary:
            notes.append("rho is not unitary for the standard hermitian form")
        for r in locals_:
            if not r.torsion_ok:
                notes.append(f"local H1 at {r.label} is not torsion")
            elif not r.acyclic:
                notes.append(f"local complex at {r.label} is not acyclic")
        if not global_report.h1_torsion:
            notes.append("global H1 is not torsion")
    return report


def theorem_check(curve: CurveData, pres: Presentation, eps: Epsilon,
                  rho: Representation) -> TheoremReport:
    """Compare ``alpha * prod Delta_k`` against ``Delta * conj(Delta)``.

    Gate failures (non-unitary rho, non-acyclic local complexes, non-torsion
    H1) leave ``divisible`` as ``None``; the residual is still reported when
    it can be formed.
    """
    curve.validate(pres)
    _check_weights(curve, pres, eps)
    notes: list[str] = []
    try:
        alpha = alpha_factor(curve, pres, eps, rho)
    except CurveError as exc:
        alpha = None
        notes.append(str(exc))
    locals_ = local_invariants(curve, pres, eps, rho)
    global_report = compute_invariants(pres, eps, rho)
    return _assemble(alpha, locals_, global_report, is_unitary(rho), notes)


def _classical(pres: Presentation) -> tuple[Epsilon, Representation]:
    return Epsilon.constant(pres, 1), trivial_representation(pres)


def corollary_check(curve: CurveData, pres: Presentation) -> TheoremReport:
    """Classical variant: trivial rho and every meridian of weight 1.

    ``(t-1)^(1-chi(C)) prod Delta^1(L_k)`` against ``Delta^1(C)^2``, together
    with a cross-check against :func:`theorem_check` on the same data.
    """
    curve.validate(pres)
    eps, rho = _classical(pres)
    for c in curve.components:
        if eps.of_word(pres, c.meridian) != 1:
            raise CurveError(f"component {c.label}: meridian does not have weight 1")
    notes: list[str] = []
    locals_ = local_invariants(curve, pres, eps, rho)
    global_report = compute_invariants(pres, eps, rho)
    t_minus_1 = LaurentPoly.from_ints([-1, 1])
    chi = curve.euler_characteristic()
    lhs = LaurentFraction(t_minus_1) ** (1 - chi)
    local_polys = []
    for r in locals_:
        d1 = r.report.delta1_fitting
        local_polys.append((r.label, LaurentFraction(d1)))
        lhs = lhs * d1
    d1 = global_report.delta1_fitting
    rhs = LaurentFraction(d1 * d1)
    residual = lhs / rhs if not rhs.is_zero() else None
    report = TheoremReport(
        alpha=LaurentFraction(t_minus_1) ** (1 - chi), local_polys=local_polys, lhs=lhs,
        rhs_known=rhs, residual=residual, divisible=None, unitary=True,
        local_acyclic={r.label: r.acyclic for r in locals_},
        local_torsion={r.label: r.torsion_ok for r in locals_},
        global_torsion=global_report.h1_torsion,
        self_conjugate=None if residual is None else residual == residual.conj(),
        notes=notes)
    if residual is not None and report.gates_passed:
        report.divisible = residual.is_polynomial()
    theorem = _assemble(alpha_factor(curve, pres, eps, rho), locals_, global_report, True, [])
    if theorem.residual is not None and residual is not None:
        report.agrees_with_theorem = theorem.residual == residual
        if not report.agrees_with_theorem:
            notes.append(f"theorem residual {theorem.residual} differs from corollary residual")
    return report


# -- characteristic variety scan ---------------------------------------------------------

@dataclass
class ScanEntry:
    label: str
    exponents: tuple[int, ...]
    delta0: LaurentPoly
    delta1: LaurentPoly
    h1_torsion: bool
    member: bool


def _scan_one(pres: Presentation, character: Character) -> ScanEntry:
    eps = Epsilon.constant(pres, 1)
    orders = homology_orders(assemble_complex(pres, eps, character.rho))
    delta1 = orders.delta1 if orders.h1_torsion else LaurentPoly.zero(character.order)
    t_minus_1 = LaurentPoly.from_ints([-1, 1], order=character.order)
    member = (not delta1.coeffs) or t_minus_1.divides(delta1)
    return ScanEntry(character.label(), character.exponents, orders.delta0, delta1,
                     orders.h1_torsion, member)


def cv_scan(pres: Presentation, n: int, cap: int = 10 ** 4, workers: int = 1) -> list[ScanEntry]:
    """Rank-one characters of order dividing ``n`` and their (t-1)-divisibility verdicts.

    All meridians carry weight 1.  A non-torsion H1 is recorded as
    ``delta1 = 0`` and counted as a member.  Entries follow the lexicographic
    order of the exponent tuples regardless of ``workers``.
    """
    chars = rank1_characters(pres, n, cap=cap)
    if workers > 1 and len(chars) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_scan_one, [pres] * len(chars), chars))
    return [_scan_one(pres, c) for c in chars]
