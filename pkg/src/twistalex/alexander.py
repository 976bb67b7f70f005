"""Twisted chain complex of a presentation 2-complex and its invariants.

Chains are row vectors.  With ``r = dim V``, ``m`` generators and ``n``
relators the complex is

    C_2 = K[t^+-1]^(n r)  --d2-->  C_1 = K[t^+-1]^(m r)  --d1-->  C_0 = K[t^+-1]^r

where ``d2`` is the block matrix of Fox derivatives under
``Phi(g) = t^eps(g) rho(g)`` and ``d1`` stacks the blocks ``Phi(x_i) - Id``.
The Fox fundamental identity is exactly ``d2 @ d1 == 0``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .freegroup import GroupRingElement, Word, fox_derivative
from .laurent import (
    LaurentFraction,
    LaurentMatrix,
    LaurentPoly,
    block_matrix,
    det,
    minors_gcd,
    normalize_assoc,
    smith_normal_form,
)
from .presentation import Presentation
from .repn import Epsilon, Representation, phi_of_word

__all__ = [
    "ConsistencyError",
    "HomologyOrders",
    "InvariantReport",
    "TwistedComplex",
    "WadaError",
    "assemble_complex",
    "compute_invariants",
    "homology_orders",
    "is_acyclic",
    "torsion",
    "wada_invariant",
]

log = logging.getLogger(__name__)


class ConsistencyError(RuntimeError):
    """The assembled complex is not a complex (d2 @ d1 != 0)."""


class WadaError(ValueError):
    """No generator has a nonzero ``det(Phi(x_i) - Id)``."""


@dataclass
class TwistedComplex:
    d2: LaurentMatrix
    d1: LaurentMatrix
    dim: int
    num_generators: int
    num_relators: int

    @property
    def order(self) -> int:
        return self.d1.order


def _phi_ring(pres: Presentation, x: GroupRingElement, eps: Epsilon, rho: Representation) -> LaurentMatrix:
    total = LaurentMatrix.zeros(rho.dim, rho.dim, rho.order)
    for w, c in x.terms.items():
        total = total + phi_of_word(pres, w, eps, rho).scale(LaurentPoly.monomial(c, 0, rho.order))
    return total


def fox_matrix(pres: Presentation, eps: Epsilon, rho: Representation) -> LaurentMatrix:
    """The (n r) x (m r) matrix of Fox derivatives under Phi."""
    r, m, order = rho.dim, pres.num_generators, rho.order
    if not pres.relators:
        return LaurentMatrix.zeros(0, m * r, order)
    blocks = [[_phi_ring(pres, fox_derivative(rel, j), eps, rho) for j in range(1, m + 1)]
              for rel in pres.relators]
    return block_matrix(blocks, order)


def boundary_one(pres: Presentation, eps: Epsilon, rho: Representation) -> LaurentMatrix:
    """The (m r) x r matrix stacking ``Phi(x_i) - Id``."""
    ident = LaurentMatrix.identity(rho.dim, rho.order)
    blocks = [[phi_of_word(pres, Word.gen(i), eps, rho) - ident]
              for i in range(1, pres.num_generators + 1)]
    return block_matrix(blocks, rho.order)


def assemble_complex(pres: Presentation, eps: Epsilon, rho: Representation) -> TwistedComplex:
    d2 = fox_matrix(pres, eps, rho)
    d1 = boundary_one(pres, eps, rho)
    if d2.rows and not (d2 @ d1).is_zero():
        raise ConsistencyError("d2 @ d1 != 0: (eps, rho) does not respect the relators")
    return TwistedComplex(d2, d1, rho.dim, pres.num_generators, pres.num_relators)


@dataclass
class HomologyOrders:
    """Orders of the torsion submodules together with the free ranks."""

    delta0: LaurentPoly
    delta1: LaurentPoly
    delta2: LaurentPoly
    rank0: int
    rank1: int
    rank2: int

    @property
    def h1_torsion(self) -> bool:
        return self.rank1 == 0

    @property
    def acyclic(self) -> bool:
        return self.rank0 == self.rank1 == self.rank2 == 0


def homology_orders(c: TwistedComplex) -> HomologyOrders:
    """Delta^0, Delta^1, Delta^2 from Smith forms.

    ``H_1`` is computed as the cokernel of ``d2`` written in a basis of
    ``ker d1`` read off the row transform of the Smith form of ``d1``.
    """
    order = c.order
    snf1 = smith_normal_form(c.d1, transforms=True)
    k1 = snf1.rank
    delta0 = snf1.order()
    rank0 = c.d1.cols - k1
    n1 = c.d1.rows
    if c.d2.rows:
        # d2 = A @ U[k1:], so A = (d2 @ U_inv)[:, k1:]
        coords = c.d2 @ snf1.U_inv
        a = coords.submatrix(range(coords.rows), range(k1, n1))
        assert coords.submatrix(range(coords.rows), range(k1)).is_zero()
        if a.cols:
            snf2 = smith_normal_form(a)
            k2 = snf2.rank
            delta1 = snf2.order()
        else:
            k2 = 0
            delta1 = LaurentPoly.one(order)
    else:
        k2 = 0
        delta1 = LaurentPoly.one(order)
    rank1 = (n1 - k1) - k2
    rank2 = c.d2.rows - k2
    return HomologyOrders(delta0, normalize_assoc(delta1), LaurentPoly.one(order), rank0, rank1, rank2)


def is_acyclic(c: TwistedComplex) -> bool:
    return homology_orders(c).acyclic


def _wada_denominators(pres: Presentation, eps: Epsilon, rho: Representation) -> list[tuple[int, LaurentPoly]]:
    ident = LaurentMatrix.identity(rho.dim, rho.order)
    out = []
    for i in range(1, pres.num_generators + 1):
        out.append((i, det(phi_of_word(pres, Word.gen(i), eps, rho) - ident)))
    return out


def _wada_at(upsilon: LaurentMatrix, i: int, denom: LaurentPoly, pres: Presentation, r: int,
             max_minors: int | None) -> LaurentFraction:
    m, n = pres.num_generators, pres.num_relators
    size = (m - 1) * r
    reduced = upsilon.delete_columns(range((i - 1) * r, i * r))
    feasible = reduced.rows >= size
    if feasible != (n >= m):
        log.info("Wada case split: minor size %d with %d relator rows is %s, while n >= m is %s",
                 size, reduced.rows, "feasible" if feasible else "infeasible", n >= m)
    if size == 0 or not feasible:
        q = LaurentPoly.one(upsilon.order)
    else:
        q = minors_gcd(reduced, size, max_minors=max_minors)
    return LaurentFraction(q, denom)


def wada_invariant(pres: Presentation, eps: Epsilon, rho: Representation, *,
                   index: int | None = None, cross_check: bool = False,
                   max_minors: int | None = 10 ** 6,
                   upsilon: LaurentMatrix | None = None) -> tuple[LaurentFraction, int]:
    """Wada's invariant ``Q_i / det(Phi(x_i) - Id)`` and the index ``i`` used.

    The first generator with a nonzero denominator is used unless ``index`` is
    given.  With ``cross_check`` every admissible index is evaluated and a
    disagreement raises :class:`ConsistencyError`.
    """
    if upsilon is None:
        upsilon = fox_matrix(pres, eps, rho)
    candidates = [(i, d) for i, d in _wada_denominators(pres, eps, rho) if d.coeffs]
    if not candidates:
        raise WadaError("denominator vanishes for all generators")
    if index is not None:
        chosen = [(i, d) for i, d in candidates if i == index]
        if not chosen:
            raise WadaError(f"det(Phi(x_{index}) - Id) vanishes")
    else:
        chosen = candidates[:1]
    i0, d0 = chosen[0]
    value = _wada_at(upsilon, i0, d0, pres, rho.dim, max_minors)
    if cross_check:
        for i, d in candidates:
            other = _wada_at(upsilon, i, d, pres, rho.dim, max_minors)
            if other != value:
                raise ConsistencyError(
                    f"Wada invariant depends on the deleted generator: {value} (i={i0}) vs {other} (i={i})")
    return value, i0


def torsion(orders: HomologyOrders) -> LaurentFraction | None:
    """``Delta^1 / (Delta^0 Delta^2)``; ``None`` when H_1 is not torsion."""
    if not orders.h1_torsion:
        return None
    return LaurentFraction(orders.delta1, orders.delta0 * orders.delta2)


@dataclass
class InvariantReport:
    delta0: LaurentPoly
    delta1: LaurentPoly
    delta2: LaurentPoly
    ranks: tuple[int, int, int]
    wada: LaurentFraction | None
    wada_index: int | None
    torsion: LaurentFraction | None
    acyclic: bool
    h1_torsion: bool
    notes: list[str] = field(default_factory=list)

    @property
    def delta(self) -> LaurentFraction | None:
        """``Delta^1 / Delta^0`` when H_1 is torsion."""
        if not self.h1_torsion:
            return None
        return LaurentFraction(self.delta1, self.delta0)

    @property
    def delta1_fitting(self) -> LaurentPoly:
        """Delta^1 with the convention that a non-torsion H_1 has order 0."""
        return self.delta1 if self.h1_torsion else LaurentPoly.zero(self.delta1.order)


def compute_invariants(pres: Presentation, eps: Epsilon, rho: Representation, *,
                       cross_check: bool = False, max_minors: int | None = 10 ** 6) -> InvariantReport:
    c = assemble_complex(pres, eps, rho)
    orders = homology_orders(c)
    notes = []
    try:
        wada, idx = wada_invariant(pres, eps, rho, cross_check=cross_check,
                                   max_minors=max_minors, upsilon=c.d2)
    except WadaError as exc:
        wada, idx = None, None
        notes.append(str(exc))
    tau = torsion(orders)
    if tau is None:
        notes.append("H1 not torsion")
    return InvariantReport(
        delta0=orders.delta0, delta1=orders.delta1, delta2=orders.delta2,
        ranks=(orders.rank0, orders.rank1, orders.rank2),
        wada=wada, wada_index=idx, torsion=tau,
        acyclic=orders.acyclic, h1_torsion=orders.h1_torsion, notes=notes)
