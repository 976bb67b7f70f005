"""Exact twisted Alexander invariants of finitely presented groups."""

from .alexander import (
    ConsistencyError,
    InvariantReport,
    WadaError,
    assemble_complex,
    compute_invariants,
    homology_orders,
    is_acyclic,
    torsion,
    wada_invariant,
)
from .coeff import CycloNumber, parse_coefficient, root_of_unity
from .curve import CurveData, corollary_check, cv_scan, theorem_check
from .document import Document, load_document, parse_document, parse_presentation
from .freegroup import Word, fox_derivative
from .laurent import LaurentFraction, LaurentMatrix, LaurentPoly, parse_laurent, smith_normal_form
from .presentation import (
    BraidWord,
    MonodromyDatum,
    ParseError,
    Presentation,
    artin_action,
    closure_presentation,
    local_group_extraction,
    parse_braid,
    parse_word,
    zvk_presentation,
)
from .repn import Epsilon, Representation, trivial_representation, validate

__version__ = "0.1.0"
