import pytest

from twistalex.curve import CurveError, alpha_factor, corollary_check, cv_scan, theorem_check
from twistalex.laurent import parse_laurent
from twistalex.presentation import closure_presentation, parse_braid
from twistalex.repn import Epsilon, Representation, as_matrix, rank1_characters

P = parse_laurent
CURVES = ["two_lines", "cuspidal_cubic", "two_lines_zvk", "cusp_zvk"]


@pytest.mark.parametrize("name", CURVES)
def test_residual_is_one_and_theorem_agrees(load, name):
    doc = load(name)
    thm = theorem_check(doc.curve, doc.presentation, doc.epsilon, doc.rho)
    cor = corollary_check(doc.curve, doc.presentation)
    assert thm.residual == 1 and thm.divisible is True
    assert cor.residual == 1 and cor.divisible is True
    assert cor.agrees_with_theorem is True
    assert thm.self_conjugate


def test_euler_characteristic(load):
    assert load("two_lines").curve.euler_characteristic() == 1
    assert load("cuspidal_cubic").curve.euler_characteristic() == 1


def test_theorem_with_characters_on_two_lines(load):
    doc = load("two_lines")
    pres = doc.presentation
    for ch in rank1_characters(pres, 4):
        rep = theorem_check(doc.curve, pres, Epsilon.constant(pres), ch.rho)
        if rep.gates_passed:
            assert rep.residual.is_polynomial()
            assert rep.self_conjugate
        else:
            assert rep.divisible is None


def test_alpha_conjugation_invariant(load):
    doc = load("cuspidal_cubic")
    for ch in rank1_characters(doc.presentation, 6):
        alpha_factor(doc.curve, doc.presentation, Epsilon.constant(doc.presentation), ch.rho)


def test_nonunitary_rho_leaves_divisibility_open(load):
    doc = load("two_lines")
    pres = doc.presentation
    rho = Representation(1, 1, {"g1": as_matrix([[2]], 1), "g2": as_matrix([[2]], 1)})
    rep = theorem_check(doc.curve, pres, Epsilon.constant(pres), rho)
    assert not rep.unitary
    assert rep.divisible is None
    assert rep.residual is not None
    assert any("unitary" in n for n in rep.notes)


def test_meridian_weight_must_match_q(load):
    doc = load("two_lines")
    pres = doc.presentation
    with pytest.raises(CurveError):
        theorem_check(doc.curve, pres, Epsilon({"g1": 2, "g2": 1}), doc.rho)


def test_scan_zariski_curve2(load):
    doc = load("zariski_curve2")
    entries = cv_scan(doc.presentation, 2)
    by_label = {e.label: e for e in entries}
    assert [e.label for e in entries] == ["(z^0, z^0)", "(z^0, z^1)", "(z^1, z^0)", "(z^1, z^1)"]
    e = by_label["(z^0, z^1)"]
    assert e.delta1 == P("t + 1", 2) and e.delta0 == 1 and e.member is False
    assert by_label["(z^0, z^0)"].member is True


def test_scan_parallel_matches_serial(load):
    doc = load("zariski_curve1")
    assert cv_scan(doc.presentation, 3, workers=2) == cv_scan(doc.presentation, 3)


def test_scan_non_torsion_counts_as_member():
    p = closure_presentation(parse_braid("", 2))
    entries = cv_scan(p, 2)
    assert all(e.member and e.delta1 == 0 for e in entries)
