from hypothesis import given, strategies as st

from twistalex.coeff import root_of_unity
from twistalex.freegroup import Word
from twistalex.laurent import LaurentMatrix
from twistalex.presentation import Presentation, closure_presentation, parse_braid
from twistalex.repn import (
    Epsilon,
    Representation,
    as_matrix,
    direct_sum,
    is_unitary,
    phi_of_word,
    rank1_characters,
    trivial_representation,
    validate,
)

from randgen import random_case


def test_nodal_fixture_validates(load):
    doc = load("nodal")
    assert validate(doc.presentation, doc.epsilon, doc.rho).ok
    assert not is_unitary(doc.rho)


def test_mutated_fixture_names_the_relator(load):
    doc = load("nodal_mutated")
    report = validate(doc.presentation, doc.epsilon, doc.rho)
    assert not report.ok
    codes = [c for c, _ in report.problems]
    assert codes == ["relator-rho", "relator-rho"]
    assert "relator 2 (l^-1 x1 l x2^-1)" in report.problems[0][1]


def test_validation_codes():
    p = Presentation(["a", "b"], [Word([1, 2, -1, -2])])
    rho = trivial_representation(p)
    assert [c for c, _ in validate(p, Epsilon({"a": 2, "b": 4}), rho).problems] == ["epsilon-surjectivity"]
    assert [c for c, _ in validate(p, Epsilon({"a": 1}), rho).problems] == ["epsilon-missing"]
    sing = Representation(1, 1, {"a": as_matrix([[0]], 1), "b": as_matrix([[1]], 1)})
    assert "rho-singular" in [c for c, _ in validate(p, Epsilon({"a": 1, "b": 1}), sing).problems]
    q = Presentation(["a"], [Word([1])])
    assert [c for c, _ in validate(q, Epsilon({"a": 1}), trivial_representation(q)).problems] == ["relator-epsilon"]


def test_unitary_characters():
    p = Presentation(["a"])
    rho = Representation(1, 6, {"a": ((root_of_unity(6),),)})
    assert is_unitary(rho)


def test_direct_sum_shape():
    p = Presentation(["a"])
    r = direct_sum(trivial_representation(p, 3), Representation(1, 3, {"a": ((root_of_unity(3),),)}))
    assert r.dim == 2
    assert r.images["a"][1][1] == root_of_unity(3)


def test_rank1_characters_order_and_filtering():
    hopf = closure_presentation(parse_braid("s1 s1", 2))
    chars = rank1_characters(hopf, 2)
    assert [c.label() for c in chars] == ["(z^0, z^0)", "(z^0, z^1)", "(z^1, z^0)", "(z^1, z^1)"]
    trefoil = closure_presentation(parse_braid("s1 s1 s1", 2))
    assert [c.label() for c in rank1_characters(trefoil, 3)] == ["(z^0)", "(z^1)", "(z^2)"]


words = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=8).map(Word)


@given(st.integers(0, 400), words, words)
def test_phi_is_a_homomorphism(seed, u, v):
    case = random_case(seed)
    m = case.pres.num_generators
    u = Word(x for x in u.letters if abs(x) <= m)
    v = Word(x for x in v.letters if abs(x) <= m)
    lhs = phi_of_word(case.pres, u * v, case.eps, case.rho)
    rhs = phi_of_word(case.pres, u, case.eps, case.rho) @ phi_of_word(case.pres, v, case.eps, case.rho)
    assert lhs == rhs
    assert phi_of_word(case.pres, Word(), case.eps, case.rho) == LaurentMatrix.identity(case.rho.dim, case.rho.order)
