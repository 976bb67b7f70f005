import pytest
from hypothesis import given, strategies as st

from twistalex.coeff import root_of_unity
from twistalex.laurent import (
    DimensionError,
    LaurentFraction,
    LaurentMatrix,
    LaurentPoly,
    MinorLimitError,
    associated,
    det,
    gcd_poly,
    minors_gcd,
    normalize_assoc,
    parse_laurent,
    smith_normal_form,
)

T = LaurentPoly.t()


def P(text, order=1):
    return parse_laurent(text, order)


def test_format():
    assert str(P("t^2 - t + 1")) == "t^2 - t + 1"
    assert str(P("t^-1 + 2")) == "2 + t^-1"
    assert str(P("0")) == "0"
    assert str(P("(1 + z)*t", 3)) == "(1 + z)*t"


def test_parse_roundtrip():
    for text in ["t^2 - t + 1", "t - 1", "1", "-t^3 + 2*t^-2", "3/2*t"]:
        p = P(text)
        assert P(str(p)) == p


def test_normalize_assoc():
    assert normalize_assoc(P("-2*t^3 + 2*t^4")) == P("t - 1")
    assert normalize_assoc(P("t^-5")) == 1
    assert normalize_assoc(P("0")) == 0


def test_euclidean_division():
    a, b = P("t^3 + 2*t + 5"), P("t - 1")
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.span < b.span or r.is_zero()


def test_gcd():
    g = gcd_poly(P("(t - 1)*(t + 1)"), P("(t - 1)^2"))
    assert associated(g, P("t - 1"))
    assert gcd_poly(P("t - 1"), P("t + 1")) == 1


def test_fraction_reduces_and_compares_up_to_units():
    f = LaurentFraction(P("t^2 - 1"), P("-t^3 + t^2"))
    assert f == LaurentFraction(P("t + 1"))
    assert str(LaurentFraction(P("t^2 - t + 1"), P("t - 1"))) == "(t^2 - t + 1) / (t - 1)"


def test_conj():
    assert associated(P("t^2 - t + 1").conj(), P("t^2 - t + 1"))
    p = P("z*t + 1", 3)
    assert p.conj() == P("z^2*t^-1 + 1", 3)


def test_det_small_and_large():
    m = LaurentMatrix.from_rows([[T, LaurentPoly.one()], [LaurentPoly.one(), T]])
    assert det(m) == P("t^2 - 1")
    ident = LaurentMatrix.identity(5)
    assert det(ident.scale(T)) == P("t^5")
    with pytest.raises(DimensionError):
        det(LaurentMatrix.zeros(2, 3))


def test_smith_of_alexander_like_matrix():
    m = LaurentMatrix.from_rows([[P("t - 1"), P("0")], [P("0"), P("t + 1")]])
    snf = smith_normal_form(m)
    assert snf.rank == 2
    assert snf.factors[0] == 1
    assert associated(snf.factors[1], P("t^2 - 1"))


def test_smith_transforms():
    m = LaurentMatrix.from_rows([[P("t^2 - 1"), P("t + 1"), P("0")],
                                 [P("t - 1"), P("t^2"), P("1 - t")]])
    snf = smith_normal_form(m, transforms=True)
    d = snf.U @ m @ snf.V
    for i in range(d.rows):
        for j in range(d.cols):
            if i == j and i < len(snf.factors):
                assert associated(d[i, j], snf.factors[i])
            else:
                assert d[i, j].is_zero()
    assert snf.U @ snf.U_inv == LaurentMatrix.identity(2)


def test_minors_gcd_and_guard():
    m = LaurentMatrix.from_rows([[P("t - 1"), P("t - 1")], [P("t - 1"), P("t^2 - 1")]])
    assert associated(minors_gcd(m, 1), P("t - 1"))
    assert associated(minors_gcd(m, 2), det(m))
    with pytest.raises(MinorLimitError):
        minors_gcd(LaurentMatrix.from_rows([[P("t - 1")] * 6] * 6), 3, max_minors=5)


def test_minors_gcd_all_zero():
    assert minors_gcd(LaurentMatrix.zeros(3, 3), 2) == 0


small = st.integers(-3, 3)


@st.composite
def polys(draw, order=1):
    coeffs = draw(st.lists(small, min_size=1, max_size=3))
    val = draw(st.integers(-1, 1))
    p = LaurentPoly.from_ints(coeffs, val, order)
    if draw(st.booleans()) and order > 1:
        p = p * LaurentPoly.monomial(root_of_unity(order), 0, order)
    return p


@st.composite
def matrices(draw, n, order=1):
    return LaurentMatrix.from_rows([[draw(polys(order)) for _ in range(n)] for _ in range(n)], order)


@given(st.data())
def test_det_multiplicative(data):
    order = data.draw(st.sampled_from([1, 3]))
    n = data.draw(st.integers(1, 4))
    a, b = data.draw(matrices(n, order)), data.draw(matrices(n, order))
    assert det(a @ b) == det(a) * det(b)


@given(st.data())
def test_snf_product_is_det(data):
    n = data.draw(st.integers(1, 3))
    a = data.draw(matrices(n))
    snf = smith_normal_form(a)
    d = det(a)
    if d.is_zero():
        assert snf.rank < n
    else:
        assert associated(snf.order(), d)
        for f, g in zip(snf.factors, snf.factors[1:]):
            if not g.is_zero():
                assert f.divides(g)


@given(st.data())
def test_minors_gcd_is_determinantal_divisor(data):
    n = data.draw(st.integers(1, 3))
    a = data.draw(matrices(n))
    snf = smith_normal_form(a)
    for k in range(1, n + 1):
        expected = LaurentPoly.one()
        for f in snf.factors[:k]:
            expected = expected * f
        got = minors_gcd(a, k)
        if expected.is_zero():
            assert got.is_zero()
        else:
            assert associated(got, expected)
