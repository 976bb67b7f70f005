import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from twistalex.alexander import compute_invariants
from twistalex.freegroup import Word
from twistalex.laurent import associated, parse_laurent
from twistalex.presentation import (
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
from twistalex.repn import Epsilon, trivial_representation

NAMES = ["a", "b", "c"]


def test_parse_word_forms():
    assert parse_word("a b A", NAMES) == Word([1, 2, -1])
    assert parse_word("a^3 b^-1", NAMES) == Word([1, 1, 1, -2])
    assert parse_word("[a, b]", NAMES) == Word([1, 2, -1, -2])
    assert parse_word("(a b)^2", NAMES) == Word([1, 2, 1, 2])
    assert parse_word("1", NAMES) == Word()
    assert parse_word("a*b", NAMES) == Word([1, 2])


def test_parse_word_errors_are_distinct():
    with pytest.raises(ParseError) as e:
        parse_word("a d", NAMES)
    assert e.value.code == "unknown-generator"
    assert e.value.column == 3
    with pytest.raises(ParseError) as e:
        parse_word("a ^ ^", NAMES)
    assert e.value.code == "malformed-word"
    with pytest.raises(ParseError) as e:
        Presentation(["a", "a"])
    assert e.value.code == "duplicate-name"


def test_empty_relators_give_free_group():
    p = Presentation(["a", "b"])
    assert p.num_relators == 0


def test_parse_braid():
    assert parse_braid("s1 S2 s1^-1 s2^2", 3).letters == (1, -2, -1, 2, 2)
    with pytest.raises(ParseError) as e:
        parse_braid("s3", 3)
    assert e.value.code == "braid-range"
    with pytest.raises(ParseError) as e:
        parse_braid("q1", 3)
    assert e.value.code == "malformed-braid"


def test_artin_examples():
    s1 = BraidWord(2, (1,))
    x1 = Word.gen(1)
    assert artin_action(s1, x1) == Word([1, 2, -1])
    assert artin_action(s1.inverse(), x1) == Word([2])
    assert artin_action(BraidWord(2, (1, 1)), x1) == Word([1, 2, 1, -2, -1])


def _images(b, d):
    return [artin_action(b, Word.gen(i)) for i in range(1, d + 1)]


@pytest.mark.parametrize("d", [3, 4])
def test_braid_relations(d):
    for k in range(1, d - 1):
        lhs = BraidWord(d, (k, k + 1, k))
        rhs = BraidWord(d, (k + 1, k, k + 1))
        assert _images(lhs, d) == _images(rhs, d)
    for i, j in itertools.combinations(range(1, d), 2):
        if j - i >= 2:
            assert _images(BraidWord(d, (i, j)), d) == _images(BraidWord(d, (j, i)), d)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_artin_fixes_product(d):
    prod = Word(range(1, d + 1))
    for k in range(1, d):
        for sign in (1, -1):
            assert artin_action(BraidWord(d, (sign * k,)), prod) == prod


@given(st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=6),
       st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=6))
def test_action_is_a_homomorphism(b1, b2):
    u, v = BraidWord(4, tuple(b1)), BraidWord(4, tuple(b2))
    for i in range(1, 5):
        x = Word.gen(i)
        assert artin_action(u * v, x) == artin_action(u, artin_action(v, x))


def _integer_rank_and_unimodular(rows, m):
    """Rank of an integer matrix and whether its Smith invariants are all 1."""
    mat = [[Fraction(x) for x in r] for r in rows]
    rank, col = 0, 0
    for col in range(m):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                f = mat[i][col] / mat[rank][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
    g = 0
    for rs in itertools.combinations(range(len(rows)), rank):
        for cs in itertools.combinations(range(m), rank):
            sub = [[Fraction(rows[i][j]) for j in cs] for i in rs]
            g = math.gcd(g, int(_fdet(sub)))
    return rank, (g == 1 or rank == 0)


def _fdet(a):
    n = len(a)
    if n == 0:
        return Fraction(1)
    a = [r[:] for r in a]
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


@given(st.integers(1, 4).flatmap(
    lambda d: st.tuples(st.just(d), st.lists(st.sampled_from([k for i in range(1, d) for k in (i, -i)] or [0]),
                                              max_size=7))))
def test_closure_abelianizes_to_components(arg):
    d, letters = arg
    letters = [x for x in letters if x]
    b = BraidWord(d, tuple(letters))
    p = closure_presentation(b)
    rows = [[sum(1 if x == j else -1 for x in r.letters if abs(x) == j) for j in range(1, d + 1)]
            for r in p.relators]
    rank, unimodular = _integer_rank_and_unimodular(rows, d) if rows else (0, True)
    assert d - rank == len(b.cycles()) == len(p.components())
    assert unimodular


def test_closure_examples():
    assert closure_presentation(BraidWord(2)).num_relators == 0
    hopf = closure_presentation(BraidWord(2, (1, 1)))
    assert hopf.num_relators == 1
    assert hopf.relators[0] == Word([1, 2, 1, -2, -1, -1])
    assert hopf.components() == ["c1", "c2"]
    trefoil = closure_presentation(BraidWord(2, (1, 1, 1)))
    assert trefoil.components() == ["c1"]


def _datum(word, d=2, m=2, conj=None, strands=None):
    b = parse_braid(word, d)
    return MonodromyDatum(b, conj or [Word()] * m, strands or list(range(1, m + 1)), m)


def test_zvk_node_and_cusp():
    node = zvk_presentation(2, [_datum("s1 s1")])
    assert node.relators == [Word([1, 2, 1, -2, -1, -1])]
    cusp = zvk_presentation(2, [_datum("s1 s1 s1")])
    # conjugate to (g2 g1 g2)(g1 g2 g1)^-1
    r = cusp.relators[0]
    assert r.conjugate(Word([-1])) == Word([2, 1, 2, -1, -2, -1])
    assert zvk_presentation(3, []).num_relators == 0


def test_zvk_inconsistent_multiplicity():
    with pytest.raises(ValueError):
        zvk_presentation(2, [MonodromyDatum(parse_braid("s1", 2), [Word()], [1, 2], 2)])


def test_local_extraction():
    pres, incl = local_group_extraction(_datum("s1 s1"))
    assert pres.num_relators == 1
    assert incl == {"g1": Word.gen(1), "g2": Word.gen(2)}
    d = _datum("s1 s1", conj=[Word.gen(1), Word()])
    _, incl = local_group_extraction(d)
    assert incl["g1"] == Word.gen(1)
    d = _datum("s1 s1", conj=[Word.gen(2), Word()])
    _, incl = local_group_extraction(d)
    assert incl["g1"] == Word([2, 1, -2])


def test_local_extraction_cusp_is_trefoil():
    pres, _ = local_group_extraction(_datum("s1 s1 s1"))
    inv = compute_invariants(pres, Epsilon.constant(pres), trivial_representation(pres))
    assert associated(inv.delta1, parse_laurent("t^2 - t + 1"))


@pytest.mark.parametrize("words", [["s1 s1"], ["s1 s1 s1"], ["s1 s1", "s2 s2"], ["s1 s1 s1", "s2 s2 s2"]])
def test_full_and_reduced_modes_agree(words):
    d = 3 if any("s2" in w for w in words) else 2
    data = []
    for w in words:
        k = int(w.split()[0][1])
        data.append(MonodromyDatum(parse_braid(w, d), [Word()] * 2, [k, k + 1], 2))
    reduced = zvk_presentation(d, data)
    full = zvk_presentation(d, data, full=True)
    assert full.num_relators >= reduced.num_relators
    for p in (reduced, full):
        assert p.generators == reduced.generators
    a = compute_invariants(reduced, Epsilon.constant(reduced), trivial_representation(reduced))
    b = compute_invariants(full, Epsilon.constant(full), trivial_representation(full))
    assert associated(a.delta0, b.delta0) and associated(a.delta1, b.delta1)
