"""Seeded random presentations with a well-defined finite-image twist.

Generator images are monomial matrices (a permutation times a diagonal of
roots of unity), so every image has finite order.  Relators are sampled
words with weight 0 and image Id; when sampling stalls, ``[u, x^k]`` with
``k`` the order of ``rho(x)`` is used instead.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from twistalex.coeff import CycloNumber, root_of_unity
from twistalex.freegroup import Word, eps_of_word
from twistalex.presentation import Presentation
from twistalex.repn import Epsilon, Representation, mat_identity, mat_mul, validate


@dataclass
class Case:
    seed: int
    pres: Presentation
    eps: Epsilon
    rho: Representation


def _root(order, k):
    return root_of_unity(order, k % order)


def _image(rng, dim, order):
    if dim == 1:
        return ((_root(order, rng.randrange(order)) if order > 1 else CycloNumber(1, [rng.choice([1, -1])]),),)
    perm = rng.choice([(0, 1), (1, 0)])
    zero = CycloNumber.zero(order)
    rows = []
    for i in range(2):
        c = _root(order, rng.randrange(order)) if order > 1 else CycloNumber(1, [rng.choice([1, -1])])
        rows.append(tuple(c if j == perm[i] else zero for j in range(2)))
    return tuple(rows)


def _mat_order(m, dim, order):
    ident = mat_identity(dim, order)
    p = m
    for k in range(1, 49):
        if p == ident:
            return k
        p = mat_mul(p, m)
    raise AssertionError("image of infinite order")


def random_case(seed: int) -> Case:
    rng = random.Random(seed)
    m = rng.randint(1, 3)
    n = rng.randint(max(0, m - 1), 3)
    dim = rng.randint(1, 2)
    order = rng.choice([1, 2, 3, 4, 6])
    names = [f"x{i}" for i in range(1, m + 1)]
    images = {g: _image(rng, dim, order) for g in names}
    weights = [1] + [rng.choice([-1, 0, 1, 2]) for _ in range(m - 1)]
    rng.shuffle(weights)
    rho = Representation(dim, order, images)
    probe = Presentation(names)
    ident = mat_identity(dim, order)
    relators = []
    for _ in range(n):
        found = None
        for _ in range(300):
            w = Word(rng.choice([1, -1]) * rng.randint(1, m) for _ in range(rng.randint(2, 8)))
            if w and eps_of_word(w, weights) == 0 and rho.image(probe, w) == ident:
                found = w
                break
        if found is None:
            i = rng.randint(1, m)
            k = _mat_order(images[names[i - 1]], dim, order)
            u = Word(rng.choice([1, -1]) * rng.randint(1, m) for _ in range(rng.randint(1, 3)))
            found = u * Word.gen(i, k) * u.inverse() * Word.gen(i, -k)
            if not found:
                found = Word.gen(i, k) * Word.gen(1 + i % m, 1) * Word.gen(i, -k) * Word.gen(1 + i % m, -1)
        if found:
            relators.append(found)
    pres = Presentation(names, relators)
    eps = Epsilon(dict(zip(names, weights)))
    assert validate(pres, eps, rho).ok
    return Case(seed, pres, eps, rho)


def random_cases(count: int, start: int = 0):
    return [random_case(s) for s in range(start, start + count)]
