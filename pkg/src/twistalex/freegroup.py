"""Words in free groups and Fox free differential calculus.

A letter is a nonzero integer: ``i`` stands for the generator ``x_i`` (1-based)
and ``-i`` for its inverse.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Mapping, Sequence

__all__ = [
    "GroupRingElement",
    "Word",
    "eps_of_word",
    "fox_derivative",
    "reduce",
]


def reduce(letters: Iterable[int]) -> "Word":
    """Freely reduce a raw sequence of signed generator indices."""
    return Word(letters)


class Word:
    """Freely reduced word; immutable and hashable."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[int] = ()):
        stack: list[int] = []
        for x in letters:
            if x == 0:
                raise ValueError("0 is not a valid letter")
            if stack and stack[-1] == -x:
                stack.pop()
            else:
                stack.append(x)
        self.letters = tuple(stack)

    @classmethod
    def identity(cls) -> "Word":
        return cls()

    @classmethod
    def gen(cls, i: int, power: int = 1) -> "Word":
        return cls([i if power > 0 else -i] * abs(power))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(-x for x in reversed(self.letters))

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k))

    def conjugate(self, by: "Word") -> "Word":
        """``by * self * by^-1``."""
        return by * self * by.inverse()

    def substitute(self, images: Mapping[int, "Word"]) -> "Word":
        """Apply the endomorphism ``x_i -> images[i]`` (missing generators fixed)."""
        out: list[int] = []
        for x in self.letters:
            img = images.get(abs(x))
            if img is None:
                out.append(x)
            else:
                out.extend(img.letters if x > 0 else img.inverse().letters)
        return Word(out)

    def generators(self) -> set[int]:
        return {abs(x) for x in self.letters}

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __lt__(self, other: "Word") -> bool:
        return (len(self.letters), self.letters) < (len(other.letters), other.letters)

    def __repr__(self):
        return f"Word({list(self.letters)})"

    def to_string(self, names: Sequence[str] | None = None) -> str:
        """Space-separated letters; inverses as ``name^-1``."""
        if not self.letters:
            return "1"
        parts = []
        for x in self.letters:
            name = names[abs(x) - 1] if names else f"x{abs(x)}"
            parts.append(name if x > 0 else f"{name}^-1")
        return " ".join(parts)

    __str__ = to_string


class GroupRingElement:
    """Finite integer combination of words, with equal words collected."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, int] | None = None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def of(cls, w: Word, c: int = 1) -> "GroupRingElement":
        return cls({w: c})

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        out = defaultdict(int, self.terms)
        for w, c in other.terms.items():
            out[w] += c
        return GroupRingElement(out)

    def __neg__(self):
        return GroupRingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        out: dict[Word, int] = defaultdict(int)
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                out[u * v] += a * b
        return GroupRingElement(out)

    def left_mul(self, w: Word) -> "GroupRingElement":
        return GroupRingElement({w * u: c for u, c in self.terms.items()})

    def augmentation(self) -> int:
        return sum(self.terms.values())

    def __eq__(self, other):
        return isinstance(other, GroupRingElement) and self.terms == other.terms

    def __repr__(self):
        body = " + ".join(f"{c}*{w.to_string()}" for w, c in sorted(self.terms.items()))
        return f"GroupRingElement({body or '0'})"


def fox_derivative(w: Word, j: int) -> GroupRingElement:
    """Fox derivative d w / d x_j, in one left-to-right pass over ``w``.

    Each occurrence of ``x_j`` contributes ``+prefix``; each occurrence of
    ``x_j^-1`` contributes ``-prefix * x_j^-1``.
    """
    out: dict[Word, int] = defaultdict(int)
    prefix: list[int] = []
    for x in w.letters:
        if x == j:
            out[Word(prefix)] += 1
        elif x == -j:
            out[Word(prefix + [x])] -= 1
        prefix.append(x)
    return GroupRingElement(out)


def eps_of_word(w: Word, weights: Mapping[int, int] | Sequence[int]) -> int:
    """Sum of signed generator weights; ``weights`` is indexed by generator number."""
    if isinstance(weights, Mapping):
        get = weights.__getitem__
    else:
        def get(i):
            return weights[i - 1]
    return sum(get(x) if x > 0 else -get(-x) for x in w.letters)
