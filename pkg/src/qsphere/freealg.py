"""Exact arithmetic in the free product Z_2 * Z^infinity and its complex group algebra.

Generators: one self-inverse generator ``y`` and an infinite family ``r0, r1, ...``
of free infinite-order generators.  A word is a reduced syllable tuple
``((gen, exp), ...)`` where ``gen`` is ``Y`` (= -1) for y or a non-negative
integer k for r_k.  Syllables with generator y always carry exponent 1; the
empty tuple is the identity.
"""

from __future__ import annotations

import cmath
import json
from typing import Callable, Iterable, Mapping

Y = -1

Syllable = tuple[int, int]
Word = tuple[Syllable, ...]

IDENTITY: Word = ()

# coefficients closer to zero than this are dropped from algebra elements
PRUNE_TOL = 1e-15


class MissingGeneratorAssignment(KeyError):
    """A character was asked to evaluate a generator it has no value for."""


def _push(stack: list[Syllable], gen: int, exp: int) -> None:
    if stack and stack[-1][0] == gen:
        gen0, exp0 = stack.pop()
        exp = exp0 + exp
    if gen == Y:
        exp %= 2
    if exp != 0:
        stack.append((gen, exp))


def reduce_syllables(syllables: Iterable[Syllable]) -> Word:
    """Unique reduced normal form of an arbitrary syllable list."""
    stack: list[Syllable] = []
    for gen, exp in syllables:
        if gen < Y:
            raise ValueError(f"unknown generator tag {gen}")
        _push(stack, gen, exp)
    return tuple(stack)


def word_mul(a: Word, b: Word) -> Word:
    stack = list(a)
    for gen, exp in b:
        _push(stack, gen, exp)
    return tuple(stack)


def word_inv(w: Word) -> Word:
    # y is its own inverse; exponent 1 stays 1
    return tuple((gen, 1 if gen == Y else -exp) for gen, exp in reversed(w))


def word_str(w: Word) -> str:
    if not w:
        return "e"
    parts = []
    for gen, exp in w:
        if gen == Y:
            parts.append("y")
        else:
            parts.append(f"r{gen}^{exp}")
    return "*".join(parts)


def word_parse(s: str) -> Word:
    s = s.strip()
    if s == "e":
        return IDENTITY
    syllables: list[Syllable] = []
    for token in s.split("*"):
        token = token.strip()
        if token == "y":
            syllables.append((Y, 1))
        elif token.startswith("r"):
            body = token[1:]
            if "^" in body:
                idx_s, exp_s = body.split("^", 1)
                idx, exp = int(idx_s), int(exp_s)
            else:
                idx, exp = int(body), 1
            if idx < 0:
                raise ValueError(f"negative generator index in {token!r}")
            syllables.append((idx, exp))
        else:
            raise ValueError(f"unparseable token {token!r} in word {s!r}")
    return reduce_syllables(syllables)


class AlgElem:
    """Finite complex-linear combination of reduced words.

    Immutable; all operations return new elements.  Coefficients within
    PRUNE_TOL of zero are dropped so that exact cancellations stay exact.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, complex] | None = None):
        clean: dict[Word, complex] = {}
        if terms:
            for w, c in terms.items():
                c = complex(c)
                if abs(c) > PRUNE_TOL:
                    clean[w] = c
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "AlgElem":
        return cls()

    @classmethod
    def one(cls) -> "AlgElem":
        return cls({IDENTITY: 1.0})

    @classmethod
    def from_word(cls, w: Word, coeff: complex = 1.0) -> "AlgElem":
        return cls({w: coeff})

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "AlgElem") -> "AlgElem":
        if not isinstance(other, AlgElem):
            return NotImplemented
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0.0) + c
        return AlgElem(terms)

    def __sub__(self, other: "AlgElem") -> "AlgElem":
        return self + (-other)

    def __neg__(self) -> "AlgElem":
        return AlgElem({w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgElem):
            terms: dict[Word, complex] = {}
            for wa, ca in self.terms.items():
                for wb, cb in other.terms.items():
                    w = word_mul(wa, wb)
                    terms[w] = terms.get(w, 0.0) + ca * cb
            return AlgElem(terms)
        return AlgElem({w: c * other for w, c in self.terms.items()})

    def __rmul__(self, other) -> "AlgElem":
        return AlgElem({w: other * c for w, c in self.terms.items()})

    def star(self) -> "AlgElem":
        """Antilinear involution: (c w)* = conj(c) w^-1."""
        return AlgElem({word_inv(w): c.conjugate() for w, c in self.terms.items()})

    # -- predicates and diagnostics -----------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgElem) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def norm(self) -> float:
        """Largest coefficient magnitude; 0 iff the element is zero."""
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def is_zero(self, tol: float = 0.0) -> bool:
        return self.norm() <= tol

    def is_grouplike(self, tol: float = 1e-12) -> bool:
        """True iff the element is a single word with coefficient 1."""
        if len(self.terms) != 1:
            return False
        (c,) = self.terms.values()
        return abs(c - 1.0) <= tol

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = [f"({c:g})*{word_str(w)}" if c != 1 else word_str(w)
                 for w, c in sorted(self.terms.items())]
        return " + ".join(parts)

    # -- serialization ------------------------------------------------

    def to_jsonable(self) -> list[dict]:
        return [
            {"word": word_str(w), "re": c.real, "im": c.imag}
            for w, c in sorted(self.terms.items())
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_jsonable())

    @classmethod
    def from_jsonable(cls, data: list[dict]) -> "AlgElem":
        terms: dict[Word, complex] = {}
        for rec in data:
            w = word_parse(rec["word"])
            terms[w] = terms.get(w, 0.0) + complex(rec["re"], rec["im"])
        return cls(terms)

    @classmethod
    def from_json(cls, s: str) -> "AlgElem":
        return cls.from_jsonable(json.loads(s))


def y_word() -> Word:
    return ((Y, 1),)


def r_word(k: int, exp: int = 1) -> Word:
    if k < 0:
        raise ValueError("generator index must be non-negative")
    return reduce_syllables([(k, exp)])


def y_elem() -> AlgElem:
    return AlgElem.from_word(y_word())


def r_elem(k: int, exp: int = 1) -> AlgElem:
    return AlgElem.from_word(r_word(k, exp))


def coproduct_grouplike(w: Word) -> tuple[Word, Word]:
    """Group elements are group-like: Delta(w) = w (x) w."""
    return (w, w)


def coproduct(a: AlgElem) -> dict[tuple[Word, Word], complex]:
    """Linear extension of the group-like coproduct to algebra elements."""
    return {coproduct_grouplike(w): c for w, c in a.terms.items()}


class Character:
    """Unital *-homomorphism from the group algebra to the complex numbers.

    ``y_value`` must be a square root of one; every r_k goes to a modulus-one
    complex number, either from the explicit map or from the tail rule.
    """

    def __init__(
        self,
        y_value: complex = 1.0,
        r_values: Mapping[int, complex] | None = None,
        tail: Callable[[int], complex] | None = None,
    ):
        y_value = complex(y_value)
        if abs(abs(y_value) - 1.0) > 1e-12 or abs(y_value * y_value - 1.0) > 1e-12:
            raise ValueError("y must go to a square root of unity")
        self.y_value = y_value
        self.r_values = dict(r_values or {})
        for k, v in self.r_values.items():
            if abs(abs(complex(v)) - 1.0) > 1e-12:
                raise ValueError(f"character value for r{k} must have modulus 1")
        self.tail = tail

    def generator_value(self, gen: int) -> complex:
        if gen == Y:
            return self.y_value
        if gen in self.r_values:
            return complex(self.r_values[gen])
        if self.tail is not None:
            v = complex(self.tail(gen))
            if abs(abs(v) - 1.0) > 1e-12:
                raise ValueError(f"tail rule gave non-unimodular value for r{gen}")
            return v
        raise MissingGeneratorAssignment(
            f"no value assigned for generator r{gen}"
        )

    def eval_word(self, w: Word) -> complex:
        out = 1.0 + 0.0j
        for gen, exp in w:
            out *= self.generator_value(gen) ** exp
        return out

    def __call__(self, a: AlgElem) -> complex:
        return sum((c * self.eval_word(w) for w, c in a.terms.items()),
                   0.0 + 0.0j)


def make_phi(theta: float) -> Character:
    """Character with y -> 1 and r_n -> exp(-i pi n(n+1) theta).

    With this assignment phi(r_{n-1} r_n^-1) = exp(2 pi i n theta) for every
    n >= 1, which is the sequence of unit-modulus scalars the non-compactness
    witness is built from.
    """
    return Character(
        y_value=1.0,
        tail=lambda n: cmath.exp(-1j * cmath.pi * n * (n + 1) * theta),
    )
