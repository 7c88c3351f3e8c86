"""Word arithmetic and group-algebra invariants, mostly property-based."""

import hypothesis.strategies as st
from hypothesis import given, settings

from qsphere import freealg as fa
from qsphere.action import quotient_morphism_piN

syllables = st.one_of(
    st.just((fa.Y, 1)),
    st.tuples(st.integers(0, 6), st.integers(-3, 3).filter(lambda e: e != 0)),
)
words = st.lists(syllables, max_size=12).map(fa.reduce_syllables)

coeffs = st.complex_numbers(max_magnitude=4.0, allow_nan=False, allow_infinity=False)
elems = st.lists(st.tuples(words, coeffs), min_size=1, max_size=4).map(
    lambda pairs: sum((fa.AlgElem.from_word(w, c) for w, c in pairs),
                      fa.AlgElem.zero()))


@given(words, words, words)
def test_word_mul_associative(a, b, c):
    assert fa.word_mul(fa.word_mul(a, b), c) == fa.word_mul(a, fa.word_mul(b, c))


@given(words)
def test_reduce_idempotent(w):
    assert fa.reduce_syllables(w) == w


@given(words)
def test_inverse_cancels(w):
    assert fa.word_mul(w, fa.word_inv(w)) == fa.IDENTITY
    assert fa.word_mul(fa.word_inv(w), w) == fa.IDENTITY


@given(words)
def test_string_roundtrip(w):
    assert fa.word_parse(fa.word_str(w)) == w


def test_reduction_examples():
    assert fa.reduce_syllables([(fa.Y, 1), (fa.Y, 1)]) == ()
    assert fa.reduce_syllables([(3, 2), (3, -2)]) == ()
    assert fa.reduce_syllables(
        [(0, 1), (fa.Y, 1), (fa.Y, 1), (0, -1), (1, 1)]) == ((1, 1),)


@given(elems, elems)
def test_star_involution(a, b):
    assert (a.star().star() - a).norm() <= 1e-12
    assert ((a * b).star() - b.star() * a.star()).norm() <= 1e-10


@given(elems)
def test_json_roundtrip(a):
    assert (fa.AlgElem.from_json(a.to_json()) - a).norm() <= 1e-12


@given(words, words)
@settings(max_examples=200)
def test_character_multiplicative(a, b):
    phi = fa.make_phi(0.25)
    lhs = phi.eval_word(fa.word_mul(a, b))
    assert abs(lhs - phi.eval_word(a) * phi.eval_word(b)) <= 1e-9
    assert abs(phi.eval_word(fa.word_inv(a)) - phi.eval_word(a).conjugate()) <= 1e-9


def test_phi_shift_values():
    # phi(r_{n-1} r_n^-1) = e^{2 pi i n theta}
    import cmath
    phi = fa.make_phi(0.25)
    for n in range(1, 20):
        got = phi(fa.r_elem(n - 1) * fa.r_elem(n).star())
        assert abs(got - cmath.exp(2j * cmath.pi * n * 0.25)) <= 1e-12


def test_character_missing_generator():
    import pytest
    chi = fa.Character(y_value=-1.0, r_values={0: 1.0})
    with pytest.raises(fa.MissingGeneratorAssignment):
        chi.eval_word(fa.r_word(5))


def test_character_rejects_bad_values():
    import pytest
    with pytest.raises(ValueError):
        fa.Character(y_value=2.0)
    with pytest.raises(ValueError):
        fa.Character(r_values={1: 0.5})


@given(words)
def test_coproduct_grouplike_on_words(w):
    assert fa.coproduct_grouplike(w) == (w, w)


@given(words, st.integers(1, 5), st.integers(0, 4))
def test_quotient_functorial(w, n_lo, n_extra):
    lo, hi = n_lo, n_lo + n_extra
    a = quotient_morphism_piN(lo).word(quotient_morphism_piN(hi).word(w))
    assert a == quotient_morphism_piN(lo).word(w)


def test_quotient_fixes_low_generators():
    pi2 = quotient_morphism_piN(2)
    assert pi2.word(fa.r_word(1)) == fa.r_word(1)
    assert pi2.word(fa.r_word(5)) == ()
    assert pi2.word(fa.y_word()) == fa.y_word()
