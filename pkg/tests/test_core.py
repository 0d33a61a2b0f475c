import pytest
from hypothesis import given, strategies as st

from signed_hammersley.core import (
    NEG,
    POS,
    SignedLetter,
    SignedPermutation,
    Word,
    counts,
    format_word,
    lambda_minus,
    lambda_plus,
    parse_word,
)
from signed_hammersley.process import enumerate_words


def test_parse_examples():
    assert parse_word("2+ 1-", 2).letters == (SignedLetter(2, POS), SignedLetter(1, NEG))
    assert len(parse_word("", 3)) == 0
    assert parse_word("10+ 0-", 10).letters == (SignedLetter(10, POS), SignedLetter(0, NEG))
    assert parse_word("2+,1-", 2) == parse_word("2+   1-", 2)


@pytest.mark.parametrize("text", ["2", "+2", "2*", "a+", "2+-"])
def test_parse_rejects_malformed(text):
    with pytest.raises(ValueError):
        parse_word(text, 3)


def test_parse_rejects_value_above_k():
    with pytest.raises(ValueError, match="exceeds"):
        parse_word("3+", 2)


def test_format_examples(w):
    assert format_word(w("2+ 1-")) == "2+ 1-"
    assert format_word(Word.empty(2)) == ""
    assert format_word(w("0-")) == "0-"


letters = st.builds(SignedLetter, st.integers(0, 12), st.sampled_from([POS, NEG]))


@given(st.lists(letters, max_size=12), st.sampled_from([" ", "  ", ",", " , "]))
def test_round_trip(seq, sep):
    text = sep.join(str(x) for x in seq)
    once = format_word(parse_word(text, 12))
    assert once == " ".join(str(x) for x in seq)
    assert format_word(parse_word(once, 12)) == once


def test_counts(w):
    c = counts(w("2+ 1-"))
    assert c[2, POS] == 1 and c[1, NEG] == 1
    assert c.total() == 2 and c[2, NEG] == 0
    assert counts(Word.empty(2)).total() == 0
    assert counts(w("2+ 2+"))[2, POS] == 2


def test_lambda_examples(w):
    assert lambda_plus(w("2+"), 2) == 1
    assert lambda_plus(w("2+ 1-"), 2) == 0
    assert lambda_plus(w("2+ 0-"), 2) == -1
    assert lambda_minus(w("2- 1+"), 2) == 0


def test_lambda_rejects_other_arity(w):
    with pytest.raises(ValueError):
        lambda_plus(w("2+"), 3)


@given(st.lists(letters.filter(lambda x: x.value <= 3), max_size=10), st.randoms())
def test_lambda_depends_on_counts_only(seq, rnd):
    a = Word(tuple(seq), 3)
    shuffled = list(seq)
    rnd.shuffle(shuffled)
    b = Word(tuple(shuffled), 3)
    assert lambda_plus(a) == lambda_plus(b) == lambda_plus(counts(a))
    assert lambda_minus(a) == lambda_minus(b)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_lambdas_of_process_outputs(k):
    for n in range(1, 6):
        for word in enumerate_words(k, n):
            lp, lm = lambda_plus(word), lambda_minus(word)
            assert lp >= 0 and lm >= 0 and lp + lm >= 1


def test_signed_permutation():
    p = SignedPermutation.parse("1,8,15", "-,+,-")
    assert p.sigma == (1, 8, 15) and p.tau == (-1, 1, -1)
    assert p.format() == ("1,8,15", "-,+,-")
    with pytest.raises(ValueError):
        SignedPermutation((1, 1), (1, 1))
    with pytest.raises(ValueError):
        SignedPermutation((1, 2), (1,))
