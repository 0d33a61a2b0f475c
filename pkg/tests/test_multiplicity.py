import math
import threading
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from signed_hammersley.core import NEG, POS, ResourceLimitError, Word, all_words, lambda_minus, lambda_plus
from signed_hammersley.heaps import all_signed_permutations, brute_force_min_trees
from signed_hammersley.process import InsertionEvent, enumerate_words, events, step
from signed_hammersley.multiplicity import (
    PowerSeriesTable,
    literal_divergences,
    literal_multiplicity,
    multiplicity,
    predecessors,
    scaling_exact,
    scaling_from_series,
    scaling_montecarlo,
    trees_count,
)
from signed_hammersley.recognizer import is_member, member_words


def _pairs(preds):
    return {(p.word, p.event) for p in preds}


def test_predecessor_examples(w):
    assert _pairs(predecessors(w("2+"))) == {(Word.empty(2), InsertionEvent(1, POS))}
    twice = predecessors(w("2+ 2+"))
    assert _pairs(twice) == {(w("2+"), InsertionEvent(1, POS)), (w("2+"), InsertionEvent(2, POS))}
    only = predecessors(w("2+ 1-"))
    assert len(only) == 1
    assert (only[0].word, only[0].event, only[0].kill_position) == (w("2-"), InsertionEvent(1, POS), 1)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_predecessors_match_brute_force(k):
    for n in range(1, 6):
        # every forward edge from every word of length n-1, grouped by target
        images = {}
        for z in all_words(k, n - 1):
            for e in events(len(z)):
                images.setdefault(step(z, e), set()).add((z, e))
        for target in all_words(k, n):
            found = predecessors(target)
            assert len(found) == len(_pairs(found))
            assert _pairs(found) == images.get(target, set())


def test_multiplicity_examples(w):
    assert multiplicity(w("2+"), 2) == 1
    assert multiplicity(w("2+ 2+"), 2) == 2
    assert multiplicity(w("2+ 0-"), 2) == 0
    assert multiplicity(w("2- 1+"), 2) == 1
    assert multiplicity(Word.empty(2)) == 1
    assert multiplicity(w("2- 1+ 2+")) == 3


@pytest.mark.parametrize("k", [1, 2, 3])
def test_multiplicity_matches_enumeration(k):
    table = PowerSeriesTable(k)
    for n in range(6):
        oracle = enumerate_words(k, n)
        for word in member_words(k, n):
            assert table.multiplicity(word) == oracle[word]
        assert set(member_words(k, n)) == set(oracle)


def test_positivity_iff_member():
    table = PowerSeriesTable(2)
    for n in range(5):
        for word in all_words(2, n):
            assert (table.multiplicity(word) > 0) == is_member(word)


def test_big_integers():
    # 21! overflows 64 bits; the count for all k-letters is exact
    k, n = 2, 21
    word = Word(((k, POS),) * n, k)
    assert multiplicity(word) == math.factorial(n)
    assert multiplicity(word) > 2**63


def test_table_arity_and_cap(w):
    with pytest.raises(ValueError):
        PowerSeriesTable(3).multiplicity(w("2+"))
    with pytest.raises(ResourceLimitError):
        PowerSeriesTable(2, max_entries=3).multiplicity(w("2+ 2- 1+ 2+ 1-"))


def test_table_shared_between_threads():
    table = PowerSeriesTable(2)
    words = member_words(2, 6)
    results = {}

    def work(chunk):
        for word in chunk:
            results[word] = table.multiplicity(word)

    threads = [threading.Thread(target=work, args=(words[i::4],)) for i in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    oracle = enumerate_words(2, 6)
    assert results == {word: oracle[word] for word in words}


def test_literal_pseudocode_differs(w):
    assert literal_multiplicity(Word.empty(2)) == 0
    assert literal_multiplicity(w("2+")) == 1
    diffs = literal_divergences(2, 3)
    assert diffs
    assert (w("2+ 2-"), 1, 2) in diffs


def test_trees_count(w):
    assert trees_count(w("2+")) == 1
    assert trees_count(w("2- 1+")) == 1
    assert trees_count(w("2+ 2-")) == 2


@pytest.mark.parametrize("k", [1, 2, 3])
def test_trees_is_lambda_sum(k):
    for n in range(6):
        for word in member_words(k, n):
            assert trees_count(word) == lambda_plus(word) + lambda_minus(word)


# exact averages of the optimal tree count over all signed permutations,
# computed once with brute_force_min_trees
FROZEN_Z = {
    (1, 2): Fraction(7, 4),
    (1, 3): Fraction(29, 12),
    (1, 4): Fraction(193, 64),
    (1, 5): Fraction(1143, 320),
    (2, 2): Fraction(7, 4),
    (2, 3): Fraction(7, 3),
    (2, 4): Fraction(17, 6),
    (2, 5): Fraction(131, 40),
}


def test_scaling_exact_small():
    assert scaling_exact(2, 0) == 0
    assert scaling_exact(3, 1) == 1
    assert scaling_exact(2, 2) == Fraction(7, 4)


@pytest.mark.parametrize("k,n", sorted(FROZEN_Z))
def test_scaling_frozen(k, n):
    assert scaling_exact(k, n) == FROZEN_Z[k, n]
    assert scaling_from_series(k, n) == FROZEN_Z[k, n]


def test_frozen_values_against_brute_force():
    for (k, n), value in FROZEN_Z.items():
        if n > 4:
            continue
        total = sum(brute_force_min_trees(p, k) for p in all_signed_permutations(n))
        assert Fraction(total, 2**n * math.factorial(n)) == value


def test_montecarlo_trivial_and_deterministic():
    one = scaling_montecarlo(2, 1, 50, seed=3)
    assert one.mean == 1 and one.stderr == 0
    a = scaling_montecarlo(2, 4, 200, seed=9)
    b = scaling_montecarlo(2, 4, 200, seed=9)
    assert a == b
    assert scaling_montecarlo(2, 4, 200, seed=10) != a


def test_montecarlo_close_to_exact():
    est = scaling_montecarlo(2, 2, 10_000, seed=1)
    assert abs(float(est.mean) - 1.75) <= 3 * est.stderr


def test_montecarlo_needs_samples():
    with pytest.raises(ValueError):
        scaling_montecarlo(2, 2, 0, seed=1)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 2), st.sampled_from([POS, NEG])), min_size=1, max_size=7))
def test_multiplicity_is_sum_over_predecessors(letters):
    word = Word(tuple(letters), 2)
    value = multiplicity(word)
    if is_member(word):
        assert value == sum(multiplicity(p.word) for p in predecessors(word))
    else:
        assert value == 0
