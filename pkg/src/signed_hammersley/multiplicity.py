"""Reverse-time computation of word multiplicities and tree statistics."""

from __future__ import annotations

import math
import random
import statistics
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import (
    ResourceLimitError,
    SignedLetter,
    SignedPermutation,
    Word,
    counts,
    default_cap,
)
from .process import InsertionEvent, enumerate_words
from .recognizer import is_member, member_words

DEFAULT_MAX_MEMO = 5_000_000


@dataclass(frozen=True)
class Predecessor:
    word: Word
    event: InsertionEvent
    kill_position: Optional[int] = None  # 1-based index into ``word``


def predecessors(w: Word, k: int | None = None) -> list[Predecessor]:
    """All ``(z, event)`` with ``step(z, event) == w``, each exactly once."""
    if k is not None and k != w.k:
        raise ValueError(f"word has arity {w.k}, asked for k={k}")
    k = w.k
    letters = w.letters
    n = len(letters)
    out = []
    for i, (value, sign) in enumerate(letters):
        if value != k:
            continue
        event = InsertionEvent(i + 1, sign)
        rest = letters[:i] + letters[i + 1:]
        blocked = False
        for j in range(i + 1, n):
            v, s = letters[j]
            if s == sign:
                continue
            # j was the letter hit by the insertion; in z it had one more life
            if v < k:
                z = list(rest)
                z[j - 1] = SignedLetter(v + 1, s)
                out.append(Predecessor(Word._trusted(tuple(z), k), event, j))
            if v > 0:
                blocked = True
                break
        if not blocked:
            out.append(Predecessor(Word._trusted(rest, k), event, None))
    return out


class PowerSeriesTable:
    """Memo of exact multiplicities for one arity.

    Lookups may run from several threads; insertions take a lock, and since
    every value is a pure function of its key the result does not depend on
    interleaving.
    """

    def __init__(self, k: int, max_entries: int | None = None):
        self.k = k
        self.max_entries = (
            default_cap("max_memo", DEFAULT_MAX_MEMO) if max_entries is None else max_entries
        )
        self.memo: dict[tuple, int] = {(): 1}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self.memo)

    def __contains__(self, w: Word) -> bool:
        return w.letters in self.memo

    def get(self, w: Word) -> Optional[int]:
        return self.memo.get(w.letters)

    def _store(self, letters: tuple, value: int) -> None:
        with self._lock:
            if letters not in self.memo and len(self.memo) >= self.max_entries:
                raise ResourceLimitError(f"memo table exceeded {self.max_entries} entries")
            self.memo[letters] = value

    def multiplicity(self, w: Word) -> int:
        if w.k != self.k:
            raise ValueError(f"table has arity {self.k}, word has arity {w.k}")
        return self._compute(w)

    def _compute(self, w: Word) -> int:
        cached = self.memo.get(w.letters)
        if cached is not None:
            return cached
        if not is_member(w):
            value = 0
        else:
            value = sum(self._compute(p.word) for p in predecessors(w))
        self._store(w.letters, value)
        return value


def multiplicity(w: Word, k: int | None = None, table: PowerSeriesTable | None = None) -> int:
    """Number of histories of the process that end in ``w``."""
    if k is not None and k != w.k:
        raise ValueError(f"word has arity {w.k}, asked for k={k}")
    if table is None:
        table = PowerSeriesTable(w.k)
    return table.multiplicity(w)


def literal_multiplicity(w: Word, k: int | None = None, _memo: dict | None = None) -> int:
    """Line-by-line transcription of the reference pseudocode.

    Kept only so its output can be compared with :func:`multiplicity`; the
    index ranges are taken literally (``j`` runs over ``1..r-1``, the final
    removal is unguarded), and the empty word returns 0.
    """
    k = w.k if k is None else k
    memo = {} if _memo is None else _memo
    key = w.letters
    if key in memo:
        return memo[key]
    letters = w.letters
    n = len(letters)
    total = 0
    if not is_member(w):
        memo[key] = 0
        return 0
    if n == 1 and letters[0].value == k:
        memo[key] = 1
        return 1

    def recurse(z):
        return literal_multiplicity(Word._trusted(tuple(z), k), k, memo)

    for i in range(n):
        value, sign = letters[i]
        if value == k and any(s != sign for _, s in letters[i + 1:]):
            r = n  # 0-based stand-in for n+1
            for l in range(i + 1, n):
                if letters[l].sign != sign and letters[l].value >= 1:
                    r = l
                    break
            if r == n or letters[r].value != k:
                for j in range(r):
                    if letters[j] == (0, -sign):
                        z = list(letters)
                        z[j] = SignedLetter(1, -sign)
                        del z[i]
                        total += recurse(z)
                if r < n:
                    z = list(letters)
                    z[r] = SignedLetter(letters[r].value + 1, -sign)
                    del z[i]
                    total += recurse(z)
        if value == k:
            total += recurse(letters[:i] + letters[i + 1:])
    memo[key] = total
    return total


def literal_divergences(k: int, max_length: int) -> list[tuple[Word, int, int]]:
    """Words where the reference pseudocode and :func:`multiplicity` disagree."""
    table = PowerSeriesTable(k)
    memo: dict = {}
    out = []
    for n in range(max_length + 1):
        for w in enumerate_words(k, n):
            ours = table.multiplicity(w)
            theirs = literal_multiplicity(w, k, memo)
            if ours != theirs:
                out.append((w, ours, theirs))
    return out


def trees_count(w: Word, k: int | None = None) -> int:
    """Heap roots encoded by a slot word: ``|w|_k - sum (i-1)|w|_(k-i)``."""
    c = counts(w)
    k = w.k if k is None else k
    return c.value_count(k) - sum((i - 1) * c.value_count(k - i) for i in range(1, k + 1))


def history_count(n: int) -> int:
    return 2**n * math.factorial(n)


def scaling_exact(k: int, n: int, max_words: int | None = None) -> Fraction:
    """Expected greedy tree count of a uniform random signed permutation of length n."""
    table = enumerate_words(k, n, max_words)
    total = sum(mult * trees_count(w) for w, mult in table.items())
    return Fraction(total, history_count(n))


def scaling_from_series(k: int, n: int, table: PowerSeriesTable | None = None) -> Fraction:
    """Same quantity, summing reverse-time multiplicities over member words."""
    table = PowerSeriesTable(k) if table is None else table
    level = member_words(k, n)
    total = sum(table.multiplicity(w) * trees_count(w) for w in level)
    return Fraction(total, history_count(n))


def random_signed_permutation(n: int, rng: random.Random) -> SignedPermutation:
    sigma = list(range(1, n + 1))
    rng.shuffle(sigma)
    tau = [rng.choice((1, -1)) for _ in range(n)]
    return SignedPermutation(tuple(sigma), tuple(tau))


def _sample_rng(seed: int, index: int) -> random.Random:
    # per-sample streams keep results independent of how samples are split up
    return random.Random(f"{seed}:{index}")


@dataclass(frozen=True)
class MonteCarloEstimate:
    mean: Fraction
    stderr: float
    samples: int
    seed: int


def scaling_montecarlo(k: int, n: int, samples: int, seed: int) -> MonteCarloEstimate:
    from .heaps import greedy_tree_count

    if samples < 1:
        raise ValueError("samples must be >= 1")
    values = []
    for index in range(samples):
        p = random_signed_permutation(n, _sample_rng(seed, index))
        values.append(greedy_tree_count(p, k))
    mean = Fraction(sum(values), samples)
    stderr = statistics.stdev(values) / math.sqrt(samples) if samples > 1 else 0.0
    return MonteCarloEstimate(mean, stderr, samples, seed)


__all__ = [
    "Predecessor",
    "PowerSeriesTable",
    "predecessors",
    "multiplicity",
    "literal_multiplicity",
    "literal_divergences",
    "trees_count",
    "scaling_exact",
    "scaling_from_series",
    "scaling_montecarlo",
    "MonteCarloEstimate",
    "history_count",
]
