"""Forward dynamics of the signed Hammersley process.

A step inserts a letter of value ``k`` and some polarity at a gap of the
current word; the first nonzero letter of opposite polarity to its right
(or, for the mirrored variant, to its left) loses one life.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator

from .core import (
    NEG,
    POS,
    ResourceLimitError,
    SignedLetter,
    Word,
    default_cap,
    format_word,
    parse_word,
    sign_char,
)

DEFAULT_MAX_WORDS = 2_000_000


@dataclass(frozen=True)
class InsertionEvent:
    position: int  # gap index, 1 = before the first letter
    polarity: int

    def __str__(self) -> str:
        return f"insert {self.position}{sign_char(self.polarity)}"


def _step_letters(letters: tuple, k: int, position: int, polarity: int, mirror: bool) -> tuple:
    at = position - 1
    out = list(letters)
    if mirror:
        scan = range(at - 1, -1, -1)
    else:
        scan = range(at, len(out))
    for j in scan:
        value, sign = out[j]
        if sign != polarity and value > 0:
            out[j] = SignedLetter(value - 1, sign)
            break
    out.insert(at, SignedLetter(k, polarity))
    return tuple(out)


def step(w: Word, event: InsertionEvent, k: int | None = None, *, mirror: bool = False) -> Word:
    """Apply one insertion.

    With ``mirror=True`` the decremented letter is the closest eligible one to
    the left of the insertion, which is how the free-slot word of a greedy
    heap forest evolves.
    """
    if k is not None and k != w.k:
        raise ValueError(f"word has arity {w.k}, step asked for k={k}")
    if not 1 <= event.position <= len(w) + 1:
        raise ValueError(f"position {event.position} outside 1..{len(w) + 1}")
    if event.polarity not in (POS, NEG):
        raise ValueError(f"bad polarity {event.polarity!r}")
    return Word._trusted(_step_letters(w.letters, w.k, event.position, event.polarity, mirror), w.k)


def events(length: int) -> Iterator[InsertionEvent]:
    """All events applicable to a word of the given length."""
    for position in range(1, length + 2):
        for polarity in (POS, NEG):
            yield InsertionEvent(position, polarity)


def enumerate_words(k: int, n: int, max_words: int | None = None) -> dict[Word, int]:
    """Exact multiplicity of every word reachable in exactly ``n`` steps.

    Every history (sequence of events) is counted once, so the values sum to
    ``2**n * n!``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if n < 0:
        raise ValueError("n must be >= 0")
    if max_words is None:
        max_words = default_cap("max_words", DEFAULT_MAX_WORDS)

    frontier: dict[tuple, int] = {(): 1}
    for m in range(n):
        nxt: dict[tuple, int] = {}
        for letters, mult in frontier.items():
            for position in range(1, m + 2):
                for polarity in (POS, NEG):
                    child = _step_letters(letters, k, position, polarity, False)
                    nxt[child] = nxt.get(child, 0) + mult
            if len(nxt) > max_words:
                raise ResourceLimitError(
                    f"more than {max_words} distinct words at length {m + 1}"
                )
        frontier = nxt
    return {Word._trusted(letters, k): mult for letters, mult in frontier.items()}


def sample_trajectory(k: int, n: int, seed: int) -> list[Word]:
    """Seeded random run from the empty word: ``n + 1`` words."""
    rng = random.Random(seed)
    w = Word.empty(k)
    out = [w]
    for m in range(1, n + 1):
        position = rng.randint(1, m)
        polarity = rng.choice((POS, NEG))
        w = step(w, InsertionEvent(position, polarity))
        out.append(w)
    return out


def token_key(w: Word) -> tuple[str, ...]:
    """Sort key: lexicographic over the letter tokens."""
    return tuple(str(letter) for letter in w.letters)


def write_multiplicities(table: dict[Word, int], out) -> None:
    for w in sorted(table, key=token_key):
        out.write(f"{format_word(w)}\t{table[w]}\n")


def read_multiplicities(lines: Iterable[str], k: int) -> dict[Word, int]:
    table = {}
    for line in lines:
        line = line.rstrip("\n")
        if not line:
            continue
        text, _, mult = line.rpartition("\t")
        table[parse_word(text, k)] = int(mult)
    return table
