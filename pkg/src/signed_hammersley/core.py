"""Alphabet, words and signed permutations.

Letters are pairs ``(value, sign)`` with ``0 <= value <= k`` and ``sign`` in
``{+1, -1}``.  The text form of a letter is its decimal value followed by the
sign character, e.g. ``"2+"`` or ``"10-"``.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

POS = 1
NEG = -1

_SIGN_CHAR = {POS: "+", NEG: "-"}
_CHAR_SIGN = {"+": POS, "-": NEG}
_TOKEN = re.compile(r"^(\d+)([+-])$")
_SEPARATORS = re.compile(r"[\s,]+")


class ResourceLimitError(RuntimeError):
    """A configurable size cap (distinct words, memo entries, ...) was exceeded."""


def default_cap(name: str, fallback: int) -> int:
    """Read a resource cap from ``SIGNED_HAMMERSLEY_<NAME>`` or use ``fallback``."""
    raw = os.environ.get(f"SIGNED_HAMMERSLEY_{name.upper()}")
    if raw is None:
        return fallback
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"environment cap {name} must be an integer, got {raw!r}")


def sign_char(sign: int) -> str:
    return _SIGN_CHAR[sign]


def parse_sign(text: str) -> int:
    try:
        return _CHAR_SIGN[text.strip()]
    except KeyError:
        raise ValueError(f"bad sign {text!r}, expected '+' or '-'") from None


class SignedLetter(NamedTuple):
    value: int
    sign: int

    def __str__(self) -> str:
        return f"{self.value}{_SIGN_CHAR[self.sign]}"


@dataclass(frozen=True)
class Word:
    """A finite word over the signed alphabet of arity ``k``."""

    letters: tuple[SignedLetter, ...]
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"arity must be >= 1, got {self.k}")
        letters = tuple(SignedLetter(*p) for p in self.letters)
        for letter in letters:
            if letter.sign not in _SIGN_CHAR:
                raise ValueError(f"bad sign in letter {letter!r}")
            if not 0 <= letter.value <= self.k:
                raise ValueError(f"letter {letter} out of range for k={self.k}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def _trusted(cls, letters: tuple, k: int) -> "Word":
        # hot paths build words from letters already known to be valid
        w = object.__new__(cls)
        object.__setattr__(w, "letters", letters)
        object.__setattr__(w, "k", k)
        return w

    @classmethod
    def empty(cls, k: int) -> "Word":
        return cls((), k)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return Word._trusted(self.letters[index], self.k)
        return self.letters[index]

    def __str__(self) -> str:
        return format_word(self)

    def prefixes(self):
        """Nonempty prefixes, shortest first."""
        for end in range(1, len(self.letters) + 1):
            yield self[:end]


def parse_word(text: str, k: int) -> Word:
    tokens = [t for t in _SEPARATORS.split(text.strip()) if t]
    letters = []
    for token in tokens:
        m = _TOKEN.match(token)
        if m is None:
            raise ValueError(f"malformed letter {token!r}")
        value = int(m.group(1))
        if value > k:
            raise ValueError(f"letter {token!r} exceeds k={k}")
        letters.append(SignedLetter(value, _CHAR_SIGN[m.group(2)]))
    return Word(tuple(letters), k)


def format_word(w: Word) -> str:
    return " ".join(str(letter) for letter in w.letters)


def word(*tokens: str, k: int) -> Word:
    """Shorthand: ``word("2+", "1-", k=2)``."""
    return parse_word(" ".join(tokens), k)


def require_same_arity(*words: Word) -> int:
    arities = {w.k for w in words}
    if len(arities) != 1:
        raise ValueError(f"words of different arity: {sorted(arities)}")
    return arities.pop()


class ParikhCounts:
    """Letter counts ``count[value][sign]`` of a word."""

    __slots__ = ("k", "_table")

    def __init__(self, k: int, table: dict[tuple[int, int], int] | None = None):
        self.k = k
        self._table = {}
        for (value, sign), n in (table or {}).items():
            if n:
                self._table[(value, sign)] = n

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self._table.get(key, 0)

    def total(self) -> int:
        return sum(self._table.values())

    def value_count(self, value: int) -> int:
        """Occurrences of ``value`` with either sign."""
        return self[value, POS] + self[value, NEG]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParikhCounts):
            return NotImplemented
        return self.k == other.k and self._table == other._table

    def __repr__(self) -> str:
        inner = ", ".join(
            f"{v}{_SIGN_CHAR[s]}: {n}" for (v, s), n in sorted(self._table.items())
        )
        return f"ParikhCounts(k={self.k}, {{{inner}}})"


def counts(w: Word) -> ParikhCounts:
    table: dict[tuple[int, int], int] = {}
    for letter in w.letters:
        key = (letter.value, letter.sign)
        table[key] = table.get(key, 0) + 1
    return ParikhCounts(w.k, table)


def lambda_of(c: ParikhCounts, sign: int) -> int:
    """Insertions of polarity ``sign`` that consumed nothing.

    Every letter of polarity ``sign`` was born as ``k`` of that sign; each
    opposite letter of value ``k - i`` lost ``i`` lives to such insertions.
    """
    k = c.k
    born = sum(c[v, sign] for v in range(k + 1))
    spent = sum(i * c[k - i, -sign] for i in range(1, k + 1))
    return born - spent


def lambda_plus(w: Word | ParikhCounts, k: int | None = None) -> int:
    c = w if isinstance(w, ParikhCounts) else counts(w)
    _check_k(c.k, k)
    return lambda_of(c, POS)


def lambda_minus(w: Word | ParikhCounts, k: int | None = None) -> int:
    c = w if isinstance(w, ParikhCounts) else counts(w)
    _check_k(c.k, k)
    return lambda_of(c, NEG)


def letter_delta(letter: SignedLetter, k: int, sign: int) -> int:
    """Change in the ``sign`` lambda count when ``letter`` is appended."""
    if letter.sign == sign:
        return 1
    return -(k - letter.value)


def _check_k(have: int, want: int | None) -> None:
    if want is not None and want != have:
        raise ValueError(f"word has arity {have}, operation asked for k={want}")


@dataclass(frozen=True)
class SignedPermutation:
    """Distinct integers ``sigma`` with signs ``tau`` in ``{+1, -1}``."""

    sigma: tuple[int, ...]
    tau: tuple[int, ...]

    def __post_init__(self):
        sigma = tuple(int(v) for v in self.sigma)
        tau = tuple(int(s) for s in self.tau)
        if len(sigma) != len(tau):
            raise ValueError(f"{len(sigma)} values but {len(tau)} signs")
        if len(set(sigma)) != len(sigma):
            raise ValueError("values must be pairwise distinct")
        for s in tau:
            if s not in _SIGN_CHAR:
                raise ValueError(f"bad sign {s!r}")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "tau", tau)

    def __len__(self) -> int:
        return len(self.sigma)

    def __iter__(self):
        return zip(self.sigma, self.tau)

    @classmethod
    def parse(cls, values: str, signs: str) -> "SignedPermutation":
        sigma = [int(t) for t in values.split(",") if t.strip()]
        tau = [parse_sign(t) for t in signs.split(",") if t.strip()]
        return cls(tuple(sigma), tuple(tau))

    def format(self) -> tuple[str, str]:
        return (
            ",".join(str(v) for v in self.sigma),
            ",".join(_SIGN_CHAR[s] for s in self.tau),
        )


def all_words(k: int, n: int) -> Iterable[Word]:
    """Every word of length ``n`` over the arity-``k`` alphabet."""
    from itertools import product

    alphabet = alphabet_letters(k)
    for letters in product(alphabet, repeat=n):
        yield Word._trusted(letters, k)


def alphabet_letters(k: int) -> Sequence[SignedLetter]:
    return [SignedLetter(v, s) for v in range(k + 1) for s in (POS, NEG)]
