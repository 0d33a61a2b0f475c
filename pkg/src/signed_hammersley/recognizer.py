"""Membership in the language of the signed Hammersley process.

Two independent deciders are provided: the prefix-wise dominance test on
lambda counts, and a pair of deterministic one-counter automata whose
intersection accepts the same language.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

from .core import (
    NEG,
    POS,
    SignedLetter,
    Word,
    alphabet_letters,
    all_words,
    counts,
    format_word,
    lambda_of,
    letter_delta,
)


class StrictnessMode(enum.Enum):
    # the lambda count of the first letter's polarity must be > 0
    PAPER_FIRST_LETTER = "paper-strict"
    # both lambda counts >= 0, nothing strict
    NON_STRICT = "nonstrict"
    # both >= 0 and their sum >= 1
    EITHER_STRICT = "either-strict"

    @classmethod
    def parse(cls, text: str) -> "StrictnessMode":
        for mode in cls:
            if mode.value == text:
                return mode
        raise ValueError(f"unknown mode {text!r}; choose from {[m.value for m in cls]}")


DEFAULT_MODE = StrictnessMode.NON_STRICT


def _strict_ok(first: SignedLetter, lam_pos: int, lam_neg: int, mode: StrictnessMode) -> bool:
    if mode is StrictnessMode.PAPER_FIRST_LETTER:
        return (lam_pos if first.sign == POS else lam_neg) > 0
    if mode is StrictnessMode.EITHER_STRICT:
        return lam_pos + lam_neg >= 1
    return True


def is_k_dominant(w: Word, k: int | None = None, mode: StrictnessMode = DEFAULT_MODE) -> bool:
    if len(w) == 0:
        raise ValueError("dominance is only defined for nonempty words")
    k = w.k if k is None else k
    if w.letters[0].value != k:
        return False
    c = counts(w)
    lam_pos, lam_neg = lambda_of(c, POS), lambda_of(c, NEG)
    if lam_pos < 0 or lam_neg < 0:
        return False
    return _strict_ok(w.letters[0], lam_pos, lam_neg, mode)


def is_member(w: Word, k: int | None = None, mode: StrictnessMode = DEFAULT_MODE) -> bool:
    """Every nonempty prefix dominant; strictness checked on the full word only."""
    k = w.k if k is None else k
    letters = w.letters
    if not letters:
        return True
    first = letters[0]
    if first.value != k:
        return False
    lam_pos = lam_neg = 0
    for letter in letters:
        lam_pos += letter_delta(letter, k, POS)
        lam_neg += letter_delta(letter, k, NEG)
        if lam_pos < 0 or lam_neg < 0:
            return False
    return _strict_ok(first, lam_pos, lam_neg, mode)


@dataclass(frozen=True)
class CounterAutomaton:
    """Deterministic automaton with one nonnegative counter.

    ``accept`` maps each accepting state to the least counter value allowed
    at end of input (0 or 1), which is a zero test on the stack top.
    """

    k: int
    states: frozenset[str]
    initial: str
    transitions: dict[tuple[str, SignedLetter], tuple[str, int]]
    accept: dict[str, int]
    name: str = ""
    reject_on_underflow: bool = field(default=True)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "k": self.k,
            "states": sorted(self.states),
            "initial": self.initial,
            "accept": dict(sorted(self.accept.items())),
            "transitions": [
                {"from": src, "letter": str(letter), "to": dst, "delta": delta}
                for (src, letter), (dst, delta) in sorted(
                    self.transitions.items(), key=lambda kv: (kv[0][0], kv[0][1])
                )
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _build(k: int, mode: StrictnessMode, sign: int, name: str) -> CounterAutomaton:
    if k < 1:
        raise ValueError("k must be >= 1")
    start, from_pos, from_neg = "start", "first+", "first-"
    letters = alphabet_letters(k)
    transitions = {}
    for letter in letters:
        delta = letter_delta(letter, k, sign)
        if letter.value == k:
            target = from_pos if letter.sign == POS else from_neg
            transitions[(start, letter)] = (target, delta)
        for state in (from_pos, from_neg):
            transitions[(state, letter)] = (state, delta)
    # The counter equals the running lambda count of `sign` on every prefix;
    # an underflow is a prefix violating dominance.
    own_first = from_pos if sign == POS else from_neg
    accept = {start: 0, from_pos: 0, from_neg: 0}
    if mode is StrictnessMode.PAPER_FIRST_LETTER:
        accept[own_first] = 1
    # EITHER_STRICT needs no extra test: once every prefix is dominant, the
    # last letter raised its own lambda count by one, so the sum is >= 1.
    return CounterAutomaton(
        k=k,
        states=frozenset(accept),
        initial=start,
        transitions=transitions,
        accept=accept,
        name=name,
    )


def build_a1(k: int, mode: StrictnessMode = DEFAULT_MODE) -> CounterAutomaton:
    """Automaton enforcing the positive dominance inequality on every prefix."""
    return _build(k, mode, POS, f"A1(k={k},{mode.value})")


def build_a2(k: int, mode: StrictnessMode = DEFAULT_MODE) -> CounterAutomaton:
    """Polarity mirror of :func:`build_a1`."""
    return _build(k, mode, NEG, f"A2(k={k},{mode.value})")


def trace(a: CounterAutomaton, w: Word) -> list[int] | None:
    """Counter value after each letter, or None if the run dies."""
    state, counter = a.initial, 0
    out = []
    for letter in w.letters:
        move = a.transitions.get((state, letter))
        if move is None:
            return None
        state, delta = move
        counter += delta
        if counter < 0 and a.reject_on_underflow:
            return None
        out.append(counter)
    return out


def run(a: CounterAutomaton, w: Word) -> bool:
    state, counter = a.initial, 0
    transitions = a.transitions
    for letter in w.letters:
        move = transitions.get((state, letter))
        if move is None:
            return False
        state, delta = move
        counter += delta
        if counter < 0 and a.reject_on_underflow:
            return False
    need = a.accept.get(state)
    return need is not None and counter >= need


def automata_member(w: Word, mode: StrictnessMode = DEFAULT_MODE) -> bool:
    return run(build_a1(w.k, mode), w) and run(build_a2(w.k, mode), w)


def member_words(k: int, n: int) -> list[Word]:
    """All members of length ``n`` (default mode), grown letter by letter.

    Membership is prefix closed, so extending only members is exhaustive.
    """
    level = [Word.empty(k)]
    alphabet = alphabet_letters(k)
    for _ in range(n):
        level = [
            child
            for w in level
            for child in (Word._trusted(w.letters + (a,), k) for a in alphabet)
            if is_member(child)
        ]
    return level


@dataclass
class StrictnessReport:
    """Disagreements between each mode and the forward process."""

    k: int
    max_length: int
    # mode -> sorted list of (word text, in_mode, in_process)
    differences: dict[StrictnessMode, list[tuple[str, bool, bool]]]

    def lines(self) -> list[str]:
        out = []
        for mode, diffs in self.differences.items():
            out.append(f"k={self.k} n<={self.max_length} mode={mode.value}: {len(diffs)} differences")
            for text, in_mode, in_process in diffs:
                out.append(f"  {text or '(empty)'}\tmode={int(in_mode)}\tprocess={int(in_process)}")
        return out


def strictness_report(k: int, max_length: int) -> StrictnessReport:
    """Compare every mode against ``enumerate_words`` for lengths 0..max_length."""
    from .process import enumerate_words, token_key

    differences = {mode: [] for mode in StrictnessMode}
    for n in range(max_length + 1):
        reachable = set(enumerate_words(k, n))
        for w in sorted(all_words(k, n), key=token_key):
            in_process = w in reachable
            for mode in StrictnessMode:
                in_mode = is_member(w, k, mode)
                if in_mode != in_process:
                    differences[mode].append((format_word(w), in_mode, in_process))
    return StrictnessReport(k, max_length, differences)


__all__ = [
    "StrictnessMode",
    "DEFAULT_MODE",
    "CounterAutomaton",
    "is_k_dominant",
    "is_member",
    "build_a1",
    "build_a2",
    "run",
    "trace",
    "automata_member",
    "strictness_report",
    "member_words",
    "StrictnessReport",
]
