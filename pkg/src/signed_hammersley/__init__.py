"""Signed Hammersley process: words, membership, multiplicities and heaps."""

from .core import (
    NEG,
    POS,
    ParikhCounts,
    ResourceLimitError,
    SignedLetter,
    SignedPermutation,
    Word,
    counts,
    format_word,
    lambda_minus,
    lambda_plus,
    parse_word,
)
from .heaps import (
    HeapForest,
    KMultiset,
    NotHeapable,
    Signature,
    Slot,
    brute_force_min_trees,
    derive_sign,
    dominates,
    forest_to_word,
    greedy_decompose,
    greedy_insert,
    hammersley_insert,
    signature,
)
from .multiplicity import (
    PowerSeriesTable,
    Predecessor,
    multiplicity,
    predecessors,
    scaling_exact,
    scaling_montecarlo,
    trees_count,
)
from .process import InsertionEvent, enumerate_words, sample_trajectory, step
from .recognizer import (
    CounterAutomaton,
    StrictnessMode,
    build_a1,
    build_a2,
    is_k_dominant,
    is_member,
    run,
)

__version__ = "0.1.0"
