"""Heap decompositions of signed permutations.

A forest of min-heap ordered k-ary trees in which every child carries the
sign opposite to its parent.  Each node offers ``k - #children`` free slots
of the opposite polarity, admitting any later value at least as large as the
node's own value.
"""

from __future__ import annotations

import bisect
import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Optional, Sequence

from .core import NEG, POS, SignedLetter, SignedPermutation, Word, sign_char


class NotHeapable(Exception):
    """The permutation admits no single-heap insertion order."""


@dataclass(frozen=True)
class Slot:
    bound: int
    polarity: int
    node: int  # index of the hosting node

    def __str__(self) -> str:
        return f"[{self.bound},inf){sign_char(self.polarity)}"


@dataclass(frozen=True)
class HeapNode:
    value: int
    sign: int
    parent: Optional[int]


@dataclass(frozen=True)
class HeapForest:
    """Nodes in insertion order; ``parent`` indexes into ``nodes``."""

    k: int
    nodes: tuple[HeapNode, ...] = ()

    @cached_property
    def _children(self) -> tuple[tuple[int, ...], ...]:
        kids: list[list[int]] = [[] for _ in self.nodes]
        for i, node in enumerate(self.nodes):
            if node.parent is not None:
                kids[node.parent].append(i)
        return tuple(tuple(c) for c in kids)

    @cached_property
    def roots(self) -> tuple[int, ...]:
        return tuple(i for i, node in enumerate(self.nodes) if node.parent is None)

    @cached_property
    def values(self) -> frozenset[int]:
        return frozenset(node.value for node in self.nodes)

    def children(self, i: int) -> tuple[int, ...]:
        return self._children[i]

    def free(self, i: int) -> int:
        return self.k - len(self._children[i])

    def tree_count(self) -> int:
        return len(self.roots)

    def tree_of(self, i: int) -> int:
        """Position of the tree containing node ``i`` among the roots."""
        while self.nodes[i].parent is not None:
            i = self.nodes[i].parent
        return self.roots.index(i)

    def slots(self, polarity: int | None = None) -> list[Slot]:
        out = []
        for i, node in enumerate(self.nodes):
            if polarity is not None and -node.sign != polarity:
                continue
            out.extend(Slot(node.value, -node.sign, i) for _ in range(self.free(i)))
        return out

    def attach(self, value: int, sign: int, parent: Optional[int]) -> "HeapForest":
        """Insert ``value`` under ``parent`` (or as a new root), checking legality."""
        if value in self.values:
            raise ValueError(f"duplicate value {value}")
        if sign not in (POS, NEG):
            raise ValueError(f"bad sign {sign!r}")
        if parent is not None:
            host = self.nodes[parent]
            if self.free(parent) <= 0:
                raise ValueError(f"node {host.value} has no free slot")
            if host.sign == sign:
                raise ValueError("child must have the sign opposite to its parent")
            if host.value > value:
                raise ValueError(f"{value} cannot hang below {host.value}")
        return HeapForest(self.k, self.nodes + (HeapNode(value, sign, parent),))

    def __len__(self) -> int:
        return len(self.nodes)


def compatible_slots(f: HeapForest, value: int, sign: int) -> list[Slot]:
    return [s for s in f.slots(sign) if s.bound <= value]


def greedy_insert(f: HeapForest, value: int, sign: int, k: int | None = None) -> HeapForest:
    """Use the compatible slot with the largest bound, else start a new tree."""
    if k is not None and k != f.k:
        raise ValueError(f"forest has arity {f.k}, asked for k={k}")
    if value in f.values:
        raise ValueError(f"duplicate value {value}")
    best = None
    best_key = None
    for slot in compatible_slots(f, value, sign):
        # ties between equal bounds: lowest tree, then leftmost (earliest) node
        key = (-slot.bound, f.tree_of(slot.node), slot.node)
        if best_key is None or key < best_key:
            best, best_key = slot, key
    return f.attach(value, sign, None if best is None else best.node)


def greedy_decompose(p: SignedPermutation, k: int) -> tuple[HeapForest, int]:
    f = HeapForest(k)
    for value, sign in p:
        f = greedy_insert(f, value, sign)
    return f, f.tree_count()


def greedy_tree_count(p: SignedPermutation, k: int) -> int:
    """Tree count of the greedy decomposition, tracked on slot bounds only."""
    bounds = {POS: [], NEG: []}
    trees = 0
    for value, sign in p:
        pool = bounds[sign]
        at = bisect.bisect_right(pool, value)
        if at:
            del pool[at - 1]
        else:
            trees += 1
        other = bounds[-sign]
        at = bisect.bisect_left(other, value)
        other[at:at] = [value] * k
    return trees


def brute_force_min_trees(p: SignedPermutation, k: int, max_n: int = 9) -> int:
    """Fewest trees over every legal sequence of insertions.

    The search state is the remaining suffix plus the sorted free-slot bounds
    of each polarity, which is all that later insertions can observe.
    """
    if len(p) > max_n:
        raise ValueError(f"brute force limited to n <= {max_n}, got {len(p)}")
    items = tuple(p)

    @lru_cache(maxsize=None)
    def best(i: int, pos: tuple, neg: tuple) -> int:
        if i == len(items):
            return 0
        value, sign = items[i]
        own, other = (pos, neg) if sign == POS else (neg, pos)
        grown = tuple(sorted(other + (value,) * k))
        candidates = []
        # a fresh tree is always legal
        candidates.append(1 + _recurse(best, i, sign, own, grown))
        for bound in sorted(set(own)):
            if bound > value:
                break
            j = own.index(bound)
            used = own[:j] + own[j + 1:]
            candidates.append(_recurse(best, i, sign, used, grown))
        return min(candidates)

    return best(0, (), ())


def _recurse(best, i, sign, own, other):
    if sign == POS:
        return best(i + 1, own, other)
    return best(i + 1, other, own)


@dataclass(frozen=True)
class Signature:
    values: tuple[int, ...]
    polarity: int

    def __len__(self) -> int:
        return len(self.values)


def signature(f: HeapForest, polarity: int) -> Signature:
    return Signature(tuple(sorted(s.bound for s in f.slots(polarity))), polarity)


def _covers(a: Sequence[int], b: Sequence[int], literal: bool = False) -> bool:
    """``a`` has at least as many entries as ``b``, each no larger.

    ``literal=True`` uses the reversed cardinality clause ``|a| <= |b|``
    instead, under which domination is not preserved by insertions.
    """
    if literal:
        return len(a) <= len(b) and all(x <= y for x, y in zip(a, b))
    return len(a) >= len(b) and all(x <= y for x, y in zip(a, b))


def _values(sig) -> tuple:
    return tuple(sig.values) if isinstance(sig, Signature) else tuple(sig)


def dominates(a, b, literal: bool = False) -> bool:
    """Signature-pair domination; ``a`` and ``b`` are ``(sig_plus, sig_minus)``.

    Forests are accepted too and reduced to their signature pair.  ``a``
    dominates ``b`` when, for each polarity, ``a`` has at least as many free
    slots and its i-th smallest bound is at most the i-th smallest of ``b``.
    """
    if isinstance(a, HeapForest):
        a = (signature(a, POS), signature(a, NEG))
    if isinstance(b, HeapForest):
        b = (signature(b, POS), signature(b, NEG))
    return _covers(_values(a[0]), _values(b[0]), literal) and _covers(
        _values(a[1]), _values(b[1]), literal
    )


@dataclass(frozen=True)
class KMultiset:
    """Multiset where every element occurs at most ``k`` times."""

    k: int
    items: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        merged: dict[int, int] = {}
        for elem, mult in self.items:
            merged[elem] = merged.get(elem, 0) + mult
        for elem, mult in merged.items():
            if not 0 <= mult <= self.k:
                raise ValueError(f"multiplicity {mult} of {elem} outside 0..{self.k}")
        object.__setattr__(
            self, "items", tuple(sorted((e, m) for e, m in merged.items() if m))
        )

    @classmethod
    def of(cls, k: int, mapping: dict[int, int]) -> "KMultiset":
        return cls(k, tuple(mapping.items()))

    def as_dict(self) -> dict[int, int]:
        return dict(self.items)

    def multiplicity(self, elem: int) -> int:
        return self.as_dict().get(elem, 0)

    def expanded(self) -> tuple[int, ...]:
        return tuple(e for e, m in self.items for _ in range(m))

    def __len__(self) -> int:
        return sum(m for _, m in self.items)

    def __contains__(self, elem: int) -> bool:
        return self.multiplicity(elem) > 0


def hammersley_insert(
    a: KMultiset,
    x: int,
    k: int | None = None,
    greedy: bool = True,
    victim: Optional[int] = None,
) -> KMultiset:
    """Give ``x`` multiplicity ``k`` and take one copy from a larger element.

    The greedy choice of victim is the smallest larger element present.
    """
    k = a.k if k is None else k
    if k != a.k:
        raise ValueError(f"multiset has bound {a.k}, asked for k={k}")
    if x in a:
        raise ValueError(f"{x} already present")
    counts = a.as_dict()
    if greedy:
        larger = [e for e in counts if e > x]
        victim = min(larger) if larger else None
    elif victim is not None and (victim <= x or counts.get(victim, 0) <= 0):
        raise ValueError(f"invalid victim {victim} for inserting {x}")
    if victim is not None:
        counts[victim] -= 1
    counts[x] = k
    return KMultiset.of(k, counts)


def insert_k_copies(a: KMultiset, x: int) -> KMultiset:
    if x in a:
        raise ValueError(f"{x} already present")
    counts = a.as_dict()
    counts[x] = a.k
    return KMultiset.of(a.k, counts)


def delete_element(a: KMultiset, x: int) -> KMultiset:
    counts = a.as_dict()
    counts.pop(x, None)
    return KMultiset.of(a.k, counts)


def multiset_dominates(a: KMultiset, b: KMultiset, literal: bool = False) -> bool:
    """Domination oriented like :func:`hammersley_insert`.

    Insertions here consume *larger* elements, the mirror image of a heap slot
    consuming a smaller bound, so elements are compared from the top down:
    ``a`` has at least as many elements and its i-th largest is at least the
    i-th largest of ``b``.  ``literal=True`` gives the bottom-up
    comparison with ``|a| <= |b|``.
    """
    if literal:
        return _covers(a.expanded(), b.expanded(), literal=True)
    top_a = [-x for x in reversed(a.expanded())]
    top_b = [-x for x in reversed(b.expanded())]
    return _covers(top_a, top_b)


def derive_sign(sigma: Sequence[int], k: int = 2) -> tuple[int, ...]:
    """Signs under which the unsigned greedy heap is also a legal signed heap.

    Each element hangs below the largest earlier smaller element that still
    has room; its sign is the opposite of that parent's.  Raises
    :class:`NotHeapable` when some element finds no parent.
    """
    values = list(sigma)
    if len(set(values)) != len(values):
        raise ValueError("values must be pairwise distinct")
    if not values:
        return ()
    room = {0: k}
    signs = [POS]
    for i in range(1, len(values)):
        x = values[i]
        parent = None
        for j in room:
            if room[j] > 0 and values[j] < x and (parent is None or values[j] > values[parent]):
                parent = j
        if parent is None:
            raise NotHeapable(f"no free parent below {x} at position {i + 1}")
        room[parent] -= 1
        room[i] = k
        signs.append(-signs[parent])
    return tuple(signs)


def forest_to_word(f: HeapForest, k: int | None = None) -> Word:
    """Free-slot word: one letter per node, in increasing order of value.

    A node with ``p`` free slots of polarity ``s`` contributes ``p^s``; full
    nodes contribute ``0`` so that the word stays one letter per element.
    """
    k = f.k if k is None else k
    order = sorted(range(len(f.nodes)), key=lambda i: f.nodes[i].value)
    letters = tuple(SignedLetter(f.free(i), -f.nodes[i].sign) for i in order)
    return Word._trusted(letters, k)


def validate_forest(f: HeapForest) -> None:
    """Raise ValueError unless heap order, alternation and arity hold."""
    seen = set()
    for i, node in enumerate(f.nodes):
        if node.value in seen:
            raise ValueError(f"duplicate value {node.value}")
        seen.add(node.value)
        if node.parent is not None:
            if not 0 <= node.parent < i:
                raise ValueError(f"node {i} has parent {node.parent} not inserted before it")
            host = f.nodes[node.parent]
            if host.value > node.value:
                raise ValueError(f"heap order broken at {host.value} -> {node.value}")
            if host.sign == node.sign:
                raise ValueError(f"signs do not alternate at {host.value} -> {node.value}")
        if len(f.children(i)) > f.k:
            raise ValueError(f"node {node.value} has more than {f.k} children")


def _label(node: HeapNode) -> str:
    return f"{node.value}/{sign_char(node.sign)}"


def forest_to_dot(f: HeapForest) -> str:
    lines = ["digraph forest {", "  node [shape=circle];"]
    for i, node in enumerate(f.nodes):
        lines.append(f'  n{i} [label="{_label(node)}"];')
    for i, node in enumerate(f.nodes):
        if node.parent is not None:
            lines.append(f"  n{node.parent} -> n{i};")
        for j in range(f.free(i)):
            polarity = sign_char(-node.sign)
            lines.append(f'  s{i}_{j} [shape=box, label="[{node.value},inf){polarity}"];')
            lines.append(f"  n{i} -> s{i}_{j} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def forest_to_json(f: HeapForest) -> dict:
    def record(i: int) -> dict:
        node = f.nodes[i]
        return {
            "value": node.value,
            "sign": sign_char(node.sign),
            "free_slots": f.free(i),
            "slot_polarity": sign_char(-node.sign),
            "children": [record(c) for c in f.children(i)],
        }

    return {"k": f.k, "trees": [record(r) for r in f.roots]}


def dumps_forest(f: HeapForest) -> str:
    return json.dumps(forest_to_json(f), indent=2)


def all_signed_permutations(n: int) -> Iterable[SignedPermutation]:
    from itertools import permutations, product

    for sigma in permutations(range(1, n + 1)):
        for tau in product((POS, NEG), repeat=n):
            yield SignedPermutation(sigma, tau)
