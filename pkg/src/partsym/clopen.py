"""Clopen subsets of Cantor space as canonical prefix antichains.

A binary word ``w`` stands for the cylinder ``[w]`` of all infinite 0/1
sequences that start with ``w``; a :class:`Clopen` is a finite union of
cylinders.  Every clopen set has exactly one reduced antichain (no word is
a prefix of another and no sibling pair ``w0, w1`` occurs), so structural
equality is set equality.

``B_d`` denotes the clopen sets that are unions of depth-``d`` cylinders.
Inside ``B_d`` a clopen set is also handled as a bitmask over the ``2**d``
cylinders, with cylinder ``w`` at bit ``int(w, 2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Optional

from .errors import MalformedQuery, ResourceLimit

__all__ = [
    "Clopen",
    "EMPTY",
    "WHOLE",
    "canonicalize",
    "lattice_op",
    "union",
    "intersect",
    "complement",
    "minus",
    "subset",
    "enumerate_base",
    "tilde_truncated",
    "is_hereditary_sublattice",
    "carac_c_check",
    "fell_membership",
    "hereditary_census",
    "cylinder",
    "to_mask",
    "inner_mask",
    "from_mask",
]

MAX_BASE_DEPTH = 4
MAX_CENSUS_DEPTH = 2


def word_key(w: str):
    return (len(w), w)


def _reduce(words: Iterable[str]) -> tuple:
    ws = set(words)
    for w in ws:
        if w.strip("01"):
            raise MalformedQuery(f"{w!r} is not a binary word")
    # absorb words lying under a shorter word
    kept: set = set()
    for w in sorted(ws, key=len):
        if not any(w[:k] in kept for k in range(len(w) + 1)):
            kept.add(w)
    # merge sibling pairs, deepest first; a merged parent can only pair up
    # with a word of its own length, which is handled on the next pass
    if kept:
        for length in range(max(map(len, kept)), 0, -1):
            for w in sorted(x for x in kept if len(x) == length):
                if w in kept and w[-1] == "0" and w[:-1] + "1" in kept:
                    kept.discard(w)
                    kept.discard(w[:-1] + "1")
                    kept.add(w[:-1])
    return tuple(sorted(kept, key=word_key))


@dataclass(frozen=True)
class Clopen:
    """A clopen subset of Cantor space; ``words`` is its reduced antichain.

    The constructor accepts any finite set of binary words and reduces it.
    ``Clopen(())`` is the empty set and ``Clopen(("",))`` the whole space.
    """

    words: tuple = ()

    def __post_init__(self):
        if isinstance(self.words, str):
            raise MalformedQuery("pass an iterable of words, not a single string")
        object.__setattr__(self, "words", _reduce(self.words))

    @property
    def depth(self) -> int:
        return max((len(w) for w in self.words), default=0)

    def in_base(self, d: int) -> bool:
        return self.depth <= d

    def __bool__(self):
        return bool(self.words)

    def __contains__(self, point: str) -> bool:
        """Whether the cylinder of ``point`` lies inside this set."""
        return any(point.startswith(w) for w in self.words)

    def __or__(self, other):
        return union(self, other)

    def __and__(self, other):
        return intersect(self, other)

    def __sub__(self, other):
        return minus(self, other)

    def __le__(self, other):
        return subset(self, other)

    def __repr__(self):
        if not self.words:
            return "Clopen(∅)"
        return "Clopen{" + ",".join(w or "ε" for w in self.words) + "}"

    def to_json(self) -> dict:
        return {"words": list(self.words)}

    @classmethod
    def from_json(cls, doc: Mapping) -> "Clopen":
        return cls(tuple(doc["words"]))


EMPTY = Clopen(())
WHOLE = Clopen(("",))


def canonicalize(words: Iterable[str]) -> Clopen:
    return Clopen(tuple(words))


def cylinder(word: str) -> Clopen:
    return Clopen((word,))


def intersect(a: Clopen, b: Clopen) -> Clopen:
    out = []
    for u in a.words:
        for v in b.words:
            if v.startswith(u):
                out.append(v)
            elif u.startswith(v):
                out.append(u)
    return Clopen(tuple(out))


def union(a: Clopen, b: Clopen) -> Clopen:
    return Clopen(a.words + b.words)


def _complement_words(words: list) -> list:
    if "" in words:
        return []
    if not words:
        return [""]
    out = []
    for bit in "01":
        sub = [w[1:] for w in words if w[0] == bit]
        out.extend(bit + w for w in _complement_words(sub))
    return out


def complement(a: Clopen) -> Clopen:
    return Clopen(tuple(_complement_words(list(a.words))))


def minus(a: Clopen, b: Clopen) -> Clopen:
    return intersect(a, complement(b))


def lattice_op(kind: str, a: Clopen, b: Optional[Clopen] = None) -> Clopen:
    """``kind`` is one of ``union``, ``intersect``, ``complement``, ``minus``."""
    if kind == "complement":
        return complement(a)
    if kind not in ("union", "intersect", "minus"):
        raise MalformedQuery(f"unknown lattice operation {kind!r}")
    if b is None:
        raise MalformedQuery(f"{kind} needs a second operand")
    return {"union": union, "intersect": intersect, "minus": minus}[kind](a, b)


def subset(a: Clopen, b: Clopen) -> bool:
    # every word of a must lie under some word of b
    return all(any(u.startswith(v) for v in b.words) for u in a.words)


# -- the depth-d base ---------------------------------------------------------

def _check_depth(d: int, limit: int = MAX_BASE_DEPTH):
    if d < 0:
        raise MalformedQuery(f"depth must be non-negative, got {d}")
    if d > limit:
        raise ResourceLimit(f"depth {d} exceeds the limit {limit}")


def inner_mask(c: Clopen, d: int) -> int:
    """Bitmask of the depth-``d`` cylinders contained in ``c``."""
    mask = 0
    for w in c.words:
        if len(w) <= d:
            span = d - len(w)
            start = (int(w, 2) if w else 0) << span
            mask |= ((1 << (1 << span)) - 1) << start
    return mask


def to_mask(c: Clopen, d: int) -> int:
    """Bitmask of ``c`` inside ``B_d``; ``c`` must belong to ``B_d``."""
    if not c.in_base(d):
        raise MalformedQuery(f"{c!r} is not in B_{d}")
    return _mask_cached(c, d)


@lru_cache(maxsize=None)
def _mask_cached(c: Clopen, d: int) -> int:
    return inner_mask(c, d)


def from_mask(mask: int, d: int) -> Clopen:
    return enumerate_base(d)[mask]


@lru_cache(maxsize=None)
def _base(d: int) -> tuple:
    n = 1 << d
    words = [format(i, f"0{d}b") if d else "" for i in range(n)]
    return tuple(Clopen(tuple(words[i] for i in range(n) if m >> i & 1))
                 for m in range(1 << n))


def enumerate_base(d: int) -> tuple:
    """All ``2**(2**d)`` members of ``B_d``, indexed by their bitmask."""
    _check_depth(d)
    return _base(d)


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def tilde_truncated(V: Clopen, d: int) -> frozenset:
    """The members of ``B_d`` contained in ``V``."""
    base = enumerate_base(d)
    return frozenset(base[m] for m in _submasks(inner_mask(V, d)))


def _family_masks(L: Iterable[Clopen], d: int) -> set:
    _check_depth(d)
    masks = set()
    for u in L:
        if not isinstance(u, Clopen):
            raise MalformedQuery(f"{u!r} is not a Clopen")
        masks.add(to_mask(u, d))
    return masks


def _down_closed(masks: set) -> bool:
    # removing one cylinder at a time reaches every subset by induction
    for m in masks:
        rest = m
        while rest:
            bit = rest & -rest
            if m ^ bit not in masks:
                return False
            rest ^= bit
    return True


def _union_closed(masks: set) -> bool:
    ms = list(masks)
    return all(a | b in masks for i, a in enumerate(ms) for b in ms[i + 1:])


def _hereditary_masks(masks: set) -> bool:
    if 0 not in masks or not _down_closed(masks) or not _union_closed(masks):
        return False
    ms = list(masks)
    return all(a & b in masks for i, a in enumerate(ms) for b in ms[i + 1:])


def is_hereditary_sublattice(L: Iterable[Clopen], d: int) -> bool:
    """Whether ``L`` is a hereditary, union- and intersection-closed family in ``B_d``.

    ``L`` must contain the empty set; the empty family is rejected.
    """
    return _hereditary_masks(_family_masks(L, d))


def carac_c_check(L: Iterable[Clopen], d: int) -> bool:
    """Every finite union of members of ``L`` is again in ``L``.

    The empty subfamily counts, so ``∅`` must belong to ``L``.  Unions of
    members of ``B_d`` never leave ``B_d``, so no family is skipped.
    """
    masks = _family_masks(L, d)
    return 0 in masks and _union_closed(masks)


def fell_membership(K: Clopen, kind: str, V: Clopen) -> bool:
    """``V_minus``: ``K`` meets ``V``.  ``V_plus``: ``K`` lies inside ``V``."""
    if kind == "V_minus":
        return bool(intersect(K, V))
    if kind == "V_plus":
        return subset(K, V)
    raise MalformedQuery(f"unknown Fell set kind {kind!r}")


def hereditary_census(d: int) -> list:
    """Every family in ``B_d`` passing :func:`is_hereditary_sublattice`.

    Exhaustive over all ``2**(2**(2**d))`` families, hence ``d <= 2``.
    Families come back as frozensets of :class:`Clopen`.
    """
    _check_depth(d, MAX_CENSUS_DEPTH)
    base = enumerate_base(d)
    found = []
    for family in range(1 << len(base)):
        masks = set()
        rest = family
        while rest:
            bit = rest & -rest
            masks.add(bit.bit_length() - 1)
            rest ^= bit
        if _hereditary_masks(masks):
            found.append(frozenset(base[m] for m in masks))
    return found
