"""Finite meet-semilattices and their Munn semigroups.

A semilattice is given by its meet table; the order ``x <= y`` is read off
as ``meet[x, y] == x``.  The Munn semigroup ``T(E)`` consists of all order
isomorphisms between principal ideals ``Ex = {y : y <= x}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as cartesian
from typing import Mapping, Optional

import numpy as np

from .errors import InternalConsistencyError, MalformedQuery
from .pbij import FiniteInverseSemigroup, PartialBijection, compose, invert

__all__ = [
    "FiniteSemilattice",
    "MunnElement",
    "principal_ideal",
    "compat_pairs",
    "order_isomorphisms",
    "munn_semigroup",
    "is_munn_member",
    "chain",
    "flat",
    "all_semilattices",
    "random_semilattice",
]


@dataclass(frozen=True, eq=False)
class FiniteSemilattice:
    meet: np.ndarray
    size: int = field(init=False)

    def __post_init__(self):
        meet = np.array(self.meet, dtype=np.int64)
        if meet.ndim != 2 or meet.shape[0] != meet.shape[1] or meet.shape[0] == 0:
            raise MalformedQuery(f"meet table must be a non-empty square, got shape {meet.shape}")
        n = meet.shape[0]
        if meet.min() < 0 or meet.max() >= n:
            raise MalformedQuery("meet table entries out of range")
        idx = np.arange(n)
        if not np.array_equal(meet, meet.T):
            raise MalformedQuery("meet is not commutative")
        if not np.array_equal(meet[idx, idx], idx):
            raise MalformedQuery("meet is not idempotent")
        left = meet[meet[:, :, None], idx[None, None, :]]
        right = meet[idx[:, None, None], meet[None, :, :]]
        if not np.array_equal(left, right):
            raise MalformedQuery("meet is not associative")
        meet.setflags(write=False)
        object.__setattr__(self, "meet", meet)
        object.__setattr__(self, "size", n)

    @cached_property
    def leq(self) -> np.ndarray:
        """Boolean matrix ``leq[x, y] == (x <= y)``."""
        return self.meet == np.arange(self.size)[:, None]

    def __eq__(self, other):
        return isinstance(other, FiniteSemilattice) and np.array_equal(self.meet, other.meet)

    def __hash__(self):
        return hash(self.meet.tobytes())

    def __repr__(self):
        return f"FiniteSemilattice(size={self.size})"

    def as_inverse_semigroup(self) -> FiniteInverseSemigroup:
        # every element is idempotent and self-inverse
        return FiniteInverseSemigroup(self.meet, np.arange(self.size))

    def to_json(self) -> dict:
        return {"size": self.size, "meet": self.meet.tolist()}

    @classmethod
    def from_json(cls, doc: Mapping) -> "FiniteSemilattice":
        E = cls(doc["meet"])
        if "size" in doc and doc["size"] != E.size:
            raise MalformedQuery(f"size {doc['size']} does not match the meet table ({E.size})")
        return E


@dataclass(frozen=True)
class MunnElement:
    """An order isomorphism ``E source_apex -> E target_apex``."""

    map: PartialBijection
    source_apex: int
    target_apex: int

    def sort_key(self):
        return (self.source_apex, self.target_apex, self.map.entries)

    def to_json(self) -> dict:
        return {"map": self.map.to_json(), "source_apex": self.source_apex,
                "target_apex": self.target_apex}


def _check_point(E: FiniteSemilattice, x: int):
    if not 0 <= x < E.size:
        raise MalformedQuery(f"element {x} is outside a semilattice of size {E.size}")


def principal_ideal(E: FiniteSemilattice, x: int) -> frozenset:
    _check_point(E, x)
    return frozenset(int(y) for y in np.flatnonzero(E.leq[:, x]))


def order_isomorphisms(E: FiniteSemilattice, x: int, y: int):
    """Yield every order isomorphism ``Ex -> Ey`` as a dict.

    Backtracking assigns the elements of ``Ex`` in order of increasing
    down-set size, trying only targets whose down-set inside ``Ey`` has the
    same size, and checks comparability both ways against what has already
    been placed.
    """
    src = sorted(principal_ideal(E, x))
    dst = sorted(principal_ideal(E, y))
    if len(src) != len(dst):
        return
    leq = E.leq

    def rank(a, ideal):
        return sum(1 for b in ideal if leq[b, a])

    src.sort(key=lambda a: (rank(a, src), a))
    dst_rank = {b: rank(b, dst) for b in dst}
    src_rank = {a: rank(a, src) for a in src}
    if sorted(src_rank.values()) != sorted(dst_rank.values()):
        return
    assignment: dict = {}
    used: set = set()

    def extend(i):
        if i == len(src):
            yield dict(assignment)
            return
        a = src[i]
        for b in dst:
            if b in used or dst_rank[b] != src_rank[a]:
                continue
            if all(leq[a, c] == leq[b, d] and leq[c, a] == leq[d, b]
                   for c, d in assignment.items()):
                assignment[a] = b
                used.add(b)
                yield from extend(i + 1)
                del assignment[a]
                used.discard(b)

    yield from extend(0)


def compat_pairs(E: FiniteSemilattice) -> frozenset:
    return frozenset((x, y) for x in range(E.size) for y in range(E.size)
                     if next(order_isomorphisms(E, x, y), None) is not None)


def munn_semigroup(E: FiniteSemilattice) -> list:
    """All elements of ``T(E)`` in deterministic order.

    The result is checked to be closed under composition and inversion.
    """
    elements = []
    for x, y in sorted(compat_pairs(E)):
        for iso in order_isomorphisms(E, x, y):
            elements.append(MunnElement(PartialBijection.from_mapping(iso), x, y))
    elements.sort(key=MunnElement.sort_key)
    maps = {m.map for m in elements}
    for f in maps:
        if invert(f) not in maps:
            raise InternalConsistencyError(f"T(E) not closed under inversion at {f!r}")
        for g in maps:
            if compose(f, g) not in maps:
                raise InternalConsistencyError(f"T(E) not closed under composition at {f!r}, {g!r}")
    return elements


def _ideal_apex(E: FiniteSemilattice, points: frozenset) -> Optional[int]:
    # the x with Ex == points, if any
    for x in points:
        if principal_ideal(E, x) == points:
            return x
    return None


def is_munn_member(E: FiniteSemilattice, f: PartialBijection) -> bool:
    """Conditions (a) and (b): domain and image are principal ideals and
    ``f`` preserves and reflects the order."""
    for s, t in f.entries:
        _check_point(E, s)
        _check_point(E, t)
    if _ideal_apex(E, f.domain) is None or _ideal_apex(E, f.image) is None:
        return False
    leq = E.leq
    return all(leq[a, b] == leq[fa, fb] for a, fa in f.entries for b, fb in f.entries)


# -- constructors -------------------------------------------------------------

def chain(n: int) -> FiniteSemilattice:
    """The chain ``0 < 1 < ... < n-1``."""
    idx = np.arange(n)
    return FiniteSemilattice(np.minimum(idx[:, None], idx[None, :]))


def flat(n_atoms: int = 2) -> FiniteSemilattice:
    """Bottom ``0`` plus ``n_atoms`` pairwise incomparable elements."""
    n = n_atoms + 1
    meet = np.zeros((n, n), dtype=np.int64)
    meet[np.arange(n), np.arange(n)] = np.arange(n)
    return FiniteSemilattice(meet)


def all_semilattices(n: int):
    """Yield every labelled meet table on ``{0..n-1}`` (exhaustive; keep n <= 4)."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    idx = np.arange(n)
    for values in cartesian(range(n), repeat=len(pairs)):
        meet = np.empty((n, n), dtype=np.int64)
        meet[idx, idx] = idx
        ok = True
        for (i, j), v in zip(pairs, values):
            meet[i, j] = meet[j, i] = v
        # cheap pruning: a meet lies below both arguments
        for (i, j), v in zip(pairs, values):
            if meet[v, i] != v or meet[v, j] != v:
                ok = False
                break
        if not ok:
            continue
        left = meet[meet[:, :, None], idx[None, None, :]]
        right = meet[idx[:, None, None], meet[None, :, :]]
        if np.array_equal(left, right):
            yield FiniteSemilattice(meet)


def random_semilattice(rng, max_size: int = 5, universe: int = 4) -> FiniteSemilattice:
    """A random semilattice: an intersection-closed family of random sets.

    ``rng`` is a :class:`random.Random`.  Element labels are shuffled.
    """
    while True:
        family = {frozenset(rng.sample(range(universe), rng.randint(0, universe)))
                  for _ in range(rng.randint(1, max_size))}
        changed = True
        while changed:
            changed = False
            for a in list(family):
                for b in list(family):
                    if a & b not in family:
                        family.add(a & b)
                        changed = True
        if len(family) <= max_size:
            break
    members = list(family)
    rng.shuffle(members)
    index = {m: i for i, m in enumerate(members)}
    meet = [[index[a & b] for b in members] for a in members]
    return FiniteSemilattice(meet)
