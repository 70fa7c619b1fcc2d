"""Seeded random generators for the sampled checks.

Every generator takes a :class:`random.Random`, so a seed fixes the sample.
"""

from __future__ import annotations

import random

from .clopen import Clopen, enumerate_base, tilde_truncated
from .homeo import PrefixMap
from .lattice_iso import TruncatedLatticeMap
from .pbij import PartialBijection

__all__ = [
    "random_partial_bijection",
    "random_prefix_code",
    "random_prefix_map",
    "random_clopen",
    "random_square_window",
    "eventually_constant_sequence",
]


def random_partial_bijection(rng: random.Random, n: int = 10, size=None) -> PartialBijection:
    """Uniform-ish element of I({0..n-1}): random domain size, random injection."""
    k = rng.randint(0, n) if size is None else size
    dom = rng.sample(range(n), k)
    im = rng.sample(range(n), k)
    return PartialBijection(tuple(zip(dom, im)))


def random_prefix_code(rng: random.Random, max_depth: int, split: float = 0.8) -> list:
    """Leaves of a random binary tree of height at most ``max_depth``.

    The leaves form a complete prefix code: their cylinders partition the space.
    """
    leaves = []

    def grow(word):
        if len(word) < max_depth and rng.random() < split:
            grow(word + "0")
            grow(word + "1")
        else:
            leaves.append(word)

    grow("")
    return leaves


def random_prefix_map(rng: random.Random, max_depth: int = 3) -> PrefixMap:
    """A prefix map whose domain and image words have length at most ``max_depth``."""
    source = random_prefix_code(rng, max_depth)
    target = random_prefix_code(rng, max_depth)
    k = rng.randint(0, min(len(source), len(target)))
    dom = rng.sample(source, k)
    im = rng.sample(target, k)
    return PrefixMap(tuple(zip(dom, im)))


def random_clopen(rng: random.Random, d: int) -> Clopen:
    base = enumerate_base(d)
    return base[rng.randrange(len(base))]


def random_square_window(rng: random.Random, d: int) -> TruncatedLatticeMap:
    """A window whose keys and values are both hereditary sublattices of ``B_d``.

    A random bijection between two equally large sets of depth-``d``
    cylinders, extended to unions.
    """
    cylinders = [format(i, f"0{d}b") if d else "" for i in range(1 << d)]
    k = rng.randint(0, len(cylinders))
    src = rng.sample(cylinders, k)
    dst = rng.sample(cylinders, k)
    image = dict(zip(src, dst))
    entries = []
    for u in tilde_truncated(Clopen(tuple(src)), d):
        # u is a union of source cylinders at depth d; expand it back to them
        covered = [w for w in src if any(w.startswith(x) for x in u.words)]
        entries.append((u, Clopen(tuple(image[w] for w in covered))))
    return TruncatedLatticeMap(d, tuple(entries))


def eventually_constant_sequence(rng: random.Random, length: int = 12, n: int = 10):
    """``(terms, limit)`` where the terms settle on ``limit`` at a random index."""
    limit = random_partial_bijection(rng, n)
    settle = rng.randint(0, length - 1)
    terms = [random_partial_bijection(rng, n) for _ in range(settle)]
    terms += [limit] * (length - settle)
    return terms, limit
