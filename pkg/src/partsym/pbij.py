"""The symmetric inverse semigroup I(N) on finitely supported elements.

A :class:`PartialBijection` is a finite injective partial map on the
naturals.  Composition follows the usual partial-map rule: ``compose(f, g)``
is defined at ``x`` exactly when ``x`` is in the domain of ``g`` and ``g(x)``
is in the domain of ``f``.

Besides the algebra this module carries the subbasic sets of the
partial-pointwise topology, a windowed convergence test, a compatible
metric truncated at a horizon, and the Wagner-Preston representation of a
finite inverse semigroup given by its Cayley table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .errors import InternalConsistencyError, MalformedQuery

__all__ = [
    "PartialBijection",
    "SequenceWindow",
    "ConvergenceVerdict",
    "FiniteInverseSemigroup",
    "compose",
    "invert",
    "partial_identity",
    "is_idempotent",
    "subbasic_membership",
    "check_convergence",
    "tau_pp_distance",
    "wagner_preston",
    "cayley_semigroup",
]


@dataclass(frozen=True)
class PartialBijection:
    """Finite injective partial map, stored as source-sorted ``(s, t)`` pairs."""

    entries: tuple = ()

    def __post_init__(self):
        pairs = tuple(sorted((int(s), int(t)) for s, t in self.entries))
        sources = [s for s, _ in pairs]
        targets = [t for _, t in pairs]
        if any(s < 0 or t < 0 for s, t in pairs):
            raise MalformedQuery(f"entries must be naturals: {pairs}")
        if len(set(sources)) != len(sources):
            raise MalformedQuery(f"two entries share a source: {pairs}")
        if len(set(targets)) != len(targets):
            raise MalformedQuery(f"two entries share a target: {pairs}")
        object.__setattr__(self, "entries", pairs)

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> "PartialBijection":
        return cls(tuple(mapping.items()))

    @property
    def mapping(self) -> dict:
        return dict(self.entries)

    @property
    def domain(self) -> frozenset:
        return frozenset(s for s, _ in self.entries)

    @property
    def image(self) -> frozenset:
        return frozenset(t for _, t in self.entries)

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def __len__(self):
        return len(self.entries)

    def __mul__(self, other: "PartialBijection") -> "PartialBijection":
        return compose(self, other)

    def __repr__(self):
        body = ", ".join(f"{s}->{t}" for s, t in self.entries)
        return f"PartialBijection({{{body}}})"

    def to_json(self) -> dict:
        return {"entries": [[s, t] for s, t in self.entries]}

    @classmethod
    def from_json(cls, doc: Mapping) -> "PartialBijection":
        return cls(tuple(tuple(pair) for pair in doc["entries"]))


def compose(f: PartialBijection, g: PartialBijection) -> PartialBijection:
    """Return ``f o g``: apply ``g`` first, then ``f``."""
    fm = f.mapping
    return PartialBijection(tuple((x, fm[y]) for x, y in g.entries if y in fm))


def invert(f: PartialBijection) -> PartialBijection:
    return PartialBijection(tuple((t, s) for s, t in f.entries))


def partial_identity(points: Iterable[int]) -> PartialBijection:
    return PartialBijection(tuple((a, a) for a in set(points)))


def is_idempotent(f: PartialBijection) -> bool:
    return all(s == t for s, t in f.entries)


def subbasic_membership(f: PartialBijection, kind: str, x: Optional[int] = None,
                        y: Optional[int] = None) -> bool:
    """Decide membership of ``f`` in a subbasic open set.

    ``kind`` is ``"v"`` (``x`` in the domain with ``f(x) == y``), ``"w1"``
    (``x`` outside the domain) or ``"w2"`` (``y`` outside the image).  For
    ``"w2"`` the point may be passed as either ``x`` or ``y``.
    """
    if kind == "v":
        if x is None or y is None:
            raise MalformedQuery("kind 'v' needs both x and y")
        return f.mapping.get(x) == y
    if kind == "w1":
        if x is None:
            raise MalformedQuery("kind 'w1' needs x")
        return x not in f.domain
    if kind == "w2":
        point = y if y is not None else x
        if point is None:
            raise MalformedQuery("kind 'w2' needs y")
        return point not in f.image
    raise MalformedQuery(f"unknown subbasic kind {kind!r}")


# -- convergence -------------------------------------------------------------

CONDITIONS = ("i", "ii", "i-inverse", "ii-inverse")


@dataclass(frozen=True)
class SequenceWindow:
    """The first terms of a sequence in I(N), a candidate limit and a bound.

    Only points ``0..window_bound`` are examined.
    """

    terms: tuple
    claimed_limit: PartialBijection
    window_bound: int

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise MalformedQuery("a sequence window needs at least one term")
        if self.window_bound < 0:
            raise MalformedQuery("window_bound must be non-negative")


@dataclass(frozen=True)
class ConvergenceVerdict:
    """Outcome of :func:`check_convergence`.

    ``consistent`` only means the window did not refute convergence; a finite
    prefix of a sequence never proves it.  A refutation carries
    ``(point, index, condition)``: the condition fails at every term from
    ``index`` through the last one, so no threshold inside the window works.
    """

    status: str
    refutation_witness: Optional[tuple] = None

    def __post_init__(self):
        if self.status not in ("consistent", "refuted"):
            raise MalformedQuery(f"bad status {self.status!r}")
        if (self.status == "refuted") != (self.refutation_witness is not None):
            raise MalformedQuery("a witness is present exactly when refuted")

    @property
    def consistent(self) -> bool:
        return self.status == "consistent"

    def to_json(self) -> dict:
        doc = {"status": self.status}
        if self.refutation_witness is not None:
            point, index, condition = self.refutation_witness
            doc["refutation_witness"] = {"point": point, "index": index,
                                         "condition": condition}
        return doc


def _trailing_failure(terms: Sequence[PartialBijection], limit: PartialBijection,
                      x: int) -> Optional[int]:
    # None when the last term agrees with the limit about x; otherwise the
    # index where the final run of disagreeing terms starts
    lm = limit.mapping

    def agrees(t):
        tm = t.mapping
        return tm.get(x) == lm[x] if x in lm else x not in tm

    start = None
    for n in range(len(terms) - 1, -1, -1):
        if agrees(terms[n]):
            break
        start = n
    return start


def check_convergence(window: SequenceWindow, strict_inverse: bool = True) -> ConvergenceVerdict:
    """Test whether ``terms -> claimed_limit`` survives the finite window.

    For a point in the domain of the limit, the terms must eventually be
    defined there with the limit's value (condition ``i``); for a point
    outside it they must eventually be undefined there (condition ``ii``).
    ``strict_inverse`` repeats both checks for the inverted sequence against
    the inverted limit, which is what the ``w2`` subbasic sets demand.
    """
    terms = window.terms
    limit = window.claimed_limit
    inv_terms = [invert(t) for t in terms] if strict_inverse else None
    inv_limit = invert(limit)
    failures = []
    for x in range(window.window_bound + 1):
        n = _trailing_failure(terms, limit, x)
        if n is not None:
            failures.append((x, n, "i" if x in limit.domain else "ii"))
        if strict_inverse:
            n = _trailing_failure(inv_terms, inv_limit, x)
            if n is not None:
                failures.append((x, n, "i-inverse" if x in inv_limit.domain else "ii-inverse"))
        if failures:
            break
    if not failures:
        return ConvergenceVerdict("consistent")
    witness = min(failures, key=lambda w: (w[0], w[1], CONDITIONS.index(w[2])))
    return ConvergenceVerdict("refuted", witness)


def _disagree(fm: dict, gm: dict, x: int) -> int:
    if x not in fm and x not in gm:
        return 0
    return int(fm.get(x) != gm.get(x))


def tau_pp_distance(f: PartialBijection, g: PartialBijection, horizon: int) -> Fraction:
    """Windowed metric: weighted disagreements of ``f, g`` and of their inverses.

    Point ``x`` carries weight ``2**-(x+1)`` in each direction, so the value
    lies in ``[0, 2]``.
    """
    fm, gm = f.mapping, g.mapping
    fi, gi = invert(f).mapping, invert(g).mapping
    total = Fraction(0)
    for x in range(horizon + 1):
        weight = Fraction(1, 2 ** (x + 1))
        total += weight * (_disagree(fm, gm, x) + _disagree(fi, gi, x))
    return total


# -- finite inverse semigroups -----------------------------------------------

@dataclass(frozen=True, eq=False)
class FiniteInverseSemigroup:
    """An inverse semigroup on ``{0..size-1}`` given by product and inverse tables.

    Construction checks associativity and that ``inverse[s]`` is the one and
    only ``t`` with ``sts = s`` and ``tst = t``.
    """

    product: np.ndarray
    inverse: np.ndarray
    size: int = field(init=False)

    def __post_init__(self):
        product = np.array(self.product, dtype=np.int64)
        inverse = np.array(self.inverse, dtype=np.int64)
        n = len(inverse)
        if n == 0:
            raise MalformedQuery("a semigroup is non-empty")
        if product.shape != (n, n):
            raise MalformedQuery(f"product table must be {n}x{n}, got {product.shape}")
        if product.min() < 0 or product.max() >= n or inverse.min() < 0 or inverse.max() >= n:
            raise MalformedQuery("table entries out of range")
        idx = np.arange(n)
        left = product[product[:, :, None], idx[None, None, :]]
        right = product[idx[:, None, None], product[None, :, :]]
        if not np.array_equal(left, right):
            a, b, c = np.argwhere(left != right)[0]
            raise MalformedQuery(f"product not associative at {(int(a), int(b), int(c))}")
        # sts and tst for every pair (s, t)
        sts = product[product[idx[:, None], idx[None, :]], idx[:, None]]
        tst = product[product[idx[None, :], idx[:, None]], idx[None, :]]
        is_inv = (sts == idx[:, None]) & (tst == idx[None, :])
        for s in range(n):
            found = np.flatnonzero(is_inv[s])
            if list(found) != [inverse[s]]:
                raise MalformedQuery(f"element {s} has inverses {list(found)}, table says {inverse[s]}")
        product.setflags(write=False)
        inverse.setflags(write=False)
        object.__setattr__(self, "product", product)
        object.__setattr__(self, "inverse", inverse)
        object.__setattr__(self, "size", n)

    def mul(self, s: int, t: int) -> int:
        return int(self.product[s, t])

    def inv(self, s: int) -> int:
        return int(self.inverse[s])

    def __eq__(self, other):
        return (isinstance(other, FiniteInverseSemigroup)
                and np.array_equal(self.product, other.product)
                and np.array_equal(self.inverse, other.inverse))

    def __hash__(self):
        return hash((self.product.tobytes(), self.inverse.tobytes()))

    def to_json(self) -> dict:
        return {"size": self.size, "product": self.product.tolist(),
                "inverse": self.inverse.tolist()}

    @classmethod
    def from_json(cls, doc: Mapping) -> "FiniteInverseSemigroup":
        fis = cls(doc["product"], doc["inverse"])
        if "size" in doc and doc["size"] != fis.size:
            raise MalformedQuery(f"size {doc['size']} does not match the tables ({fis.size})")
        return fis


def cayley_semigroup(elements: Sequence[PartialBijection]) -> FiniteInverseSemigroup:
    """Cayley table of a list of partial bijections closed under compose/invert."""
    index = {e: i for i, e in enumerate(elements)}
    if len(index) != len(elements):
        raise MalformedQuery("elements must be distinct")
    n = len(elements)
    product = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            c = compose(a, b)
            if c not in index:
                raise MalformedQuery(f"{a!r} * {b!r} leaves the set")
            product[i, j] = index[c]
    inverse = []
    for a in elements:
        a_inv = invert(a)
        if a_inv not in index:
            raise MalformedQuery(f"inverse of {a!r} is not in the set")
        inverse.append(index[a_inv])
    return FiniteInverseSemigroup(product, inverse)


def wagner_preston(S: FiniteInverseSemigroup) -> list:
    """Faithful representation ``s -> theta_s`` of ``S`` in I({0..size-1}).

    ``theta_s`` is left translation ``x -> s*x`` restricted to the principal
    right ideal ``s^-1 S``; its image is ``s S``.  With composition read
    right to left this gives ``theta_{st} = theta_s o theta_t``.  The result
    is checked to be an injective homomorphism before it is returned.
    """
    n = S.size
    thetas = []
    for s in range(n):
        s_inv = S.inv(s)
        dom = sorted({S.mul(s_inv, x) for x in range(n)})
        thetas.append(PartialBijection(tuple((x, S.mul(s, x)) for x in dom)))
    if len(set(thetas)) != n:
        raise InternalConsistencyError("representation is not injective")
    for s in range(n):
        for t in range(n):
            if thetas[S.mul(s, t)] != compose(thetas[s], thetas[t]):
                raise InternalConsistencyError(f"theta_(s t) != theta_s o theta_t at {(s, t)}")
    return thetas
