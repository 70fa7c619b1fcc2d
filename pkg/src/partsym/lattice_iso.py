"""Finite windows onto partial order-isomorphisms of the clopen algebra.

A partial homeomorphism ``h`` of Cantor space with clopen domain is coded
by the lattice map ``u -> h[u]`` on the clopen sets inside ``dom h``.  That
map is infinite, so we work with its restriction to the depth-``d`` base
``B_d``: a :class:`TruncatedLatticeMap`.  :func:`encode` produces such a
window from a :class:`~partsym.homeo.PrefixMap` and :func:`decode` rebuilds
the prefix map by reading the images of the depth-``d`` cylinders.

Keys of a window always lie in ``B_d``; values may be deeper, because a
prefix exchange can lengthen words.  For that reason the image-side
conditions checked by :func:`is_sb_member` are the lattice ones (contains
``∅``, closed under ``∪`` and ``∩``); heredity of the image family is not
visible through a depth-``d`` window.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache, reduce
from typing import Iterable, Mapping, Optional

from .clopen import (EMPTY, WHOLE, Clopen, inner_mask, cylinder, intersect,
                     is_hereditary_sublattice, subset, tilde_truncated, to_mask)
from .errors import InconsistencyError, MalformedQuery, ResourceLimit
from .homeo import (PrefixMap, apply_point, hco_membership, image_clopen, pm_compose,
                    pm_invert)

__all__ = [
    "TruncatedLatticeMap",
    "is_order_iso",
    "is_sb_member",
    "is_s1_member",
    "is_complete_finite",
    "hereditary_image",
    "encode",
    "window_on",
    "window_compose",
    "window_invert",
    "decode",
    "phi_homomorphism_check",
    "phi_homomorphism_witness",
    "neighborhood_correspondence_check",
    "neighborhood_correspondence_witness",
    "lemma_fhat_check",
    "MAX_ENCODE_DEPTH",
]

MAX_ENCODE_DEPTH = 3


@dataclass(frozen=True)
class TruncatedLatticeMap:
    """An injective map between finite families of clopen sets.

    Every key lies in ``B_depth``.  A non-empty window maps ``∅`` to ``∅``.
    Entries are ordered by the bitmask of their key.
    """

    depth: int
    entries: tuple = ()
    _lookup: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        items = self.entries.items() if isinstance(self.entries, Mapping) else self.entries
        pairs = []
        for k, v in items:
            if not isinstance(k, Clopen) or not isinstance(v, Clopen):
                raise MalformedQuery("window entries must be Clopen pairs")
            if not k.in_base(self.depth):
                raise MalformedQuery(f"key {k!r} is not in B_{self.depth}")
            pairs.append((k, v))
        keys = [k for k, _ in pairs]
        values = [v for _, v in pairs]
        if len(set(keys)) != len(keys):
            raise MalformedQuery("a key occurs twice")
        if len(set(values)) != len(values):
            raise MalformedQuery("the map is not injective")
        lookup = dict(pairs)
        if lookup and lookup.get(EMPTY, None) != EMPTY:
            raise MalformedQuery("a non-empty window must map ∅ to ∅")
        pairs.sort(key=lambda kv: to_mask(kv[0], self.depth))
        object.__setattr__(self, "entries", tuple(pairs))
        object.__setattr__(self, "_lookup", lookup)

    def __getitem__(self, key: Clopen) -> Clopen:
        return self._lookup[key]

    def get(self, key: Clopen, default=None):
        return self._lookup.get(key, default)

    def __contains__(self, key) -> bool:
        return key in self._lookup

    def __len__(self):
        return len(self.entries)

    def keys(self) -> frozenset:
        return frozenset(self._lookup)

    def values(self) -> frozenset:
        return frozenset(self._lookup.values())

    def restrict(self, keys: Iterable[Clopen]) -> "TruncatedLatticeMap":
        keep = set(keys)
        return TruncatedLatticeMap(self.depth, tuple((k, v) for k, v in self.entries if k in keep))

    def to_json(self) -> dict:
        return {"depth": self.depth,
                "entries": [[k.to_json(), v.to_json()] for k, v in self.entries]}

    @classmethod
    def from_json(cls, doc: Mapping) -> "TruncatedLatticeMap":
        return cls(doc["depth"], tuple((Clopen.from_json(k), Clopen.from_json(v))
                                       for k, v in doc["entries"]))


def _masks(family) -> dict:
    # bitmask of each clopen at the deepest level present, where every member
    # is an exact union of cylinders; subset, union and intersection become
    # integer operations
    family = list(family)
    depth = max((c.depth for c in family), default=0)
    return {c: inner_mask(c, depth) for c in family}


def _preserves_order(M: TruncatedLatticeMap, closure=lambda c: c) -> bool:
    km = _masks(closure(k) for k in M.keys())
    vm = _masks(closure(v) for v in M.values())
    pairs = [(km[closure(k)], vm[closure(v)]) for k, v in M.entries]
    for k1, v1 in pairs:
        for k2, v2 in pairs:
            if (k1 & ~k2 == 0) != (v1 & ~v2 == 0):
                return False
    return True


def is_order_iso(M: TruncatedLatticeMap) -> bool:
    """``M(u) ⊆ M(v)  <=>  u ⊆ v`` for all keys ``u, v``."""
    return _preserves_order(M)


def _lattice_closed(family: frozenset) -> bool:
    if EMPTY not in family:
        return False
    ms = set(_masks(family).values())
    return all(a | b in ms and a & b in ms for a in ms for b in ms)


def is_sb_member(M: TruncatedLatticeMap) -> bool:
    """Order isomorphism from a hereditary sublattice of ``B_d`` onto a
    sublattice (containing ``∅``) of the clopen algebra."""
    return (is_order_iso(M)
            and is_hereditary_sublattice(M.keys(), M.depth)
            and _lattice_closed(M.values()))


def _closure(u: Clopen) -> Clopen:
    # topological closure; every clopen set is already closed
    return u


def is_s1_member(M: TruncatedLatticeMap) -> bool:
    """``closure(v) ⊆ u  <=>  closure(M(v)) ⊆ M(u)`` for all keys ``u, v``.

    Closures of clopen sets are the sets themselves, so this agrees with
    :func:`is_order_iso`.
    """
    return _preserves_order(M, closure=_closure)


def is_complete_finite(M: TruncatedLatticeMap) -> bool:
    """For each finite family of keys: its union is a key iff the union of
    its images is a value.

    Only the distinct pairs ``(union of keys, union of images)`` matter, so
    they are generated by closing ``{(∅, ∅)}`` under adding one entry.
    """
    km = _masks(list(M.keys()) + [EMPTY])
    vm = _masks(list(M.values()) + [EMPTY])
    entries = [(km[k], vm[v]) for k, v in M.entries]
    keys = {km[k] for k in M.keys()}
    values = {vm[v] for v in M.values()}
    seen = {(0, 0)}
    frontier = [(0, 0)]
    while frontier:
        ku, vu = frontier.pop()
        for k, v in entries:
            nxt = (ku | k, vu | v)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return all((ku in keys) == (vu in values) for ku, vu in seen)


def hereditary_image(M: TruncatedLatticeMap, L: Iterable[Clopen]) -> frozenset:
    """``M(L ∩ keys)``, checked to be a hereditary sublattice of ``B_d``.

    Requires ``M`` to be square: an S(B) window whose values also form a
    hereditary sublattice of ``B_d``.
    """
    L = frozenset(L)
    d = M.depth
    if not is_sb_member(M):
        raise MalformedQuery("window is not an S(B) window")
    if not all(v.in_base(d) for v in M.values()) or not is_hereditary_sublattice(M.values(), d):
        raise MalformedQuery(f"window values are not a hereditary sublattice of B_{d}")
    if not is_hereditary_sublattice(L, d):
        raise MalformedQuery(f"L is not a hereditary sublattice of B_{d}")
    out = frozenset(M[u] for u in L if u in M)
    if not is_hereditary_sublattice(out, d):
        raise InconsistencyError("image of a hereditary sublattice is not hereditary", witness=out)
    return out


# -- coding prefix maps ------------------------------------------------------

def _check_encode_depth(d: int):
    if d < 0:
        raise MalformedQuery(f"depth must be non-negative, got {d}")
    if d > MAX_ENCODE_DEPTH:
        raise ResourceLimit(f"depth {d} exceeds {MAX_ENCODE_DEPTH}")


@lru_cache(maxsize=4096)
def encode(h: PrefixMap, d: int) -> TruncatedLatticeMap:
    """The window ``u -> h[u]`` on the depth-``d`` clopen sets inside ``dom h``."""
    _check_encode_depth(d)
    return TruncatedLatticeMap(d, tuple((u, image_clopen(h, u))
                                        for u in tilde_truncated(h.domain, d)))


def window_on(h: PrefixMap, keys: Iterable[Clopen]) -> TruncatedLatticeMap:
    """``u -> h[u]`` on the given keys that lie inside ``dom h``.

    The depth is the deepest key, so any finite family of clopen sets can
    be probed.
    """
    dom = h.domain
    keep = [u for u in set(keys) if subset(u, dom)]
    depth = max((u.depth for u in keep), default=0)
    return TruncatedLatticeMap(depth, tuple((u, image_clopen(h, u)) for u in keep))


def window_compose(Mf: TruncatedLatticeMap, Mg: TruncatedLatticeMap) -> TruncatedLatticeMap:
    """Composition in I(B): ``u -> Mf(Mg(u))`` wherever ``Mg(u)`` is a key of ``Mf``."""
    return TruncatedLatticeMap(Mg.depth, tuple((u, Mf[v]) for u, v in Mg.entries if v in Mf))


def window_invert(M: TruncatedLatticeMap) -> TruncatedLatticeMap:
    depth = max((v.depth for v in M.values()), default=0)
    return TruncatedLatticeMap(depth, tuple((v, u) for u, v in M.entries))


def decode(M: TruncatedLatticeMap) -> PrefixMap:
    """The prefix map whose window is ``M``.

    Each depth-``d`` cylinder key ``[w]`` must map to a single cylinder
    ``[v]``, giving the rule ``w -> v``; the resulting map is then checked
    against every key.  Raises :class:`InconsistencyError` with the first
    offending key when no prefix map fits.
    """
    if not is_sb_member(M):
        raise MalformedQuery("decode needs an S(B) window")
    d = M.depth
    rules = []
    for u, v in M.entries:
        if len(u.words) == 1 and len(u.words[0]) == d:
            if len(v.words) != 1:
                raise InconsistencyError(f"{u!r} maps to {v!r}, which is not a single cylinder",
                                         witness=u)
            rules.append((u.words[0], v.words[0]))
    try:
        h = PrefixMap(tuple(rules))
    except MalformedQuery as exc:
        raise InconsistencyError(f"cylinder images overlap: {exc}", witness=None) from exc
    for u, v in M.entries:
        if image_clopen(h, u) != v:
            raise InconsistencyError(f"{u!r} maps to {v!r} but the cylinders give "
                                     f"{image_clopen(h, u)!r}", witness=u)
    return h


# -- executable checks -------------------------------------------------------

def _first_difference(A: TruncatedLatticeMap, B: TruncatedLatticeMap) -> Optional[Clopen]:
    for u in sorted(A.keys() | B.keys(), key=lambda c: (c.depth, c.words)):
        if A.get(u) != B.get(u):
            return u
    return None


def phi_homomorphism_witness(f: PrefixMap, g: PrefixMap, d: int):
    """``None`` when coding commutes with composition at depth ``d``,
    otherwise the first key (or composite map) where it fails.

    The right-hand side composes the window of ``g`` with ``u -> f[u]``
    probed exactly on the values of that window, following the I(B) rule.
    """
    _check_encode_depth(d)
    fg = pm_compose(f, g)
    lhs = encode(fg, d)
    Mg = encode(g, d)
    rhs = window_compose(window_on(f, Mg.values()), Mg)
    key = _first_difference(lhs, rhs)
    if key is not None:
        return key
    if fg.rule_depth <= d and decode(lhs) != fg:
        return fg
    return None


def phi_homomorphism_check(f: PrefixMap, g: PrefixMap, d: int) -> bool:
    return phi_homomorphism_witness(f, g, d) is None


def neighborhood_correspondence_witness(o: Clopen, p: Clopen, sample: Iterable[PrefixMap], d: int):
    """``None`` if the three subbasic correspondences hold for every map in
    ``sample``, otherwise ``(map, clause)``.

    (1) ``M(o) = p``  iff  ``h ∈ <o;p> ∩ <p;o>^-1`` and ``h[o] = p``;
    (2) ``o`` is not a key  iff  the complement of ``dom h`` meets ``o``;
    (3) ``o`` is not in the image family  iff  the complement of ``im h``
        meets ``o``.  The image family is read from the window of ``h^-1``,
        because a depth-``d`` window of ``h`` only lists images of depth-``d``
        keys.
    """
    _check_encode_depth(d)
    if not o.in_base(d) or not p.in_base(d):
        raise MalformedQuery(f"o and p must lie in B_{d}")
    for h in sample:
        if h.rule_depth > d:
            raise MalformedQuery(f"{h!r} has rules deeper than {d}")
        M = encode(h, d)
        M_inv = encode(pm_invert(h), d)
        lhs1 = o in M and M[o] == p
        rhs1 = (hco_membership(h, "KV", o, p) and hco_membership(h, "KV_inverse", p, o)
                and image_clopen(h, o) == p)
        if lhs1 != rhs1:
            return h, 1
        if (o not in M) != hco_membership(h, "D_minus", o):
            return h, 2
        if (o not in M_inv) != hco_membership(h, "I_minus", o):
            return h, 3
    return None


def neighborhood_correspondence_check(o: Clopen, p: Clopen, sample: Iterable[PrefixMap],
                                      d: int) -> bool:
    return neighborhood_correspondence_witness(o, p, sample, d) is None


def lemma_fhat_check(f_window: TruncatedLatticeMap) -> bool:
    """Rebuild ``h`` from the window and confirm ``h[u] = f(u)`` on every key.

    Also evaluates ``h`` pointwise on each depth-``d`` cylinder ``[w]`` of
    the domain: the image ``[y]`` must equal the intersection of ``f(u)``
    over all keys ``u`` containing ``[w]``.
    """
    h = decode(f_window)
    for u, v in f_window.entries:
        if image_clopen(h, u) != v:
            return False
    d = f_window.depth
    for u, _ in f_window.entries:
        if len(u.words) != 1 or len(u.words[0]) != d:
            continue
        w = u.words[0]
        point = apply_point(h, w)
        if point.status != "determined":
            return False
        around = [v for k, v in f_window.entries if subset(u, k)]
        if reduce(intersect, around, WHOLE) != cylinder(point.image):
            return False
    return True
