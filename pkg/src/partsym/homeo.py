"""Partial homeomorphisms of Cantor space given by prefix exchange.

A :class:`PrefixMap` with rules ``dw -> iw`` sends ``dw + s`` to ``iw + s``
for every infinite suffix ``s``.  Its domain and image are the clopen sets
spanned by the rule words.  Rules are kept reduced (no sibling pair
``w0 -> v0, w1 -> v1``), which makes structural equality coincide with
equality of the denoted maps.

The neighbourhood predicates of the hco topology are evaluated exactly,
with compact sets restricted to clopen ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .clopen import (Clopen, complement, intersect, subset,
                     tilde_truncated, word_key)
from .errors import MalformedQuery, ResourceLimit

__all__ = [
    "PrefixMap",
    "PointImage",
    "pm_compose",
    "pm_invert",
    "pm_identity",
    "image_clopen",
    "apply_point",
    "hco_membership",
    "is_gamma_base_member",
    "HCO_KINDS",
]


def _prefix_free(words) -> bool:
    ws = sorted(words)
    # in lexicographic order a prefix sorts directly before some extension
    return all(not ws[i + 1].startswith(ws[i]) for i in range(len(ws) - 1))


def _merge_rules(rules: dict) -> dict:
    changed = True
    while changed:
        changed = False
        for dw in sorted(rules, key=word_key, reverse=True):
            if not dw or dw[-1] != "0" or dw not in rules:
                continue
            sib = dw[:-1] + "1"
            iw0, iw1 = rules[dw], rules.get(sib)
            if iw1 is None or not iw0 or iw0[-1] != "0" or iw1 != iw0[:-1] + "1":
                continue
            del rules[dw], rules[sib]
            rules[dw[:-1]] = iw0[:-1]
            changed = True
    return rules


@dataclass(frozen=True)
class PrefixMap:
    rules: tuple = ()

    def __post_init__(self):
        pairs = [(str(d), str(i)) for d, i in self.rules]
        for d, i in pairs:
            if d.strip("01") or i.strip("01"):
                raise MalformedQuery(f"rule {d!r} -> {i!r} uses a non-binary word")
        doms = [d for d, _ in pairs]
        ims = [i for _, i in pairs]
        if len(set(doms)) != len(doms) or len(set(ims)) != len(ims):
            raise MalformedQuery("rules must pair distinct domain words with distinct image words")
        if not _prefix_free(doms):
            raise MalformedQuery(f"domain words are not prefix-free: {doms}")
        if not _prefix_free(ims):
            raise MalformedQuery(f"image words are not prefix-free: {ims}")
        merged = _merge_rules(dict(pairs))
        object.__setattr__(self, "rules", tuple(sorted(merged.items(), key=lambda r: word_key(r[0]))))

    @property
    def domain(self) -> Clopen:
        return Clopen(tuple(d for d, _ in self.rules))

    @property
    def image(self) -> Clopen:
        return Clopen(tuple(i for _, i in self.rules))

    @property
    def rule_depth(self) -> int:
        """Length of the longest domain word."""
        return max((len(d) for d, _ in self.rules), default=0)

    @property
    def image_depth(self) -> int:
        return max((len(i) for _, i in self.rules), default=0)

    def __mul__(self, other):
        return pm_compose(self, other)

    def __repr__(self):
        body = ", ".join(f"{d or 'ε'}->{i or 'ε'}" for d, i in self.rules)
        return f"PrefixMap({{{body}}})"

    def to_json(self) -> dict:
        return {"rules": [[d, i] for d, i in self.rules]}

    @classmethod
    def from_json(cls, doc: Mapping) -> "PrefixMap":
        return cls(tuple(tuple(r) for r in doc["rules"]))


def pm_identity(u: Clopen) -> PrefixMap:
    """The partial identity on ``u``."""
    return PrefixMap(tuple((w, w) for w in u.words))


def pm_compose(f: PrefixMap, g: PrefixMap) -> PrefixMap:
    """``f o g``.  Each rule of ``g`` is refined until its image word is
    comparable with a domain word of ``f``."""
    out = []
    for a, b in g.rules:
        for c, e in f.rules:
            if c.startswith(b):
                out.append((a + c[len(b):], e))
            elif b.startswith(c):
                out.append((a, e + b[len(c):]))
    return PrefixMap(tuple(out))


def pm_invert(f: PrefixMap) -> PrefixMap:
    return PrefixMap(tuple((i, d) for d, i in f.rules))


def image_clopen(h: PrefixMap, u: Clopen) -> Clopen:
    """``h[u ∩ dom h]``."""
    out = []
    for d, i in h.rules:
        for w in u.words:
            if d.startswith(w):
                out.append(i)
            elif w.startswith(d):
                out.append(i + w[len(d):])
    return Clopen(tuple(out))


@dataclass(frozen=True)
class PointImage:
    """Result of :func:`apply_point`.

    ``status`` is ``determined`` (``image`` holds the image prefix),
    ``needs_more_input`` or ``outside_domain``.
    """

    status: str
    image: Optional[str] = None

    def to_json(self) -> dict:
        doc = {"status": self.status}
        if self.image is not None:
            doc["image"] = self.image
        return doc


def apply_point(h: PrefixMap, x_prefix: str) -> PointImage:
    if x_prefix.strip("01"):
        raise MalformedQuery(f"{x_prefix!r} is not a binary word")
    for d, i in h.rules:
        if x_prefix.startswith(d):
            return PointImage("determined", i + x_prefix[len(d):])
    if any(d.startswith(x_prefix) for d, _ in h.rules):
        return PointImage("needs_more_input")
    return PointImage("outside_domain")


HCO_KINDS = ("KV", "KV_inverse", "D_minus", "I_minus", "E")


def hco_membership(h: PrefixMap, kind: str, a: Clopen, b: Optional[Clopen] = None) -> bool:
    """Membership of ``h`` in a neighbourhood of the hco topology.

    ``KV`` (K=a, V=b): ``K ⊆ dom h`` and ``h[K] ⊆ V``.
    ``KV_inverse`` (K=a, V=b): ``K ⊆ h[V ∩ dom h]``.
    ``D_minus`` (V=a): the complement of ``dom h`` meets ``V``.
    ``I_minus`` (V=a): the complement of ``im h`` meets ``V``.
    ``E`` (V=a, W=b): ``V ⊆ dom h``, ``W ⊆ im h`` and ``h[V] = W``.
    """
    if kind not in HCO_KINDS:
        raise MalformedQuery(f"unknown neighbourhood kind {kind!r}")
    if kind in ("KV", "KV_inverse", "E") and b is None:
        raise MalformedQuery(f"{kind} needs two clopen arguments")
    if kind == "KV":
        return subset(a, h.domain) and subset(image_clopen(h, a), b)
    if kind == "KV_inverse":
        return subset(a, image_clopen(h, b))
    if kind == "D_minus":
        return bool(intersect(complement(h.domain), a))
    if kind == "I_minus":
        return hco_membership(pm_invert(h), "D_minus", a)
    return (subset(a, h.domain) and subset(b, h.image)
            and image_clopen(h, a) == b)


def is_gamma_base_member(h: PrefixMap, d: int) -> bool:
    """Every depth-``d`` clopen inside ``dom h`` (resp. ``im h``) has a clopen
    image under ``h`` (resp. ``h^-1``), witnessed through ``E``."""
    if d > 3:
        raise ResourceLimit(f"depth {d} exceeds 3")
    h_inv = pm_invert(h)
    for g in (h, h_inv):
        for u in tilde_truncated(g.domain, d):
            if not hco_membership(g, "E", u, image_clopen(g, u)):
                return False
    return True
