import json
import random
from itertools import combinations

import pytest

from partsym.clopen import EMPTY, WHOLE, Clopen, enumerate_base, is_hereditary_sublattice, \
    tilde_truncated
from partsym.errors import InconsistencyError, MalformedQuery, ResourceLimit
from partsym.homeo import PrefixMap, image_clopen, pm_compose, pm_identity, pm_invert
from partsym.lattice_iso import (TruncatedLatticeMap, decode, encode, hereditary_image,
                                 is_complete_finite, is_order_iso, is_s1_member, is_sb_member,
                                 lemma_fhat_check, neighborhood_correspondence_check,
                                 neighborhood_correspondence_witness, phi_homomorphism_check,
                                 window_compose, window_invert, window_on)
from partsym.sampling import random_clopen, random_prefix_map, random_square_window

C = lambda *words: Clopen(words)
SIGMA = PrefixMap((("0", "1"), ("1", "0")))
H = PrefixMap((("00", "0"), ("01", "10"), ("1", "11")))
ONE_0 = PrefixMap((("0", "0"),))


def W(d, mapping):
    return TruncatedLatticeMap(d, tuple(mapping.items()))


def unions_of(pairs):
    """Oracle window: extend a cylinder assignment to all unions of its keys."""
    out = {EMPTY: EMPTY}
    items = list(pairs.items())
    for k in range(1, len(items) + 1):
        for combo in combinations(items, k):
            key = C(*[w for u, _ in combo for w in u.words])
            out[key] = C(*[w for _, v in combo for w in v.words])
    return out


IDENTITY_B1 = W(1, {u: u for u in enumerate_base(1)})
SWAP_B1 = W(1, {EMPTY: EMPTY, C("0"): C("1"), C("1"): C("0"), WHOLE: WHOLE})
REVERSED = W(1, {EMPTY: EMPTY, C("0"): WHOLE, WHOLE: C("0")})


# -- the window type ----------------------------------------------------------

def test_window_validation():
    with pytest.raises(MalformedQuery):
        W(1, {C("00"): C("00")})  # key deeper than the window
    with pytest.raises(MalformedQuery):
        W(1, {EMPTY: EMPTY, C("0"): C("1"), C("1"): C("1")})  # not injective
    with pytest.raises(MalformedQuery):
        W(1, {C("0"): C("1")})  # ∅ missing


def test_window_json_round_trip():
    M = encode(H, 2)
    doc = json.loads(json.dumps(M.to_json()))
    assert TruncatedLatticeMap.from_json(doc) == M
    assert doc["entries"][0] == [{"words": []}, {"words": []}]


# -- predicates ---------------------------------------------------------------

def test_order_iso_examples():
    assert is_order_iso(IDENTITY_B1)
    assert is_order_iso(SWAP_B1)
    assert not is_order_iso(REVERSED)


def test_order_iso_against_pairwise_oracle():
    rng = random.Random(2)
    for _ in range(200):
        keys = rng.sample(enumerate_base(2)[1:], rng.randint(0, 5))
        vals = rng.sample(enumerate_base(2)[1:], len(keys))
        M = W(2, {EMPTY: EMPTY, **dict(zip(keys, vals))})
        expected = all((u <= v) == (M[u] <= M[v]) for u in M.keys() for v in M.keys())
        assert is_order_iso(M) == expected
        assert is_s1_member(M) == is_order_iso(M)


def test_sb_examples():
    assert is_sb_member(encode(SIGMA, 1))
    assert not is_sb_member(W(2, {EMPTY: EMPTY, C("00"): C("00"), C("01"): C("01")}))
    assert is_sb_member(W(0, {EMPTY: EMPTY}))


def test_s1_examples():
    assert is_s1_member(SWAP_B1)
    assert not is_s1_member(REVERSED)


def test_complete_finite_examples():
    assert is_complete_finite(encode(SIGMA, 2))
    assert is_complete_finite(W(0, {EMPTY: EMPTY}))
    # {00} ∪ {01} = {0} is a key, but {10} ∪ {11} = {1} is not a value
    M = W(2, {EMPTY: EMPTY, C("00"): C("10"), C("01"): C("11"), C("0"): WHOLE})
    assert is_order_iso(M)
    assert not is_complete_finite(M)


def test_hereditary_image_examples():
    M = encode(SIGMA, 2)
    assert hereditary_image(M, tilde_truncated(C("0"), 2)) == tilde_truncated(C("1"), 2)
    assert hereditary_image(M, {EMPTY}) == {EMPTY}
    ident = W(2, {u: u for u in enumerate_base(2)})
    for V in enumerate_base(2):
        L = tilde_truncated(V, 2)
        assert hereditary_image(ident, L) == L


def test_hereditary_image_rejects_non_square_window():
    with pytest.raises(MalformedQuery):
        hereditary_image(encode(H, 1), {EMPTY})


def test_hereditary_image_always_hereditary():
    rng = random.Random(9)
    for _ in range(200):
        M = random_square_window(rng, 2)
        L = tilde_truncated(random_clopen(rng, 2), 2)
        assert is_sb_member(M)
        assert is_hereditary_sublattice(hereditary_image(M, L), 2)


# -- encode / decode ----------------------------------------------------------

def test_encode_examples():
    assert encode(SIGMA, 1) == SWAP_B1
    assert encode(ONE_0, 1) == W(1, {EMPTY: EMPTY, C("0"): C("0")})
    assert encode(H, 1) == W(1, {EMPTY: EMPTY, C("0"): C("0", "10"), C("1"): C("11"),
                                 WHOLE: WHOLE})
    # values may be deeper than the window
    assert max(v.depth for v in encode(H, 1).values()) == 2
    with pytest.raises(ResourceLimit):
        encode(H, 4)


def test_encode_matches_image_oracle():
    rng = random.Random(4)
    for _ in range(100):
        h, d = random_prefix_map(rng, 3), rng.randint(0, 3)
        M = encode(h, d)
        assert M.keys() == tilde_truncated(h.domain, d)
        assert all(M[u] == image_clopen(h, u) for u in M.keys())
        assert is_sb_member(M) and is_s1_member(M)


def test_decode_examples():
    assert decode(encode(SIGMA, 2)) == SIGMA
    assert decode(SWAP_B1) == SIGMA
    M = W(2, unions_of({C("00"): C("0"), C("01"): C("10"), C("10"): C("110"),
                        C("11"): C("111")}))
    assert decode(M) == H
    assert all(image_clopen(H, u) == v for u, v in M.entries)


def test_decode_reports_witness():
    # H splits [0] in two, so its depth-1 window has a cylinder key whose
    # image is not a single cylinder
    for M in (encode(H, 1), W(1, {EMPTY: EMPTY, C("0"): C("0", "10")})):
        assert is_sb_member(M)
        with pytest.raises(InconsistencyError) as info:
            decode(M)
        assert info.value.witness == C("0")
    with pytest.raises(MalformedQuery):
        decode(REVERSED)


def test_round_trips_and_injectivity():
    rng = random.Random(12)
    seen = {}
    for _ in range(500):
        h = random_prefix_map(rng, 3)
        M = encode(h, 3)
        assert decode(M) == h
        assert seen.setdefault(M, h) == h
    assert len(seen) > 200


# -- composition and the hat map -----------------------------------------------

def test_phi_examples():
    assert phi_homomorphism_check(SIGMA, SIGMA, 2)
    assert phi_homomorphism_check(H, SIGMA, 3)
    rng = random.Random(1)
    for _ in range(20):
        assert phi_homomorphism_check(random_prefix_map(rng, 3), PrefixMap(), 3)


def test_phi_on_random_pairs():
    rng = random.Random(13)
    for _ in range(200):
        f, g = random_prefix_map(rng, 3), random_prefix_map(rng, 3)
        d = rng.randint(0, 3)
        assert phi_homomorphism_check(f, g, d)


def test_composed_windows_stay_in_sb():
    rng = random.Random(14)
    for _ in range(200):
        f, g = random_prefix_map(rng, 2), random_prefix_map(rng, 2)
        Mg = encode(g, 2)
        composed = window_compose(window_on(f, Mg.values()), Mg)
        assert is_sb_member(composed)
        assert composed == encode(pm_compose(f, g), 2)


def test_window_invert():
    M = encode(H, 1)
    back = window_invert(M)
    assert all(back[v] == u for u, v in M.entries)
    assert window_compose(back, M) == W(1, {u: u for u in M.keys()})
    assert encode(pm_invert(SIGMA), 1) == window_invert(encode(SIGMA, 1))


def test_fhat_examples():
    assert lemma_fhat_check(encode(SIGMA, 2))
    assert lemma_fhat_check(encode(PrefixMap(), 2))
    assert lemma_fhat_check(encode(H, 2))
    assert lemma_fhat_check(encode(pm_identity(C("01", "1")), 3))


def test_limit_stability():
    rng = random.Random(15)
    for _ in range(50):
        # a sequence of windows that settles on its last term, entry by entry
        terms = [random_square_window(rng, 2) for _ in range(4)]
        limit = terms[-1]
        terms += [limit] * 3
        if all(is_order_iso(t) for t in terms):
            stable = {u: limit[u] for u in limit.keys() if all(t.get(u) == limit[u] for t in terms[-3:])}
            assert is_order_iso(W(2, stable))


# -- neighbourhood correspondences ----------------------------------------------

def test_neighbourhood_examples():
    assert neighborhood_correspondence_check(C("0"), C("1"), [SIGMA], 1)
    assert neighborhood_correspondence_check(C("1"), EMPTY, [ONE_0], 1)
    assert C("1") not in encode(ONE_0, 1)
    rng = random.Random(6)
    sample = [random_prefix_map(rng, 2) for _ in range(30)]
    for p in enumerate_base(2):
        assert neighborhood_correspondence_check(EMPTY, p, sample, 2)


def test_neighbourhood_sweep():
    rng = random.Random(16)
    sample = [random_prefix_map(rng, 2) for _ in range(40)]
    base = enumerate_base(2)
    for o in base:
        for p in base[::3]:
            assert neighborhood_correspondence_witness(o, p, sample, 2) is None


def test_neighbourhood_input_checks():
    with pytest.raises(MalformedQuery):
        neighborhood_correspondence_check(C("000"), EMPTY, [SIGMA], 2)
    with pytest.raises(MalformedQuery):
        neighborhood_correspondence_check(C("0"), EMPTY, [H], 1)
