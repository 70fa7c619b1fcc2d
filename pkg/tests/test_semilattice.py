import json
import random

import numpy as np
import pytest

from partsym.acceptance import all_partial_bijections
from partsym.errors import MalformedQuery
from partsym.pbij import PartialBijection, compose, invert, partial_identity
from partsym.semilattice import (FiniteSemilattice, all_semilattices, chain, compat_pairs, flat,
                                 is_munn_member, munn_semigroup, order_isomorphisms,
                                 principal_ideal, random_semilattice)

P = PartialBijection.from_mapping
FLAT = flat(2)  # 0 below the two atoms a = 1 and b = 2
A, B = 1, 2


def brute_force_munn(E):
    """Every partial bijection between principal ideals that preserves and reflects ≤."""
    meet = E.meet.tolist()
    ideals = [frozenset(y for y in range(E.size) if meet[x][y] == y) for x in range(E.size)]
    out = set()
    for f in all_partial_bijections(range(E.size)):
        if f.domain in ideals and f.image in ideals and all(
                (meet[a][b] == a) == (meet[fa][fb] == fa)
                for a, fa in f.entries for b, fb in f.entries):
            out.add(f)
    return out


def test_meet_table_validation():
    with pytest.raises(MalformedQuery):
        FiniteSemilattice([[0, 1], [0, 1]])  # not commutative
    with pytest.raises(MalformedQuery):
        FiniteSemilattice([[1, 0], [0, 1]])  # not idempotent
    assert FLAT.meet.tolist() == [[0, 0, 0], [0, 1, 0], [0, 0, 2]]


def test_json_round_trip():
    doc = json.loads(json.dumps(FLAT.to_json()))
    assert doc == {"size": 3, "meet": [[0, 0, 0], [0, 1, 0], [0, 0, 2]]}
    assert FiniteSemilattice.from_json(doc).meet.tolist() == doc["meet"]


def test_principal_ideal_examples():
    assert principal_ideal(chain(4), 2) == {0, 1, 2}
    assert principal_ideal(FLAT, A) == {0, A}
    for E in (chain(4), FLAT, flat(3)):
        # the minimum lies below everything
        bottom = int(np.flatnonzero(E.leq.all(axis=1))[0])
        assert principal_ideal(E, bottom) == {bottom}


def test_compat_pairs_examples():
    assert compat_pairs(chain(4)) == {(x, x) for x in range(4)}
    assert compat_pairs(FLAT) == {(0, 0), (1, 1), (2, 2), (A, B), (B, A)}
    assert compat_pairs(chain(1)) == {(0, 0)}


def test_munn_examples():
    assert {m.map for m in munn_semigroup(chain(4))} == {partial_identity(range(x + 1))
                                                         for x in range(4)}
    flat_maps = [m.map for m in munn_semigroup(FLAT)]
    assert len(flat_maps) == 5
    assert set(flat_maps) == {P({0: 0}), P({0: 0, A: A}), P({0: 0, B: B}),
                              P({0: 0, A: B}), P({0: 0, B: A})}
    assert [m.map for m in munn_semigroup(chain(1))] == [P({0: 0})]


def test_munn_output_order_is_deterministic():
    elements = munn_semigroup(FLAT)
    keys = [m.sort_key() for m in elements]
    assert keys == sorted(keys)
    assert [m.to_json() for m in elements] == [m.to_json() for m in munn_semigroup(FLAT)]


def test_is_munn_member_examples():
    assert is_munn_member(FLAT, P({0: 0, A: B}))
    assert not is_munn_member(FLAT, P({0: B, A: 0}))  # order reversed
    assert not is_munn_member(FLAT, P({A: A}))  # {a} is not a principal ideal


def test_order_isomorphisms_between_chains():
    E = chain(3)
    assert list(order_isomorphisms(E, 2, 2)) == [{0: 0, 1: 1, 2: 2}]
    assert list(order_isomorphisms(E, 1, 2)) == []


@pytest.mark.parametrize("n", range(1, 7))
def test_chain_munn_size(n):
    assert len(munn_semigroup(chain(n))) == n


def test_all_small_semilattices_against_brute_force():
    count = 0
    for n in range(1, 5):
        for E in all_semilattices(n):
            count += 1
            assert {m.map for m in munn_semigroup(E)} == brute_force_munn(E)
    # labelled meet-semilattices on 1..4 points
    assert count == 1 + 2 + 12 + 73


def test_random_semilattices():
    rng = random.Random(11)
    for _ in range(220):
        E = random_semilattice(rng, max_size=5)
        elements = munn_semigroup(E)
        maps = {m.map for m in elements}
        for x in range(E.size):
            assert partial_identity(principal_ideal(E, x)) in maps
        for m in elements:
            assert is_munn_member(E, m.map)
            assert m.source_apex == max(m.map.domain, key=lambda y: len(principal_ideal(E, y)))
            assert m.map(m.source_apex) == m.target_apex
        for f in maps:
            assert invert(f) in maps
            assert all(compose(f, g) in maps for g in maps)
