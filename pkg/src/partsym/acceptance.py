"""End-to-end acceptance criteria.

Each ``criterion_*`` function runs one criterion on a seeded sample and
returns a :class:`CriterionResult`.  The checks compare library output with
small brute-force oracles written here, independently of the code paths
they check.  ``run_all`` drives them; the ``verify`` CLI command and
``tests/test_acceptance.py`` both go through it.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

from . import clopen as cl
from .lattice_iso import (decode, encode, hereditary_image, is_sb_member, lemma_fhat_check,
                          neighborhood_correspondence_check, phi_homomorphism_check)
from .pbij import (PartialBijection, SequenceWindow, cayley_semigroup, check_convergence,
                   compose, invert, is_idempotent, partial_identity, tau_pp_distance,
                   wagner_preston)
from .sampling import (eventually_constant_sequence, random_clopen, random_partial_bijection,
                       random_prefix_map, random_square_window)
from .semilattice import all_semilattices, chain, flat, munn_semigroup

__all__ = ["CriterionResult", "CRITERIA", "run_all", "format_report", "all_partial_bijections"]

DEFAULT_SEED = 0


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number}. {self.name}: {self.detail}"


def all_partial_bijections(points) -> list:
    """Every element of I(points), by brute force."""
    points = sorted(points)
    out = []
    for k in range(len(points) + 1):
        for dom in combinations(points, k):
            for im in permutations(points, k):
                out.append(PartialBijection(tuple(zip(dom, im))))
    return out


def _pointwise_compose(f, g):
    # oracle: evaluate f(g(x)) point by point
    fm, gm = f.mapping, g.mapping
    return {x: fm[gm[x]] for x in range(10) if x in gm and gm[x] in fm}


def criterion_inverse_laws(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = random.Random(seed)
    pool = [random_partial_bijection(rng) for _ in range(1000)]
    failures = []
    for _ in range(5000):
        f, g, h = rng.choice(pool), rng.choice(pool), rng.choice(pool)
        if compose(compose(f, g), h) != compose(f, compose(g, h)):
            failures.append(("assoc", f, g, h))
        if compose(f, g).mapping != _pointwise_compose(f, g):
            failures.append(("compose", f, g))
    for f in pool:
        g = invert(f)
        if compose(compose(f, g), f) != f or compose(compose(g, f), g) != g:
            failures.append(("inverse", f))
        if is_idempotent(f) != (compose(f, f) == f) or is_idempotent(f) != (f == partial_identity(f.domain)):
            failures.append(("idempotent", f))
    # uniqueness of inverses: exhaustive over I(support) for small supports
    small = [f for f in pool if len(f.domain | f.image) <= 3] + all_partial_bijections(range(3))
    checked = 0
    for f in small:
        support = f.domain | f.image
        candidates = [g for g in all_partial_bijections(support)
                      if compose(compose(f, g), f) == f and compose(compose(g, f), g) == g]
        checked += 1
        if candidates != [invert(f)]:
            failures.append(("unique", f, candidates))
    detail = f"1000 maps, 5000 triples, {checked} exhaustive uniqueness checks, {len(failures)} failures"
    return CriterionResult(1, "inverse-semigroup laws in I(N)", not failures, detail)


def _brute_force_munn(E) -> set:
    n = E.size
    meet = E.meet.tolist()
    ideals = {frozenset(y for y in range(n) if meet[y][x] == y) for x in range(n)}

    def leq(a, b):
        return meet[a][b] == a

    found = set()
    for f in all_partial_bijections(range(n)):
        if f.domain not in ideals or f.image not in ideals:
            continue
        if all(leq(a, b) == leq(fa, fb) for a, fa in f.entries for b, fb in f.entries):
            found.add(f)
    return found


def criterion_munn(seed: int = DEFAULT_SEED) -> CriterionResult:
    failures = []
    count = 0
    for n in range(1, 5):
        for E in all_semilattices(n):
            count += 1
            elements = munn_semigroup(E)
            maps = {m.map for m in elements}
            if len(maps) != len(elements) or maps != _brute_force_munn(E):
                failures.append(("enumeration", E.meet.tolist()))
            if any(invert(f) not in maps or any(compose(f, g) not in maps for g in maps)
                   for f in maps):
                failures.append(("closure", E.meet.tolist()))
            for m in elements:
                top = m.source_apex
                if (top not in m.map.domain or m.map(top) != m.target_apex
                        or any(E.meet[y, top] != y for y in m.map.domain)):
                    failures.append(("apex", m))
    for n in range(1, 7):
        elements = munn_semigroup(chain(n))
        expected = {partial_identity(range(x + 1)) for x in range(n)}
        if len(elements) != n or {m.map for m in elements} != expected:
            failures.append(("chain", n))
    detail = f"{count} labelled semilattices of size <= 4, chains 1..6, {len(failures)} failures"
    return CriterionResult(2, "Munn semigroup correctness", not failures, detail)


def criterion_census(seed: int = DEFAULT_SEED) -> CriterionResult:
    start = time.perf_counter()
    found = set(cl.hereditary_census(2))
    elapsed = time.perf_counter() - start
    expected = {cl.tilde_truncated(V, 2) for V in cl.enumerate_base(2)}
    ok = found == expected and len(found) == 16 and elapsed < 5.0
    # the runtime stays out of the detail so that reports are reproducible
    detail = f"{len(found)} hereditary sublattices of B_2 among 2^16 families, under 5s"
    return CriterionResult(3, "finite C=L census at depth 2", ok, detail)


def criterion_phi_isomorphism(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = random.Random(seed + 4)
    maps = [random_prefix_map(rng, 3) for _ in range(500)]
    failures = [h for h in maps if h.rule_depth > 3 or decode(encode(h, 3)) != h]
    distinct = set(maps)
    windows = {encode(h, 3) for h in distinct}
    if len(windows) != len(distinct):
        failures.append("encode not injective")
    pairs = [(random_prefix_map(rng, 3), random_prefix_map(rng, 3)) for _ in range(500)]
    bad_pairs = [(f, g) for f, g in pairs if not phi_homomorphism_check(f, g, 3)]
    failures.extend(bad_pairs)
    detail = (f"500 round trips, {len(distinct)} distinct maps with distinct windows, "
              f"500 homomorphism pairs, {len(failures)} failures")
    return CriterionResult(4, "coding is an isomorphism on prefix maps", not failures, detail)


def criterion_fhat(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = random.Random(seed + 5)
    windows = []
    for _ in range(500):
        d = rng.randint(0, 3)
        windows.append(encode(random_prefix_map(rng, d), d))
    bad = [W for W in windows if not lemma_fhat_check(W)]
    return CriterionResult(5, "hat map reproduces the window", not bad,
                           f"500 windows at depths 0..3, {len(bad)} failures")


def criterion_neighborhoods(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = random.Random(seed + 6)
    sample = [random_prefix_map(rng, 2) for _ in range(100)]
    base = cl.enumerate_base(2)
    bad = [(o, p) for o in base for p in base
           if not neighborhood_correspondence_check(o, p, sample, 2)]
    return CriterionResult(6, "subbasic neighbourhood correspondences", not bad,
                           f"256 (o, p) pairs x 100 maps, {len(bad)} failures")


def criterion_convergence(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = random.Random(seed + 7)
    failures = []
    # (a) growing partial identities
    window = SequenceWindow([partial_identity(range(n + 1)) for n in range(10)],
                            partial_identity(range(21)), 5)
    for strict in (False, True):
        if not check_convergence(window, strict).consistent:
            failures.append(("a", strict))
    # (b) {n -> 0} against the empty map
    window = SequenceWindow([PartialBijection(((n, 0),)) for n in range(10)], PartialBijection(), 3)
    if not check_convergence(window, strict_inverse=False).consistent:
        failures.append(("b", False))
    verdict = check_convergence(window, strict_inverse=True)
    if verdict.consistent or verdict.refutation_witness[0] != 0 \
            or verdict.refutation_witness[2] != "ii-inverse":
        failures.append(("b", True, verdict))
    # (c) eventually constant sequences
    for _ in range(10):
        terms, limit = eventually_constant_sequence(rng)
        window = SequenceWindow(terms, limit, 9)
        for strict in (False, True):
            if not check_convergence(window, strict).consistent:
                failures.append(("c", strict, terms, limit))
        dists = [tau_pp_distance(t, limit, 9) for t in terms]
        last_nonzero = max((i for i, x in enumerate(dists) if x != 0), default=-1)
        if dists[-1] != Fraction(0) or last_nonzero >= len(terms) - 1:
            failures.append(("c-metric", dists))
    return CriterionResult(7, "convergence criterion", not failures,
                           f"3 canned cases + 10 seeded sequences, {len(failures)} failures")


def _check_representation(S, thetas) -> bool:
    if len(set(thetas)) != S.size:
        return False
    return all(thetas[S.mul(s, t)] == compose(thetas[s], thetas[t])
               for s in range(S.size) for t in range(S.size))


def criterion_wagner_preston(seed: int = DEFAULT_SEED) -> CriterionResult:
    failures = []
    munn = cayley_semigroup([m.map for m in munn_semigroup(flat(2))])
    if munn.size != 5 or not _check_representation(munn, wagner_preston(munn)):
        failures.append("flat munn")
    count = 0
    for n in range(1, 5):
        for E in all_semilattices(n):
            count += 1
            S = E.as_inverse_semigroup()
            if not _check_representation(S, wagner_preston(S)):
                failures.append(E.meet.tolist())
    return CriterionResult(8, "Wagner-Preston at finite scale", not failures,
                           f"5-element Munn semigroup + {count} semilattices, {len(failures)} failures")


def criterion_hereditary_image(seed: int = DEFAULT_SEED) -> CriterionResult:
    rng = random.Random(seed + 9)
    bad = 0
    for _ in range(200):
        M = random_square_window(rng, 2)
        L = cl.tilde_truncated(random_clopen(rng, 2), 2)
        if not is_sb_member(M) or not cl.is_hereditary_sublattice(hereditary_image(M, L), 2):
            bad += 1
    return CriterionResult(9, "hereditary image lemma", bad == 0,
                           f"200 (M, L) pairs at depth 2, {bad} failures")


CRITERIA = (
    criterion_inverse_laws,
    criterion_munn,
    criterion_census,
    criterion_phi_isomorphism,
    criterion_fhat,
    criterion_neighborhoods,
    criterion_convergence,
    criterion_wagner_preston,
    criterion_hereditary_image,
)


def run_all(seed: int = DEFAULT_SEED) -> list:
    return [criterion(seed) for criterion in CRITERIA]


def format_report(results) -> str:
    return "\n".join(r.line() for r in results)
