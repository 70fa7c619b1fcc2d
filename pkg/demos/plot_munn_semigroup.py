"""
The Munn semigroup of a small semilattice
=========================================

Two atoms a, b above a bottom 0.  The principal ideals {0, a} and {0, b}
are isomorphic, so the Munn semigroup has two maps swapping them on top of
the three partial identities.
"""

import numpy as np

from partsym.pbij import cayley_semigroup, wagner_preston
from partsym.semilattice import compat_pairs, flat, munn_semigroup

E = flat(2)
print("meet table:\n", E.meet)
print("order (row <= column):\n", E.leq.astype(int))
print("compatible apexes:", sorted(compat_pairs(E)))

elements = munn_semigroup(E)
for m in elements:
    print(f"  {m.source_apex} -> {m.target_apex}: {m.map}")

# as an abstract inverse semigroup, and represented back on itself
S = cayley_semigroup([m.map for m in elements])
print("Cayley table:\n", S.product)
print("Wagner-Preston images:", wagner_preston(S))

# idempotents sit where the diagonal of the table is fixed
idempotents = np.flatnonzero(np.diag(S.product) == np.arange(S.size))
print("idempotent elements:", idempotents.tolist())
