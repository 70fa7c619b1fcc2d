"""
Partial bijections of the naturals
==================================

Composition, inverses, idempotents, and the distance between two maps.
"""

from partsym.pbij import (PartialBijection, compose, invert, is_idempotent, partial_identity,
                          tau_pp_distance)

P = PartialBijection.from_mapping

# composition applies the right-hand map first
f, g = P({1: 2}), P({0: 1})
print("f∘g =", compose(f, g))

# f∘f⁻¹ is the identity on the image of f, and it is idempotent
h = P({0: 3, 1: 4, 2: 0})
e = compose(h, invert(h))
print("h∘h⁻¹ =", e, "idempotent:", is_idempotent(e), e == partial_identity(h.image))

# the distance counts, with weight 2^-(x+1), every point where the two maps
# or their inverses disagree
print("d({0->1}, {0->2}) =", tau_pp_distance(P({0: 1}), P({0: 2}), 8))
