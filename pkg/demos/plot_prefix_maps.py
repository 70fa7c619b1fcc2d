"""
Prefix-exchange homeomorphisms
==============================

A map that swaps prefixes and keeps the rest of the sequence.
"""

from partsym.clopen import Clopen
from partsym.homeo import PrefixMap, apply_point, hco_membership, image_clopen, pm_compose, pm_invert

h = PrefixMap((("00", "0"), ("01", "10"), ("1", "11")))
sigma = PrefixMap((("0", "1"), ("1", "0")))

print("h =", h, " h⁻¹ =", pm_invert(h))
print("h∘σ =", pm_compose(h, sigma))
print("h[0] =", image_clopen(h, Clopen(("0",))))
for x in ("0", "011", "1"):
    print(f"h({x}...) ->", apply_point(h, x).to_json())

print("σ ∈ E([0];[1]):", hco_membership(sigma, "E", Clopen(("0",)), Clopen(("1",))))
