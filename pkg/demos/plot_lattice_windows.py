"""
Coding a prefix map by its action on clopen sets
================================================

A prefix map is recovered from the window u -> h[u] on the depth-d clopen
sets, and the coding respects composition.
"""

from partsym.homeo import PrefixMap, pm_compose
from partsym.lattice_iso import decode, encode, is_sb_member, phi_homomorphism_check

h = PrefixMap((("00", "0"), ("01", "10"), ("1", "11")))
sigma = PrefixMap((("0", "1"), ("1", "0")))

M = encode(h, 2)
for u, v in M.entries:
    print(f"  {u!r:24} -> {v!r}")
print("S(B) window:", is_sb_member(M), " decodes back:", decode(M) == h)

print("coding commutes with composition:", phi_homomorphism_check(h, sigma, 3))
print("decode(encode(h∘σ)) =", decode(encode(pm_compose(h, sigma), 2)))
