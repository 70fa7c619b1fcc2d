"""
Clopen sets of Cantor space
===========================

Finite unions of cylinders, kept as reduced prefix antichains, and the
hereditary families of the depth-2 base.
"""

from partsym.clopen import Clopen, complement, enumerate_base, hereditary_census, tilde_truncated

a = Clopen(("00", "01"))       # merges to [0]
b = Clopen(("01", "1"))
print(a, b, "union:", a | b, "meet:", a & b, "complement of [00]:", complement(Clopen(("00",))))

print("B_1 =", enumerate_base(1))

# every hereditary sublattice of B_2 is the family of subsets of its top
families = hereditary_census(2)
print(len(families), "hereditary sublattices of B_2")
tops = {max(L, key=lambda u: len(tilde_truncated(u, 2))) for L in families}
print(all(tilde_truncated(V, 2) in families for V in tops))
