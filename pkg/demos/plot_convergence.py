"""
Checking a claimed limit on a finite window
===========================================

The sequence f_n = {n -> 0} loses every domain point eventually, so it
looks convergent to the empty map when only domains are watched.  The point
0 stays in every image, though, and the stricter check catches that.
"""

from partsym.pbij import PartialBijection, SequenceWindow, check_convergence, tau_pp_distance

terms = [PartialBijection(((n, 0),)) for n in range(10)]
window = SequenceWindow(terms, PartialBijection(), window_bound=3)

for strict in (False, True):
    verdict = check_convergence(window, strict_inverse=strict)
    print(f"strict_inverse={strict}:", verdict.to_json())

# the distances to the claimed limit never drop below 1/2
print([str(tau_pp_distance(t, PartialBijection(), 3)) for t in terms])
