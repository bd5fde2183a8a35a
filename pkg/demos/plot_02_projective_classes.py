"""
Classifying spin representations
================================

The pi rotations about three axes give a projective representation of
Z2 x Z2; time reversal gives one of Z2 with an antiunitary generator.  Both
are nontrivial exactly for half-odd-integer spin.
"""
import numpy as np

from lsmtools.projective import (classify, representation_group_rep, spin_rep_time_reversal,
                                 spin_rep_z2xz2, tensor)

for two_s in range(1, 7):
    a = classify(spin_rep_z2xz2(two_s)).coords
    b = classify(spin_rep_time_reversal(two_s)).coords
    print(f"S = {two_s}/2   rotations {a}   time reversal {b}")

###############################################################################
# Classes add under tensor products: two spin-1/2 make a spin 0 + spin 1.
half = spin_rep_z2xz2(1)
print("1/2 x 1/2 ->", classify(tensor(half, half)).coords)

###############################################################################
# Time reversal squares to -1 on a half-odd spin (Kramers).
T = spin_rep_time_reversal(3)[1]
print("T^2 =", np.round(np.diag((T @ T).matrix).real, 12))

###############################################################################
# Clock and shift matrices realize every class of Z_n x Z_n.
for k in range(3):
    print("clock n=3 k=%d ->" % k, classify(representation_group_rep(3, k)).coords)
