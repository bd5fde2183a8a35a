"""
Edge representations of matrix product states
=============================================

An injective symmetric MPS carries a projective representation on its bond
space.  Its class is the SPT index of the state.
"""
import numpy as np

from lsmtools.mps import (aklt, dimer_spt, extract_edge_rep, left_right_indices, product_state,
                          verify_main_identity)
from lsmtools.projective import representation_group_rep, spin_rep_time_reversal, spin_rep_z2xz2

rot, tr = spin_rep_z2xz2(2), spin_rep_time_reversal(2)

###############################################################################
# AKLT: the edge carries a spin 1/2, so the index is 1 under either group.
A = aklt()
print("injective:", A.injectivity_report())
for name, sym in (("rotations", rot), ("time reversal", tr)):
    e = extract_edge_rep(A, sym)
    print(f"AKLT {name}: index {e.index().coords}, residual {e.max_residual:.1e}")

print("product state:", extract_edge_rep(product_state([0, 1, 0]), rot).index().coords)

###############################################################################
# Left and right indices cancel.
m, sym = dimer_spt(representation_group_rep(3, 1))
print("clock dimer (sigma_L, sigma_R):", [c.coords for c in left_right_indices(m, sym)])

###############################################################################
# Adding a site with class c shifts the right index by c.
r = verify_main_identity(A, rot, spin_rep_z2xz2(1))
print("prepend spin-1/2:", r.chain_index.coords, "+", r.site_class.coords, "=",
      r.prepended_index.coords, "ok" if r.ok else "MISMATCH")
