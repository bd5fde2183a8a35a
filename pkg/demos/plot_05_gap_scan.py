"""
Finite-size gaps of Heisenberg chains
=====================================

Exact diagonalization in Sz sectors.  The spin-1/2 gap closes roughly as 1/L;
the spin-1 gap saturates (Haldane).
"""
import numpy as np

from lsmtools.spectra import build_heisenberg, gap_scan, heisenberg_family, lowest_spectrum

s = lowest_spectrum(build_heisenberg([1] * 10, 1.0, "periodic"), k=6)
print("spin-1/2 L=10 levels", np.round(s.eigenvalues, 4), s.multiplicities)

half = gap_scan(heisenberg_family(1), [6, 8, 10, 12])
for L, gap in zip(half.Ls, half.gaps):
    print(f"  L={L:2d}  gap={gap:.4f}  L*gap={L * gap:.3f}")
print("fitted exponent", round(half.alpha, 3))

one = gap_scan(heisenberg_family(2), [4, 6, 8])
print("spin-1 gaps", np.round(one.gaps, 4))

###############################################################################
# Open spin-1 chains have four low states from the two spin-1/2 edges.
s = lowest_spectrum(build_heisenberg([2] * 8), k=6)
print("open spin-1 L=8", np.round(s.eigenvalues, 4), s.multiplicities)
