"""
Second cohomology of small graded groups
========================================

H^2(G, U(1)) classifies projective representations.  For groups with
antiunitary elements the coefficients are twisted: antiunitary elements act
on phases by complex conjugation.
"""
import numpy as np

from lsmtools import groups as G
from lsmtools.cohomology import class_of, compute_H2, torsion_count

###############################################################################
# A few builtin groups.  ``z2_tr`` is Z2 generated by time reversal.
for name in ("trivial", "z2xz2", "z2_tr", "z3xz3", "z4", "z2xz4"):
    g = G.builtin(name)
    print(f"{name:8s} |G|={g.order:2d}  H2 invariant factors {compute_H2(g).invariant_factors}")

###############################################################################
# Every class has a representative cocycle with phases in (1/N) Z, and
# projecting it back recovers the class.
h2 = compute_H2(G.zn_x_zn(3))
for c in h2.elements():
    phi = h2.section(c)
    print(c.coords, "->", class_of(phi, h2).coords,
          "phase values", sorted({str(v) for v in np.ravel(phi.phases)}))

###############################################################################
# Classes representable with Z_N phases: the N-torsion of H^2.
print([torsion_count(h2, N) for N in range(1, 7)])
