"""
The twist operator
==================

U winds the U(1) phase by 2 pi across a window of 2l+1 sites.  For a chain
symmetric about a half-odd-integer spin, reflection combined with a pi
rotation flips the sign of U, so <U> = 0 in the ground state, while the energy
cost of U falls off like 1/l.
"""
import numpy as np

from lsmtools.spectra import (build_heisenberg, lowest_spectrum, twist_energy_check,
                              twist_expectation_check, twist_identity_error, twist_operator)

h = build_heisenberg([1] * 13)
c = 6
U = twist_operator(h, 3, c)
k = np.angle(U.diagonal) * 6 / np.pi
print("phases on the grid pi/6:", np.allclose(k, np.round(k)))
print("identity error", twist_identity_error(h, 3, c))

r = twist_expectation_check(h, 3, c)
print("|<U>| =", abs(r.value))

###############################################################################
# Energy cost.  l * dE(l) approaches a constant from below.
hp = build_heisenberg([1] * 14, 1.0, "periodic")
psi = lowest_spectrum(hp, 2, vectors=True).vectors[:, 0]
rep = twist_energy_check(hp, psi, range(2, 7), center=7)
for ell, de in zip(rep.ells, rep.delta_e):
    print(f"  l={ell}  dE={de:.4f}  l*dE={ell * de:.3f}")
