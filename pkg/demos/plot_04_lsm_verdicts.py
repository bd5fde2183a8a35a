"""
LSM-type obstructions
=====================

Given the on-site classes of a chain and its spatial symmetry, decide whether a
symmetric pure split state can exist.  Verdicts come with a certificate that
can be checked independently.
"""
from pathlib import Path

from lsmtools import groups as G
from lsmtools.cohomology import compute_H2
from lsmtools.lsm import REFLECTION, TRANSLATION, ChainSpec, check, load_spec, reduce_compact_group

here = Path(__file__).resolve().parent if "__file__" in dir() else Path("demos")

g = G.z2xz2()
h2 = compute_H2(g)
half = h2.element(1)

###############################################################################
# Translation-invariant spin-1/2 chain.
v = check(ChainSpec(g, h2, {0: half}, TRANSLATION))
print(v.sentence)

###############################################################################
# Reflection: only the class at the fixed site matters.
v = check(ChainSpec(g, h2, {0: half, 1: h2.element(0), -1: h2.element(0)}, REFLECTION))
print(v.sentence)

###############################################################################
# Over Z3 x Z3 every class is twice something, so reflection never obstructs.
v = load_spec(here / "configs" / "z3xz3_reflection.json")
verdict = check(v)
print(verdict.sentence, verdict.certificate)

###############################################################################
# Continuous symmetry: SO(3) has pi_1 = Z2, and a spin-1/2 site gives the
# nontrivial element.
obstructed, parts = reduce_compact_group([2], [1])
print("SO(3) spin-1/2 obstructed:", obstructed, [(p.order, p.cls.coords) for p in parts])
