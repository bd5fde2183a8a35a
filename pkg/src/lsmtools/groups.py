"""Finite graded groups stored as multiplication tables.

A graded group is a pair (G, p) where p: G -> {+1, -1} is a homomorphism that
marks the elements acting antiunitarily.  Elements are dense indices
``0..order-1`` and index 0 is always the identity.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    message: str = ""
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=False)
class GradedGroup:
    """Multiplication table plus parity homomorphism.

    ``mult[g, h]`` is the index of ``g*h``.  Inverses are computed eagerly;
    construction does not validate (see :func:`validate`), but every
    constructor in this module returns valid groups.
    """

    mult: np.ndarray
    parity: np.ndarray
    labels: tuple = ()
    inverse: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        mult = np.asarray(self.mult, dtype=np.int64)
        parity = np.asarray(self.parity, dtype=np.int64)
        if mult.ndim != 2 or mult.shape[0] != mult.shape[1]:
            raise GroupError("multiplication table must be square")
        if parity.shape != (mult.shape[0],):
            raise GroupError("parity must have one entry per element")
        mult.setflags(write=False)
        parity.setflags(write=False)
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "parity", parity)
        labels = tuple(self.labels) if self.labels else tuple(
            "e" if i == 0 else f"g{i}" for i in range(mult.shape[0]))
        object.__setattr__(self, "labels", labels)
        inv = np.full(mult.shape[0], -1, dtype=np.int64)
        rows, cols = np.nonzero(mult == 0)
        inv[rows] = cols
        inv.setflags(write=False)
        object.__setattr__(self, "inverse", inv)

    @property
    def order(self) -> int:
        return self.mult.shape[0]

    @property
    def identity(self) -> int:
        return 0

    def mul(self, g: int, h: int) -> int:
        return int(self.mult[g, h])

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mult, self.mult.T))

    def has_antiunitary(self) -> bool:
        return bool(np.any(self.parity == -1))

    def same_table(self, other: "GradedGroup") -> bool:
        return (np.array_equal(self.mult, other.mult)
                and np.array_equal(self.parity, other.parity))

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.mul(x, g)
            k += 1
        return k

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "mult": self.mult.reshape(-1).tolist(),
            "parity": self.parity.tolist(),
            "labels": list(self.labels),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "GradedGroup":
        n = int(doc["order"])
        mult = np.asarray(doc["mult"], dtype=np.int64).reshape(n, n)
        parity = doc.get("parity") or [1] * n
        return cls(mult, np.asarray(parity), tuple(doc.get("labels") or ()))


def validate(g: GradedGroup) -> ValidationReport:
    """Full-table check of the group axioms and the parity homomorphism."""
    n = g.order
    m = g.mult
    if n < 1:
        return ValidationReport(False, "empty group")
    if m.min() < 0 or m.max() >= n:
        return ValidationReport(False, "table entry out of range")
    ar = np.arange(n)
    if not (np.array_equal(m[0], ar) and np.array_equal(m[:, 0], ar)):
        return ValidationReport(False, "index 0 is not a two-sided identity")
    for r in range(n):
        if len(set(m[r].tolist())) != n:
            return ValidationReport(False, f"row {r} is not a permutation", (r,))
    if np.any(g.inverse < 0):
        bad = int(np.flatnonzero(g.inverse < 0)[0])
        return ValidationReport(False, f"element {bad} has no inverse", (bad,))
    # (fg)h vs f(gh), vectorised over all triples
    left = m[m[:, :, None], ar[None, None, :]]
    right = m[ar[:, None, None], m[None, :, :]]
    bad = np.argwhere(left != right)
    if len(bad):
        f, gg, h = (int(v) for v in bad[0])
        return ValidationReport(False, f"associativity fails at ({f},{gg},{h})", (f, gg, h))
    p = g.parity
    if not np.all(np.isin(p, (1, -1))):
        return ValidationReport(False, "parity values must be +1 or -1")
    if p[0] != 1:
        return ValidationReport(False, "parity of identity must be +1", (0,))
    hom = p[m] != p[:, None] * p[None, :]
    if np.any(hom):
        a, b = (int(v) for v in np.argwhere(hom)[0])
        return ValidationReport(False, f"parity is not a homomorphism at ({a},{b})", (a, b))
    return ValidationReport(True, "ok")


def make_cyclic(n: int, parity_of_generator: int = 1) -> GradedGroup:
    if n < 1:
        raise GroupError("cyclic group order must be positive")
    if parity_of_generator not in (1, -1):
        raise GroupError("parity must be +1 or -1")
    if parity_of_generator == -1 and n % 2:
        raise GroupError(f"odd order {n} admits no parity with p(generator) = -1")
    ar = np.arange(n)
    mult = (ar[:, None] + ar[None, :]) % n
    parity = np.asarray(parity_of_generator) ** ar
    labels = ["e"] + [f"a^{k}" if k > 1 else "a" for k in range(1, n)]
    return GradedGroup(mult, parity, tuple(labels))


def direct_product(g1: GradedGroup, g2: GradedGroup) -> GradedGroup:
    """Element (i, j) gets index ``i*|G2| + j``."""
    n1, n2 = g1.order, g2.order
    i = np.arange(n1 * n2) // n2
    j = np.arange(n1 * n2) % n2
    mult = g1.mult[i[:, None], i[None, :]] * n2 + g2.mult[j[:, None], j[None, :]]
    parity = g1.parity[i] * g2.parity[j]
    labels = []
    for a, b in zip(i, j):
        la, lb = g1.labels[a], g2.labels[b]
        if la == "e" and lb == "e":
            labels.append("e")
        else:
            labels.append(f"({la},{lb})")
    return GradedGroup(mult, parity, tuple(labels))


def trivial_group() -> GradedGroup:
    return make_cyclic(1)


def z2xz2() -> GradedGroup:
    """{e, a1, a2, a3} with a1 a2 = a3; all elements unitary."""
    g = direct_product(make_cyclic(2), make_cyclic(2))
    return GradedGroup(g.mult, g.parity, ("e", "a1", "a2", "a3"))


def z2_time_reversal() -> GradedGroup:
    """{e, a} with a antiunitary."""
    g = make_cyclic(2, -1)
    return GradedGroup(g.mult, g.parity, ("e", "a"))


def zn_x_zn(n: int) -> GradedGroup:
    return direct_product(make_cyclic(n), make_cyclic(n))


def from_permutations(perms: Sequence[Sequence[int]], parity: Optional[Sequence[int]] = None,
                      labels: Sequence[str] = ()) -> GradedGroup:
    """Table of a list of permutations closed under composition; perms[0] must be the identity.

    Product convention: ``(p*q)[k] = p[q[k]]``.
    """
    keys = [tuple(int(v) for v in p) for p in perms]
    pos = {k: i for i, k in enumerate(keys)}
    if keys[0] != tuple(range(len(keys[0]))):
        raise GroupError("first permutation must be the identity")
    n = len(keys)
    mult = np.empty((n, n), dtype=np.int64)
    for a, p in enumerate(keys):
        for b, q in enumerate(keys):
            r = tuple(p[k] for k in q)
            if r not in pos:
                raise GroupError("permutations are not closed under composition")
            mult[a, b] = pos[r]
    return GradedGroup(mult, np.asarray(parity if parity is not None else [1] * n), tuple(labels))


def builtin(name: str) -> GradedGroup:
    """Registry used by the command line front end."""
    key = name.strip().lower()
    if key == "trivial":
        return trivial_group()
    if key == "z2xz2":
        return z2xz2()
    if key in ("z2_tr", "z2tr", "time_reversal"):
        return z2_time_reversal()
    if key.startswith("znxzn(") and key.endswith(")"):
        return zn_x_zn(int(key[6:-1]))
    if key.startswith("z") and key[1:].isdigit():
        return make_cyclic(int(key[1:]))
    if key.startswith("z") and "x" in key:
        parts = key.split("x")
        if all(p.startswith("z") and p[1:].isdigit() for p in parts):
            g = make_cyclic(int(parts[0][1:]))
            for p in parts[1:]:
                g = direct_product(g, make_cyclic(int(p[1:])))
            return g
    raise GroupError(f"unknown builtin group {name!r}")
