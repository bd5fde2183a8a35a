"""Projective (co-)representations: unitary and antiunitary matrices.

An operator is a pair ``(matrix, conjugates)``.  With ``conjugates`` set it
acts antilinearly, ``v -> matrix @ conj(v)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from scipy.linalg import expm

from . import groups
from .cohomology import (CohomologyClass, CohomologyGroup, Cocycle2, class_of,
                         compute_H2, validate_cocycle)
from .groups import GradedGroup

TOL_UNITARY = 1e-9
TOL_SCALAR = 1e-9
TOL_SNAP = 1e-6


class RepresentationError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SesquiOperator:
    matrix: np.ndarray
    conjugates: bool = False

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise RepresentationError("operator matrix must be square")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "conjugates", bool(self.conjugates))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.matrix @ (np.conj(v) if self.conjugates else v)

    def unitarity_error(self) -> float:
        m = self.matrix
        return float(np.abs(m.conj().T @ m - np.eye(self.dim)).max())

    def scaled(self, z: complex) -> "SesquiOperator":
        return SesquiOperator(z * self.matrix, self.conjugates)

    def __matmul__(self, other: "SesquiOperator") -> "SesquiOperator":
        return compose(self, other)


def compose(a: SesquiOperator, b: SesquiOperator) -> SesquiOperator:
    if a.dim != b.dim:
        raise RepresentationError(f"dimension mismatch {a.dim} vs {b.dim}")
    right = np.conj(b.matrix) if a.conjugates else b.matrix
    return SesquiOperator(a.matrix @ right, a.conjugates ^ b.conjugates)


@dataclass(frozen=True, eq=False)
class SesquiRep:
    group: GradedGroup
    ops: tuple

    def __post_init__(self):
        ops = tuple(op if isinstance(op, SesquiOperator) else SesquiOperator(*op) for op in self.ops)
        if len(ops) != self.group.order:
            raise RepresentationError("one operator per group element required")
        if len({op.dim for op in ops}) != 1:
            raise RepresentationError("operators have inconsistent dimensions")
        object.__setattr__(self, "ops", ops)

    @property
    def dim(self) -> int:
        return self.ops[0].dim

    def __getitem__(self, g: int) -> SesquiOperator:
        return self.ops[g]

    def check(self, tol_unitary: float = TOL_UNITARY, tol_scalar: float = TOL_SCALAR) -> list[str]:
        """Return a list of violated invariants (empty when valid)."""
        problems = []
        e = self.ops[0]
        if e.conjugates or np.abs(e.matrix - np.eye(self.dim)).max() > tol_unitary:
            problems.append("V(e) is not the identity")
        for g, op in enumerate(self.ops):
            if op.conjugates != (self.group.parity[g] == -1):
                problems.append(f"conjugation flag of element {g} disagrees with parity")
            if op.unitarity_error() > tol_unitary:
                problems.append(f"V({g}) is not unitary")
        if not problems:
            worst = max_scalar_residual(self)
            if worst > tol_scalar:
                problems.append(f"not projective: residual {worst:.2e}")
        return problems

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "ops": [{"matrix": [[z.real, z.imag] for z in op.matrix.reshape(-1)],
                     "conjugates": op.conjugates} for op in self.ops],
        }

    @classmethod
    def from_dict(cls, group: GradedGroup, doc: dict) -> "SesquiRep":
        d = int(doc["dim"])
        ops = []
        for od in doc["ops"]:
            arr = np.array([complex(re, im) for re, im in od["matrix"]]).reshape(d, d)
            ops.append(SesquiOperator(arr, bool(od.get("conjugates", False))))
        return cls(group, tuple(ops))


def _scalar_part(m: np.ndarray) -> tuple[complex, float]:
    d = m.shape[0]
    z = np.trace(m) / d
    return z, float(np.abs(m - z * np.eye(d)).max())


def max_scalar_residual(rep: SesquiRep) -> float:
    worst = 0.0
    G = rep.group
    for g in range(G.order):
        for h in range(G.order):
            prod = compose(rep[g], rep[h]).matrix @ rep[G.mult[g, h]].matrix.conj().T
            worst = max(worst, _scalar_part(prod)[1])
    return worst


def snap_phase(z: complex, denominator: int, tol: float = TOL_SNAP) -> Fraction:
    """Nearest rational k/denominator to arg(z)/2pi, or raise if farther than tol."""
    t = (np.angle(z) / (2 * np.pi)) % 1.0
    k = round(t * denominator)
    if abs(t * denominator - k) / denominator > tol or abs(abs(z) - 1) > tol:
        raise RepresentationError(
            f"phase {t:.9f} is not within {tol} of the 1/{denominator} grid")
    return Fraction(k, denominator) % 1


def extract_cocycle(rep: SesquiRep, snap_denominator: int,
                    tol_scalar: float = TOL_SCALAR, tol_snap: float = TOL_SNAP) -> Cocycle2:
    G = rep.group
    n = G.order
    table = np.empty((n, n), dtype=object)
    for g in range(n):
        for h in range(n):
            prod = compose(rep[g], rep[h]).matrix @ rep[G.mult[g, h]].matrix.conj().T
            z, resid = _scalar_part(prod)
            if resid > tol_scalar:
                raise RepresentationError(
                    f"V({g})V({h}) is not a multiple of V(gh) (residual {resid:.2e})")
            table[g, h] = snap_phase(z, snap_denominator, tol_snap)
    phi = Cocycle2(G, table)
    report = validate_cocycle(phi)
    if not report:
        raise RepresentationError(f"snapped phases violate the cocycle identity: {report.message}")
    return phi


def determinant_gauge(rep: SesquiRep) -> SesquiRep:
    """Divide each V(g) by the principal d-th root of det V(g)."""
    d = rep.dim
    ops = [rep.ops[0]]
    for op in rep.ops[1:]:
        det = np.linalg.det(op.matrix)
        root = np.exp(1j * np.angle(det) / d) * abs(det) ** (1.0 / d)
        ops.append(op.scaled(1.0 / root))
    return SesquiRep(rep.group, tuple(ops))


def rephase(rep: SesquiRep, phases: Sequence[complex]) -> SesquiRep:
    """V(g) -> psi(g) V(g) with psi(e) forced to 1."""
    ops = [rep.ops[0]] + [op.scaled(z) for op, z in zip(rep.ops[1:], phases[1:])]
    return SesquiRep(rep.group, tuple(ops))


_H2_CACHE: dict = {}


def _h2_for(group: GradedGroup) -> CohomologyGroup:
    key = (group.mult.tobytes(), group.parity.tobytes())
    if key not in _H2_CACHE:
        _H2_CACHE[key] = compute_H2(group)
    return _H2_CACHE[key]


def classify(rep: SesquiRep, h2: Optional[CohomologyGroup] = None,
             tol_unitary: float = TOL_UNITARY, tol_scalar: float = TOL_SCALAR,
             tol_snap: float = TOL_SNAP) -> CohomologyClass:
    """Degree-2 cohomology class of a projective co-representation."""
    problems = rep.check(tol_unitary, tol_scalar)
    if problems:
        raise RepresentationError("; ".join(problems))
    h2 = h2 if h2 is not None else _h2_for(rep.group)
    gauged = determinant_gauge(rep)
    den = math.lcm(2 * rep.group.order, 2 * rep.dim)
    phi = extract_cocycle(gauged, den, tol_scalar, tol_snap)
    return class_of(phi, h2)


def tensor(r1: SesquiRep, r2: SesquiRep) -> SesquiRep:
    if not r1.group.same_table(r2.group):
        raise RepresentationError("tensor product of reps of different groups")
    ops = tuple(SesquiOperator(np.kron(a.matrix, b.matrix), a.conjugates)
                for a, b in zip(r1.ops, r2.ops))
    return SesquiRep(r1.group, ops)


def adjoint_action(rep: SesquiRep, g: int, a: np.ndarray) -> np.ndarray:
    """V(g) A V(g)^*; A is conjugated entrywise first when V(g) is antiunitary."""
    op = rep[g]
    a = np.asarray(a)
    if a.shape != (op.dim, op.dim):
        raise RepresentationError(f"operator shape {a.shape} does not match dim {op.dim}")
    inner = np.conj(a) if op.conjugates else a
    return op.matrix @ inner @ op.matrix.conj().T


def trivial_rep(group: GradedGroup, dim: int = 1) -> SesquiRep:
    eye = np.eye(dim)
    return SesquiRep(group, tuple(SesquiOperator(eye, p == -1) for p in group.parity))


# ---------------------------------------------------------------------------
# spin matrices and the standard examples

def spin_matrices(two_s: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(S1, S2, S3) in the S3-diagonal basis m = S, S-1, ..., -S.

    Ladder coefficients are real and nonnegative, so S2 is purely imaginary.
    """
    if two_s < 0:
        raise ValueError("two_s must be nonnegative")
    s = two_s / 2
    m = s - np.arange(two_s + 1)
    splus = np.zeros((two_s + 1, two_s + 1))
    for k in range(1, two_s + 1):
        splus[k - 1, k] = np.sqrt(s * (s + 1) - m[k] * (m[k] + 1))
    sminus = splus.T
    return (splus + sminus) / 2, (splus - sminus) / 2j, np.diag(m).astype(complex)


def spin_rep_z2xz2(two_s: int) -> SesquiRep:
    """v(a_nu) = exp(-i pi S^(nu)) on spin two_s/2, nu = 1, 2, 3."""
    if two_s < 1:
        raise ValueError("two_s must be at least 1")
    G = groups.z2xz2()
    S = spin_matrices(two_s)
    ops = [SesquiOperator(np.eye(two_s + 1))]
    ops += [SesquiOperator(expm(-1j * np.pi * S[nu])) for nu in range(3)]
    return SesquiRep(G, tuple(ops))


def spin_rep_time_reversal(two_s: int) -> SesquiRep:
    """v(a) = K exp(-i pi S^(2)); the matrix part is exp(-i pi S^(2)), which is real."""
    if two_s < 1:
        raise ValueError("two_s must be at least 1")
    G = groups.z2_time_reversal()
    S2 = spin_matrices(two_s)[1]
    rot = expm(-1j * np.pi * S2)
    # K M = conj(M) K; conj(M) == M here since M is real
    ops = (SesquiOperator(np.eye(two_s + 1)), SesquiOperator(np.conj(rot), True))
    return SesquiRep(G, ops)


def almost_commuting_pair(n: int, k: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Clock and shift matrices with a b = c^k b a, c = exp(2 pi i / n).

    ``a = gamma diag(c^(kj))`` and ``b`` sends basis vector j to j+1 (mod n);
    ``gamma`` is the principal n-th root of c^(k n (n-1) / 2), so both
    matrices lie in SU(n).
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    c = np.exp(2j * np.pi * k / n)
    target = np.exp(2j * np.pi * k * (n * (n - 1) // 2) / n)
    gamma = np.exp(1j * np.angle(target) / n)
    a = gamma * np.diag(c ** np.arange(n))
    b = gamma * np.roll(np.eye(n), 1, axis=0)
    return a, b


def representation_group_rep(n: int, k: int) -> SesquiRep:
    """Rep of Z_n x Z_n: element (i, j) -> a^i b^j built from almost_commuting_pair(n, k).

    Its class is k times the class of the k = 1 representation.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    G = groups.zn_x_zn(n)
    a, b = almost_commuting_pair(n, k % n)
    ops = []
    for idx in range(G.order):
        i, j = divmod(idx, n)
        ops.append(SesquiOperator(np.linalg.matrix_power(a, i) @ np.linalg.matrix_power(b, j)))
    ops[0] = SesquiOperator(np.eye(n))
    return SesquiRep(G, tuple(ops))
