"""Edge projective representations of symmetric injective MPS.

For a translation-invariant MPS with tensors ``A_i`` (bond dimension D) and
an on-site (anti)unitary symmetry ``u(g)``, injectivity gives

    sum_j u(g)_ij A~_j = e^{i theta_g} W_g A_i W_g^dagger,

with ``A~ = conj(A)`` when ``g`` is antiunitary.  ``W_g`` is read off the
dominant eigenvector of the mixed transfer map in right-canonical gauge.
The right half-chain carries the projective representation
``g -> (W_g^T, p(g))``; its class is the right index.  The left index is
obtained from the spatially reversed tensors ``A_i^T``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.linalg import polar, sqrtm

from .cohomology import CohomologyClass
from .projective import SesquiOperator, SesquiRep, classify, tensor

TOL_INJ = 1e-8
TOL_EDGE = 1e-8


class MPSError(ValueError):
    pass


class NotSymmetricError(MPSError):
    pass


class IndexIdentityError(AssertionError):
    pass


def _transfer(A: np.ndarray, B: Optional[np.ndarray] = None) -> np.ndarray:
    """Matrix of X -> sum_i B_i X A_i^dagger on row-major vec(X)."""
    B = A if B is None else B
    return sum(np.kron(b, a.conj()) for a, b in zip(A, B))


def _dominant(T: np.ndarray):
    w, v = np.linalg.eig(T)
    order = np.argsort(-np.abs(w))
    return w[order], v[:, order]


@dataclass(frozen=True, eq=False)
class MPSTensor:
    """Tensors ``A[j]`` (j over the physical basis), each D x D.

    Rescaled on construction so that the transfer map has spectral radius 1.
    """

    tensors: np.ndarray
    normalize: bool = field(default=True, repr=False)

    def __post_init__(self):
        A = np.array(self.tensors, dtype=complex)
        if A.ndim != 3 or A.shape[1] != A.shape[2]:
            raise MPSError("tensors must have shape (d, D, D)")
        if self.normalize:
            rho = np.abs(np.linalg.eigvals(_transfer(A))).max()
            if rho <= 0:
                raise MPSError("transfer map is nilpotent")
            A = A / np.sqrt(rho)
        A.setflags(write=False)
        object.__setattr__(self, "tensors", A)

    @property
    def phys_dim(self) -> int:
        return self.tensors.shape[0]

    @property
    def bond_dim(self) -> int:
        return self.tensors.shape[1]

    def transfer_matrix(self) -> np.ndarray:
        return _transfer(self.tensors)

    def right_fixed_point(self) -> np.ndarray:
        w, v = _dominant(self.transfer_matrix())
        X = v[:, 0].reshape(self.bond_dim, self.bond_dim)
        X = X / np.trace(X)
        return (X + X.conj().T) / 2

    def injectivity_report(self, tol: float = TOL_INJ) -> tuple[bool, str]:
        w, _ = _dominant(self.transfer_matrix())
        if abs(abs(w[0]) - 1) > tol:
            return False, f"spectral radius {abs(w[0]):.3e} != 1"
        if len(w) > 1 and abs(w[1]) > 1 - tol:
            return False, f"dominant eigenvalue is not unique (|l2| = {abs(w[1]):.6f})"
        lam = np.linalg.eigvalsh(self.right_fixed_point())
        if lam.min() <= tol * lam.max():
            return False, "fixed point is not positive definite"
        return True, "ok"

    def is_injective(self, tol: float = TOL_INJ) -> bool:
        return self.injectivity_report(tol)[0]

    def right_canonical(self) -> "MPSTensor":
        """Gauge with sum_i A_i A_i^dagger = 1."""
        lam = self.right_fixed_point()
        s = sqrtm(lam)
        sinv = np.linalg.inv(s)
        return MPSTensor(np.array([sinv @ a @ s for a in self.tensors]))

    def gauged(self, W: np.ndarray) -> "MPSTensor":
        Winv = np.linalg.inv(W)
        return MPSTensor(np.array([W @ a @ Winv for a in self.tensors]), normalize=False)

    def reversed(self) -> "MPSTensor":
        return MPSTensor(np.array([a.T for a in self.tensors]), normalize=False)

    def blocked(self, k: int = 2) -> "MPSTensor":
        """Group k sites into one; physical index (i_1, ..., i_k) row-major."""
        A = self.tensors
        out = A
        for _ in range(k - 1):
            out = np.einsum("iab,jbc->ijac", out, A).reshape(-1, self.bond_dim, self.bond_dim)
        return MPSTensor(out, normalize=False)

    def to_dict(self) -> dict:
        return {"d": self.phys_dim, "D": self.bond_dim,
                "tensors": [[[z.real, z.imag] for z in a.reshape(-1)] for a in self.tensors]}

    @classmethod
    def from_dict(cls, doc: dict) -> "MPSTensor":
        d, D = int(doc["d"]), int(doc["D"])
        A = np.array([[complex(re, im) for re, im in a] for a in doc["tensors"]]).reshape(d, D, D)
        return cls(A)


def act_on_tensor(op: SesquiOperator, A: np.ndarray) -> np.ndarray:
    """A'_i = sum_j M_ij A~_j for the physical operator (M, conjugates)."""
    src = np.conj(A) if op.conjugates else A
    return np.einsum("ij,jab->iab", op.matrix, src)


@dataclass(frozen=True, eq=False)
class EdgeRep:
    rep: SesquiRep
    phases: tuple  # e^{i theta_g}, complex
    residuals: tuple

    @property
    def max_residual(self) -> float:
        return max(self.residuals)

    def index(self) -> CohomologyClass:
        return classify(self.rep)


def _fix_phase(W: np.ndarray) -> np.ndarray:
    flat = W.reshape(-1)
    k = int(np.flatnonzero(np.abs(flat) > 1e-10)[0])
    return W * (abs(flat[k]) / flat[k])


def _unitary_part(X: np.ndarray) -> np.ndarray:
    U, _ = polar(X)
    return _fix_phase(U)


def _intertwiner_fit(lhs: np.ndarray, W: np.ndarray, A: np.ndarray, Wr: np.ndarray):
    """Best phase z and residual for lhs_i = z W A_i Wr^dagger."""
    rhs = np.einsum("ab,ibc,dc->iad", W, A, Wr.conj())
    z = np.vdot(rhs, lhs) / np.vdot(rhs, rhs)
    z = z / abs(z)
    return z, float(np.abs(lhs - z * rhs).max())


def extract_edge_rep(mps: MPSTensor, sym: SesquiRep, tol: float = TOL_EDGE) -> EdgeRep:
    if sym.dim != mps.phys_dim:
        raise MPSError(f"symmetry acts on dim {sym.dim}, MPS has d = {mps.phys_dim}")
    ok, msg = mps.injectivity_report()
    if not ok:
        raise MPSError(f"MPS is not injective: {msg}")
    A = mps.right_canonical().tensors
    D = A.shape[1]
    ops, phases, resid = [], [], []
    for g, op in enumerate(sym.ops):
        Ap = act_on_tensor(op, A)
        w, v = _dominant(_transfer(A, Ap))
        if abs(abs(w[0]) - 1) > tol:
            raise NotSymmetricError(
                f"state is not invariant under element {g}: mixed spectral radius {abs(w[0]):.3e}")
        if len(w) > 1 and abs(w[1]) > 1 - tol:
            raise MPSError(f"degenerate dominant eigenvector for element {g}")
        W = _unitary_part(v[:, 0].reshape(D, D))
        z, r = _intertwiner_fit(Ap, W, A, W)
        ops.append(SesquiOperator(W.T, op.conjugates))
        phases.append(complex(z))
        resid.append(r)
    if max(resid) > tol:
        raise MPSError(f"intertwiner residual {max(resid):.2e} exceeds {tol}")
    return EdgeRep(SesquiRep(sym.group, tuple(ops)), tuple(phases), tuple(resid))


def right_index(mps: MPSTensor, sym: SesquiRep) -> CohomologyClass:
    return extract_edge_rep(mps, sym).index()


def left_right_indices(mps: MPSTensor, sym: SesquiRep) -> tuple[CohomologyClass, CohomologyClass]:
    sigma_r = right_index(mps, sym)
    sigma_l = right_index(mps.reversed(), sym)
    if not (sigma_l + sigma_r).is_zero():
        raise IndexIdentityError(f"sigma_L + sigma_R = {sigma_l + sigma_r} != 0")
    return sigma_l, sigma_r


def prepend_tensor(site_dim: int, bond_dim: int, gauge: Optional[np.ndarray] = None) -> np.ndarray:
    """B_i = U (e_i (x) 1_D): the new left bond space is site (x) old bond."""
    eye_d = np.eye(site_dim)
    B = np.array([np.kron(eye_d[:, [i]], np.eye(bond_dim)) for i in range(site_dim)])
    if gauge is not None:
        B = np.einsum("ab,ibc->iac", gauge, B)
    return B


def extract_site_edge(B: np.ndarray, site_sym: SesquiRep, right: EdgeRep,
                      tol: float = TOL_EDGE) -> EdgeRep:
    """Edge rep one site further left.

    Solves ``sum_j u_ij B~_j W = z W_x B_i`` for ``W_x`` given the right edge
    operators ``W`` (recovered as the transpose of ``right.rep``).  ``B``
    has shape (d, D_left, D_right) with sum_i B_i B_i^dagger = 1.
    """
    B = np.asarray(B, dtype=complex)
    d, Dl, Dr = B.shape
    if site_sym.dim != d:
        raise MPSError("site symmetry dimension does not match the site tensor")
    stack = np.concatenate(list(B), axis=1)  # Dl x (d*Dr)
    if np.linalg.matrix_rank(stack) < Dl:
        raise MPSError("site tensor is not injective on its left bond")
    pinv = np.linalg.pinv(stack)
    ops, phases, resid = [], [], []
    for g, op in enumerate(site_sym.ops):
        W = right.rep[g].matrix.T
        Bp = act_on_tensor(op, B)
        lhs = np.concatenate([b @ W for b in Bp], axis=1)
        Wx = _unitary_part(lhs @ pinv)
        # lhs = z Wx stack  <=>  Bp_i = z Wx B_i W^dagger
        z, r = _intertwiner_fit(Bp, Wx, B, W)
        ops.append(SesquiOperator(Wx.T, op.conjugates))
        phases.append(complex(z))
        resid.append(r)
    if max(resid) > tol:
        raise NotSymmetricError(f"site tensor is not symmetric (residual {max(resid):.2e})")
    return EdgeRep(SesquiRep(site_sym.group, tuple(ops)), tuple(phases), tuple(resid))


@dataclass(frozen=True)
class MainIdentityReport:
    ok: bool
    site_class: CohomologyClass
    chain_index: CohomologyClass
    prepended_index: CohomologyClass
    residual: float


def verify_main_identity(mps: MPSTensor, sym: SesquiRep, site_rep: SesquiRep,
                         gauge: Optional[np.ndarray] = None) -> MainIdentityReport:
    """Check sigma_R(site + chain) = c(site) + sigma_R(chain)."""
    right = extract_edge_rep(mps, sym)
    B = prepend_tensor(site_rep.dim, mps.bond_dim, gauge)
    edge = extract_site_edge(B, site_rep, right)
    c = classify(site_rep)
    s1 = right.index()
    s0 = edge.index()
    return MainIdentityReport(s0 == c + s1, c, s1, s0, edge.max_residual)


# ---------------------------------------------------------------------------
# example states

def product_state(vec) -> MPSTensor:
    v = np.asarray(vec, dtype=complex)
    return MPSTensor(v.reshape(-1, 1, 1) / np.linalg.norm(v))


def aklt() -> MPSTensor:
    """Spin-1 AKLT tensor in the basis m = +1, 0, -1."""
    sp = np.array([[0, 1], [0, 0]], dtype=complex)
    sz = np.diag([1.0, -1.0]).astype(complex)
    A = np.array([np.sqrt(2 / 3) * sp, -np.sqrt(1 / 3) * sz, -np.sqrt(2 / 3) * sp.T])
    return MPSTensor(A)


def conjugate_rep(rep: SesquiRep) -> SesquiRep:
    return SesquiRep(rep.group, tuple(SesquiOperator(np.conj(op.matrix), op.conjugates)
                                      for op in rep.ops))


def dimer_spt(edge: SesquiRep) -> tuple[MPSTensor, SesquiRep]:
    """Fixed-point SPT state whose right index is the class of ``edge``.

    Each site carries a pair (l, r) of D-level spins; r of one site and l of
    the next form a maximally entangled pair.  The on-site symmetry is
    V (x) conj(V), which is a linear representation.
    """
    if edge.group.has_antiunitary():
        raise MPSError("dimer construction is implemented for unitary groups only")
    D = edge.dim
    A = np.zeros((D * D, D, D), dtype=complex)
    for a in range(D):
        for b in range(D):
            A[a * D + b, a, b] = 1.0
    return MPSTensor(A), tensor(edge, conjugate_rep(edge))
