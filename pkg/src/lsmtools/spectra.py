"""Exact diagonalization on finite chains.

Basis states are mixed-radix integers with site 0 most significant; digit
``k`` on a spin-S site is the S3 eigenstate ``m = S - k``.  Hamiltonians are
sums of dense local terms on windows of sites.  When every term conserves
the total S3 the spectrum is computed block by block.

The twist is ``U = exp(-i sum_{x=-l}^{l} ((x+l)/l) pi S3_{c+x})`` and the
reflection-rotation ``R~`` maps site ``c+x`` to ``c-x`` followed by
``exp(-i pi S1)`` on every site.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.linalg import expm
from scipy.sparse.linalg import eigsh

from .projective import SesquiRep, adjoint_action, spin_matrices, spin_rep_time_reversal, spin_rep_z2xz2, tensor

TOL_EIG = 1e-8
TOL_DEG = 1e-9
TOL_EXP = 1e-10
TOL_SYM = 1e-12
DIM_CAP = 2_000_000
DENSE_MAX = 1500
SEED = 1234


class HamiltonianError(ValueError):
    pass


class SpectrumError(RuntimeError):
    pass


@dataclass(frozen=True)
class Term:
    sites: tuple
    matrix: np.ndarray


@dataclass(frozen=True, eq=False)
class ChainHamiltonian:
    two_s: tuple
    terms: tuple
    boundary: str = "open"

    def __post_init__(self):
        if self.boundary not in ("open", "periodic"):
            raise HamiltonianError(f"unknown boundary {self.boundary!r}")
        two_s = tuple(int(t) for t in self.two_s)
        object.__setattr__(self, "two_s", two_s)
        L = len(two_s)
        clean = []
        for t in self.terms:
            sites = tuple(int(s) for s in t.sites)
            if any(s < 0 or s >= L for s in sites) or len(set(sites)) != len(sites):
                raise HamiltonianError(f"bad term support {sites}")
            dim = math.prod(two_s[s] + 1 for s in sites)
            m = np.asarray(t.matrix, dtype=complex)
            if m.shape != (dim, dim):
                raise HamiltonianError(f"term on {sites} has shape {m.shape}, expected {dim}")
            if np.abs(m - m.conj().T).max() > TOL_SYM:
                raise HamiltonianError(f"term on {sites} is not Hermitian")
            clean.append(Term(sites, m))
        object.__setattr__(self, "terms", tuple(clean))

    @property
    def L(self) -> int:
        return len(self.two_s)

    @property
    def dims(self) -> np.ndarray:
        return np.array([t + 1 for t in self.two_s])

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims, dtype=np.int64))

    @property
    def bound(self) -> float:
        """Largest operator norm among the local terms."""
        return max((np.linalg.norm(t.matrix, 2) for t in self.terms), default=0.0)

    @property
    def range(self) -> int:
        return max((len(t.sites) for t in self.terms), default=0)

    @cached_property
    def strides(self) -> np.ndarray:
        d = self.dims
        return np.concatenate([np.cumprod(d[::-1])[::-1][1:], [1]]).astype(np.int64)

    @cached_property
    def m_values(self) -> list:
        """Twice the S3 eigenvalue per digit, per site."""
        return [t - 2 * np.arange(t + 1) for t in self.two_s]

    def digits(self, idx: np.ndarray) -> np.ndarray:
        idx = np.asarray(idx, dtype=np.int64)
        return (idx[:, None] // self.strides[None, :]) % self.dims[None, :]

    def twice_sz(self, idx: np.ndarray) -> np.ndarray:
        dg = self.digits(idx)
        return np.sum(np.array(self.two_s)[None, :] - 2 * dg, axis=1)

    def conserves_sz(self, tol: float = TOL_SYM) -> bool:
        for t in self.terms:
            sz = local_sz([self.two_s[s] for s in t.sites])
            if np.abs(t.matrix @ sz - sz @ t.matrix).max() > tol:
                return False
        return True

    def sectors(self) -> list:
        tot = sum(self.two_s)
        return list(range(-tot, tot + 1, 2))

    def basis(self, sector: Optional[int] = None) -> np.ndarray:
        if self.dim > DIM_CAP:
            raise HamiltonianError(f"Hilbert dimension {self.dim} exceeds cap {DIM_CAP}")
        idx = np.arange(self.dim, dtype=np.int64)
        if sector is None:
            return idx
        return idx[self.twice_sz(idx) == sector]

    def matrix(self, sector: Optional[int] = None) -> sp.csr_matrix:
        """Sparse H on the full space or on one 2*Sz block."""
        basis = self.basis(sector)
        n = len(basis)
        if n == 0:
            return sp.csr_matrix((0, 0))
        dg = self.digits(basis)
        rows, cols, vals = [], [], []
        for t in self.terms:
            s = np.array(t.sites)
            ld = self.dims[s]
            lstr = np.concatenate([np.cumprod(ld[::-1])[::-1][1:], [1]])
            loc = dg[:, s] @ lstr
            base = basis - dg[:, s] @ self.strides[s]
            nz_out, nz_in = np.nonzero(np.abs(t.matrix) > 0)
            for a in np.unique(nz_in):
                sel = np.flatnonzero(loc == a)
                if not len(sel):
                    continue
                for b in nz_out[nz_in == a]:
                    bd = (b // lstr) % ld
                    new = base[sel] + bd @ self.strides[s]
                    rows.append(new)
                    cols.append(sel)
                    vals.append(np.full(len(sel), t.matrix[b, a]))
        if not rows:
            return sp.csr_matrix((n, n), dtype=complex)
        r = np.concatenate(rows)
        c = np.concatenate(cols)
        v = np.concatenate(vals)
        if sector is not None:
            pos = np.searchsorted(basis, r)
            pos = np.minimum(pos, n - 1)
            if np.any(basis[pos] != r):
                raise HamiltonianError("a term leaves the requested Sz sector")
            r = pos
        H = sp.csr_matrix((v, (r, c)), shape=(n, n))
        H.sum_duplicates()
        if np.all(np.abs(H.data.imag) == 0):
            H = H.real.tocsr()
        return H

    def to_dict(self) -> dict:
        return {"two_s": list(self.two_s), "boundary": self.boundary,
                "terms": [{"sites": list(t.sites),
                           "matrix": [[[z.real, z.imag] for z in row] for row in t.matrix]}
                          for t in self.terms]}


def local_sz(two_s: Sequence[int]) -> np.ndarray:
    out = np.zeros((1, 1))
    for t in two_s:
        d = t + 1
        out = np.kron(out, np.eye(d)) + np.kron(np.eye(out.shape[0]), spin_matrices(t)[2].real)
    return out


def _bonds(L: int, boundary: str) -> list:
    n = L if boundary == "periodic" and L > 2 else L - 1
    return [(x, (x + 1) % L) for x in range(n)]


def _couplings(J, n: int) -> np.ndarray:
    J = np.atleast_1d(np.asarray(J, dtype=float))
    if J.size == 1:
        J = np.full(n, J[0])
    if J.size != n:
        raise HamiltonianError(f"expected {n} couplings, got {J.size}")
    return J


def _two_site(ta: int, tb: int, which=(0, 1, 2)) -> np.ndarray:
    Sa, Sb = spin_matrices(ta), spin_matrices(tb)
    return sum(np.kron(Sa[k], Sb[k]) for k in which)


def build_heisenberg(spins: Sequence[int], couplings=1.0, boundary: str = "open") -> ChainHamiltonian:
    """h_x = J_x S_x . S_{x+1}; ``spins`` are 2S per site."""
    L = len(spins)
    if L < 2:
        raise HamiltonianError("need at least two sites")
    bonds = _bonds(L, boundary)
    J = _couplings(couplings, len(bonds))
    terms = [Term((a, b), j * _two_site(spins[a], spins[b])) for (a, b), j in zip(bonds, J)]
    return ChainHamiltonian(tuple(spins), tuple(terms), boundary)


def build_xx(spins: Sequence[int], couplings=1.0, boundary: str = "open") -> ChainHamiltonian:
    """h_x = J_x (S1_x S1_{x+1} + S2_x S2_{x+1})."""
    L = len(spins)
    bonds = _bonds(L, boundary)
    J = _couplings(couplings, len(bonds))
    terms = [Term((a, b), j * _two_site(spins[a], spins[b], (0, 1))) for (a, b), j in zip(bonds, J)]
    return ChainHamiltonian(tuple(spins), tuple(terms), boundary)


def heisenberg_family(two_s: int, boundary: str = "periodic", J: float = 1.0) -> Callable:
    return lambda L: build_heisenberg([two_s] * L, J, boundary)


# ---------------------------------------------------------------------------
# symmetry checks

def site_rep_check(h: ChainHamiltonian, site_rep: Callable[[int], SesquiRep]) -> float:
    """max over terms and g of |Xi(g)(h_x) - h_x| for on-site reps."""
    worst = 0.0
    for t in h.terms:
        rep = site_rep(h.two_s[t.sites[0]])
        for s in t.sites[1:]:
            rep = tensor(rep, site_rep(h.two_s[s]))
        for g in range(rep.group.order):
            worst = max(worst, float(np.abs(adjoint_action(rep, g, t.matrix) - t.matrix).max()))
    return worst


def z2xz2_error(h: ChainHamiltonian) -> float:
    return site_rep_check(h, spin_rep_z2xz2)


def time_reversal_error(h: ChainHamiltonian) -> float:
    return site_rep_check(h, spin_rep_time_reversal)


def u1_error(h: ChainHamiltonian) -> float:
    worst = 0.0
    for t in h.terms:
        sz = local_sz([h.two_s[s] for s in t.sites])
        worst = max(worst, float(np.abs(t.matrix @ sz - sz @ t.matrix).max()))
    return worst


@dataclass(frozen=True)
class Monomial:
    """Operator v -> phase * v[perm^-1]: basis state i goes to perm[i] with phase[i]."""

    perm: np.ndarray
    phase: np.ndarray

    def apply(self, v: np.ndarray) -> np.ndarray:
        out = np.empty_like(v, dtype=complex)
        out[self.perm] = self.phase.reshape((-1,) + (1,) * (v.ndim - 1)) * v
        return out

    def to_sparse(self) -> sp.csr_matrix:
        n = len(self.perm)
        return sp.csr_matrix((self.phase, (self.perm, np.arange(n))), shape=(n, n))


def reflect_site(h: ChainHamiltonian, center: float, x: int) -> int:
    y = 2 * center - x
    if abs(y - round(y)) > 1e-12:
        raise HamiltonianError("2*center must be an integer")
    y = int(round(y))
    if h.boundary == "periodic":
        return y % h.L
    if not 0 <= y < h.L:
        raise HamiltonianError(f"reflection of site {x} about {center} leaves the chain")
    return y


def reflection_rotation(h: ChainHamiltonian, center: Optional[float] = None) -> Monomial:
    """R~: site reflection about ``center`` composed with exp(-i pi S1) per site."""
    L = h.L
    center = (L - 1) / 2 if center is None else center
    target = [reflect_site(h, center, x) for x in range(L)]
    if sorted(target) != list(range(L)):
        raise HamiltonianError("reflection is not a bijection of the sites")
    if any(h.two_s[x] != h.two_s[target[x]] for x in range(L)):
        raise HamiltonianError("spin profile is not reflection symmetric")
    local = []
    for t in sorted(set(h.two_s)):
        r = expm(-1j * np.pi * spin_matrices(t)[0])
        out = np.argmax(np.abs(r), axis=0)
        ph = r[out, np.arange(t + 1)]
        if not np.allclose(np.abs(ph), 1, atol=1e-12):
            raise HamiltonianError("exp(-i pi S1) is expected to be monomial")
        local.append((t, out, ph))
    lmap = {t: (o, p) for t, o, p in local}
    idx = np.arange(h.dim, dtype=np.int64)
    dg = h.digits(idx)
    new = np.zeros(h.dim, dtype=np.int64)
    phase = np.ones(h.dim, dtype=complex)
    for x in range(L):
        o, p = lmap[h.two_s[x]]
        new += o[dg[:, x]] * h.strides[target[x]]
        phase *= p[dg[:, x]]
    return Monomial(new, phase)


def reflection_error(h: ChainHamiltonian, center: Optional[float] = None) -> float:
    R = reflection_rotation(h, center).to_sparse()
    H = h.matrix()
    D = (R @ H @ R.conj().T - H)
    return float(np.abs(D.data).max()) if D.nnz else 0.0


# ---------------------------------------------------------------------------
# spectra

@dataclass
class SpectrumResult:
    eigenvalues: np.ndarray
    multiplicities: list
    gap: float
    gap_resolved: bool
    residual: float
    sectors: np.ndarray = field(repr=False, default=None)
    vectors: Optional[np.ndarray] = field(repr=False, default=None)

    @property
    def levels(self) -> list:
        out, i = [], 0
        for m in self.multiplicities:
            out.append(float(self.eigenvalues[i]))
            i += m
        return out

    def ground_space(self) -> np.ndarray:
        if self.vectors is None:
            raise SpectrumError("eigenvectors were not requested")
        return self.vectors[:, :self.multiplicities[0]]

    def to_dict(self) -> dict:
        return {"eigenvalues": self.eigenvalues.tolist(), "multiplicities": self.multiplicities,
                "gap": self.gap, "gap_resolved": self.gap_resolved, "residual": self.residual}


def cluster(values: np.ndarray, tol: float = TOL_DEG) -> list:
    mult = []
    for i, e in enumerate(values):
        if mult and abs(e - values[i - 1]) <= tol * max(1.0, abs(e)):
            mult[-1] += 1
        else:
            mult.append(1)
    return mult


def _block_eigs(H, k: int, want_vectors: bool):
    n = H.shape[0]
    k = min(k, n)
    if n <= DENSE_MAX or k >= n - 1:
        w, v = np.linalg.eigh(H.toarray())
        return w[:k], v[:, :k]
    rng = np.random.default_rng(SEED)
    v0 = rng.standard_normal(n)
    try:
        w, v = eigsh(H, k=k, which="SA", v0=v0, tol=1e-12, maxiter=20000)
    except Exception as exc:  # ArpackNoConvergence and friends
        raise SpectrumError(f"sparse eigensolver failed: {exc}") from exc
    order = np.argsort(w)
    return w[order], v[:, order]


def lowest_spectrum(h: ChainHamiltonian, k: int = 4, vectors: bool = False,
                    sectors: Optional[Sequence[int]] = None, tol_deg: float = TOL_DEG,
                    use_blocks: Optional[bool] = None) -> SpectrumResult:
    """k lowest eigenpairs, block by block in 2*Sz when H conserves it."""
    if h.dim > DIM_CAP:
        raise HamiltonianError(f"Hilbert dimension {h.dim} exceeds cap {DIM_CAP}")
    blocks = h.conserves_sz() if use_blocks is None else use_blocks
    if sectors is not None and not blocks:
        raise HamiltonianError("sector selection needs an Sz-conserving Hamiltonian")
    todo = (sectors if sectors is not None else h.sectors()) if blocks else [None]
    ws, vs, tags, res = [], [], [], 0.0
    for sec in todo:
        H = h.matrix(sec)
        if H.shape[0] == 0:
            continue
        w, v = _block_eigs(H, k, vectors)
        r = np.abs(H @ v - v * w[None, :]).max() if len(w) else 0.0
        res = max(res, float(r))
        ws.append(w)
        tags.append(np.full(len(w), np.nan if sec is None else sec))
        if vectors:
            if sec is None:
                vs.append(v)
            else:
                full = np.zeros((h.dim, v.shape[1]), dtype=v.dtype)
                full[h.basis(sec)] = v
                vs.append(full)
    w = np.concatenate(ws)
    order = np.argsort(w, kind="stable")[:k]
    scale = max(1.0, h.bound)
    if res > TOL_EIG * scale:
        raise SpectrumError(f"eigen residual {res:.2e} above {TOL_EIG}")
    evals = w[order]
    mult = cluster(evals, tol_deg)
    if len(mult) > 1:
        gap, resolved = float(evals[mult[0]] - evals[0]), True
    else:
        gap, resolved = float(evals[-1] - evals[0]) if len(evals) > 1 else 0.0, False
    vec = np.concatenate(vs, axis=1)[:, order] if vectors else None
    return SpectrumResult(evals, mult, gap, resolved, res, np.concatenate(tags)[order], vec)


def dense_spectrum(h: ChainHamiltonian) -> np.ndarray:
    return np.linalg.eigvalsh(h.matrix().toarray())


@dataclass
class GapScan:
    Ls: list
    gaps: list
    alpha: Optional[float]
    prefactor: Optional[float]

    def to_dict(self) -> dict:
        return {"table": [[L, g] for L, g in zip(self.Ls, self.gaps)],
                "alpha": self.alpha, "prefactor": self.prefactor}


def gap_scan(family: Callable[[int], ChainHamiltonian], Ls: Sequence[int], k: int = 2,
             **kw) -> GapScan:
    """Gaps for each L plus a least-squares fit gap ~ A L^(-alpha)."""
    gaps = []
    for L in Ls:
        s = lowest_spectrum(family(L), k=k, **kw)
        # widen the search once if the ground cluster swallowed all k levels
        if not s.gap_resolved and k < family(L).dim:
            s = lowest_spectrum(family(L), k=4 * k, **kw)
        gaps.append(s.gap if s.gap_resolved or s.gap > TOL_DEG else 0.0)
    g = np.array(gaps)
    if len(Ls) >= 2 and np.all(g > 0):
        slope, icpt = np.polyfit(np.log(Ls), np.log(g), 1)
        alpha, pref = float(-slope), float(np.exp(icpt))
    else:
        alpha = pref = None
    return GapScan(list(Ls), [float(x) for x in gaps], alpha, pref)


# ---------------------------------------------------------------------------
# twist operator

@dataclass(frozen=True)
class TwistData:
    ell: int
    center: int
    diagonal: np.ndarray = field(repr=False)

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.diagonal.reshape((-1,) + (1,) * (v.ndim - 1)) * v

    def unitarity_error(self) -> float:
        return float(np.abs(np.abs(self.diagonal) - 1).max())


def twist_window(h: ChainHamiltonian, ell: int, center: int) -> list:
    if ell < 1:
        raise HamiltonianError("ell must be positive")
    sites = []
    for x in range(-ell, ell + 1):
        y = center + x
        if h.boundary == "periodic":
            if 2 * ell + 1 > h.L:
                raise HamiltonianError("twist window wraps onto itself")
            y %= h.L
        elif not 0 <= y < h.L:
            raise HamiltonianError(f"twist window [{center - ell}, {center + ell}] leaves the chain")
        sites.append((x, y))
    return sites


def twist_operator(h: ChainHamiltonian, ell: int, center: int) -> TwistData:
    idx = np.arange(h.dim, dtype=np.int64)
    dg = h.digits(idx)
    angle = np.zeros(h.dim)
    for x, y in twist_window(h, ell, center):
        m = h.m_values[y][dg[:, y]] / 2
        angle += (x + ell) / ell * np.pi * m
    return TwistData(ell, center, np.exp(-1j * angle))


def twist_identity_error(h: ChainHamiltonian, ell: int, center: int) -> float:
    """max |R~ U R~^dagger - exp(2 pi i S3_center) U| over all entries.

    R~ is monomial and U diagonal, so R~ U R~^dagger is diagonal with
    entries U[perm^-1]; off-diagonal entries vanish identically.
    """
    U = twist_operator(h, ell, center).diagonal
    R = reflection_rotation(h, center)
    conj = np.empty_like(U)
    conj[R.perm] = U
    sign = (-1) ** h.two_s[center]
    return float(np.abs(conj - sign * U).max())


def twist_identity_error_dense(h: ChainHamiltonian, ell: int, center: int) -> float:
    """Same identity by explicit matrix products; for small chains."""
    U = np.diag(twist_operator(h, ell, center).diagonal)
    R = reflection_rotation(h, center).to_sparse().toarray()
    S3c = np.zeros(h.dim)
    dg = h.digits(np.arange(h.dim))
    S3c = h.m_values[center][dg[:, center]] / 2
    lhs = R @ U @ R.conj().T
    rhs = np.diag(np.exp(2j * np.pi * S3c)) @ U
    return float(np.abs(lhs - rhs).max())


@dataclass
class TwistEnergyReport:
    ells: list
    delta_e: list
    C: float
    bound_holds: bool
    monotone_within: bool
    variational_ok: bool
    tolerance: float

    @property
    def scaled(self) -> list:
        return [l * e for l, e in zip(self.ells, self.delta_e)]

    def to_dict(self) -> dict:
        return {"table": [[l, e, l * e] for l, e in zip(self.ells, self.delta_e)], "C": self.C,
                "bound_holds": self.bound_holds, "monotone_within": self.monotone_within,
                "variational_ok": self.variational_ok, "tolerance": self.tolerance}


def twist_energy(h: ChainHamiltonian, psi: np.ndarray, ell: int, center: int,
                 H: Optional[sp.spmatrix] = None) -> float:
    H = h.matrix() if H is None else H
    U = twist_operator(h, ell, center)
    up = U.apply(psi)
    e1 = np.vdot(up, H @ up).real
    e0 = np.vdot(psi, H @ psi).real
    return float(e1 - e0) / float(np.vdot(psi, psi).real)


def twist_energy_check(h: ChainHamiltonian, psi0: np.ndarray, ells: Sequence[int],
                       center: Optional[int] = None, tol: float = 0.10) -> TwistEnergyReport:
    """Delta E(l) for each l, with C fitted at the smallest l.

    ``bound_holds``: l * dE(l) <= C (1 + tol) for all l.
    ``monotone_within``: l * dE(l) <= (1 + tol) (l' dE(l')) for consecutive l' < l.
    """
    if u1_error(h) > TOL_SYM:
        raise HamiltonianError("twist check needs a U(1)-invariant Hamiltonian")
    center = h.L // 2 if center is None else center
    ells = sorted(int(l) for l in ells)
    H = h.matrix()
    de = [twist_energy(h, psi0, l, center, H) for l in ells]
    scaled = [l * e for l, e in zip(ells, de)]
    C = scaled[0]
    bound = all(s <= C * (1 + tol) + 1e-12 for s in scaled)
    mono = all(b <= a * (1 + tol) + 1e-12 for a, b in zip(scaled, scaled[1:]))
    return TwistEnergyReport(ells, de, C, bound, mono, min(de) >= -1e-12, tol)


@dataclass
class TwistExpectation:
    value: complex
    half_odd_center: bool
    constrained: bool
    ok: bool
    rtilde_eigenvalue: complex
    ground_degeneracy: int

    def to_dict(self) -> dict:
        return {"value": [self.value.real, self.value.imag], "abs": abs(self.value),
                "half_odd_center": self.half_odd_center, "constrained": self.constrained,
                "ok": self.ok, "rtilde_eigenvalue": [self.rtilde_eigenvalue.real,
                                                     self.rtilde_eigenvalue.imag],
                "ground_degeneracy": self.ground_degeneracy}


def twist_expectation_check(h: ChainHamiltonian, ell: int, center: Optional[int] = None,
                            psi: Optional[np.ndarray] = None, tol: float = TOL_EXP,
                            k: int = 6) -> TwistExpectation:
    """<psi0|U_l|psi0> for an R~-eigenvector psi0 in the ground cluster.

    When the center spin is half-odd-integral, R~ U R~^dagger = -U forces the
    value to vanish; ``ok`` records whether |value| <= tol in that case.
    A supplied ``psi`` must itself be an R~ eigenvector.
    """
    center = (h.L - 1) // 2 if center is None else center
    if reflection_error(h, center) > TOL_SYM:
        raise HamiltonianError("Hamiltonian is not invariant under R~")
    R = reflection_rotation(h, center)
    if psi is not None:
        psi = np.asarray(psi, dtype=complex)
        psi = psi / np.linalg.norm(psi)
        Rpsi = R.apply(psi)
        lam = np.vdot(psi, Rpsi)
        if np.abs(Rpsi - lam * psi).max() > 1e-8:
            raise HamiltonianError("state is not an R~ eigenvector")
        deg = 1
    else:
        s = lowest_spectrum(h, k=k, vectors=True)
        Q = s.ground_space()
        deg = Q.shape[1]
        Rq = Q.conj().T @ R.apply(Q)
        w, v = np.linalg.eig(Rq)
        order = np.lexsort((np.round(np.angle(w), 9),))
        j = order[0]
        psi = Q @ v[:, j]
        psi = psi / np.linalg.norm(psi)
        lam = w[j]
    U = twist_operator(h, ell, center)
    val = complex(np.vdot(psi, U.apply(psi)))
    half = h.two_s[center] % 2 == 1
    ok = abs(val) <= tol if half else True
    return TwistExpectation(val, half, half, ok, complex(lam), deg)


# ---------------------------------------------------------------------------
# ingestion

def hamiltonian_from_dict(doc: dict) -> ChainHamiltonian:
    """``{model, L, two_s | spins, J, boundary}`` or ``{spins, terms, boundary}``."""
    try:
        boundary = doc.get("boundary", "open")
        if "spins" in doc or isinstance(doc.get("two_s"), list):
            spins = [int(s) for s in doc.get("spins", doc.get("two_s"))]
        else:
            spins = [int(doc.get("two_s", 1))] * int(doc["L"])
        model = doc.get("model")
        if model is not None:
            J = doc.get("J", 1.0)
            if model == "heisenberg":
                return build_heisenberg(spins, J, boundary)
            if model == "xx":
                return build_xx(spins, J, boundary)
            raise HamiltonianError(f"unknown model {model!r}")
        terms = []
        for t in doc["terms"]:
            m = np.array([[complex(re, im) for re, im in row] for row in t["matrix"]])
            terms.append(Term(tuple(t["sites"]), m))
        return ChainHamiltonian(tuple(spins), tuple(terms), boundary)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, HamiltonianError):
            raise
        raise HamiltonianError(f"malformed Hamiltonian spec: {exc}") from exc


def load_hamiltonian(path) -> ChainHamiltonian:
    return hamiltonian_from_dict(json.loads(Path(path).read_text()))
