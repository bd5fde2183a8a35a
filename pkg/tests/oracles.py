"""Independent reference computations used by the tests.

Nothing here calls the Smith-form or transfer-matrix code paths; the
oracles work by enumeration or by closed-form solutions.
"""
from __future__ import annotations

import itertools

import numpy as np

from lsmtools.groups import GradedGroup


def _coboundaries(g: GradedGroup, psi: np.ndarray, mod: int) -> np.ndarray:
    n, k = g.order, g.order - 1
    P = np.zeros((len(psi), n), dtype=np.int64)
    P[:, 1:] = psi
    out = np.zeros((len(psi), k, k), dtype=np.int64)
    p, m = g.parity, g.mult
    for a in range(1, n):
        for b in range(1, n):
            out[:, a - 1, b - 1] = (P[:, a] + p[a] * P[:, b] - P[:, m[a, b]]) % mod
    return out.reshape(len(psi), -1)


def brute_force_counts(g: GradedGroup, N: int) -> tuple[int, int]:
    """(|H^2(G, Z_N)|, number of U(1) classes with Z_N representatives).

    All normalized Z_N 2-cochains are enumerated and filtered by the twisted
    cocycle condition.  The first count quotients by Z_N coboundaries.  The
    second quotients by coboundaries of real 1-cochains; those are sampled on
    the grid 1/(4 N |G|), fine enough to contain every coboundary that lands
    on the 1/N grid for the orders used here.
    """
    n, k = g.order, g.order - 1
    if k == 0:
        return 1, 1
    p, m = g.parity, g.mult
    vals = np.array(list(itertools.product(range(N), repeat=k * k)), dtype=np.int64)
    T = np.zeros((len(vals), n, n), dtype=np.int64)
    T[:, 1:, 1:] = vals.reshape(-1, k, k)
    ok = np.ones(len(vals), dtype=bool)
    for f, a, b in itertools.product(range(n), repeat=3):
        ok &= (p[f] * T[:, a, b] - T[:, m[f, a], b] + T[:, f, m[a, b]] - T[:, f, a]) % N == 0
    n_cocycles = int(ok.sum())
    psi = np.array(list(itertools.product(range(N), repeat=k)), dtype=np.int64)
    n_zn_cob = len({tuple(r) for r in _coboundaries(g, psi, N)})
    M = 4 * N * n
    psi = np.array(list(itertools.product(range(M), repeat=k)), dtype=np.int64)
    c = _coboundaries(g, psi, M)
    on_grid = np.all((c * N) % M == 0, axis=1)
    n_u1_cob = len({tuple(r) for r in (c[on_grid] * N) // M})
    return n_cocycles // n_zn_cob, n_cocycles // n_u1_cob


def intertwiner(A: np.ndarray, Ap: np.ndarray) -> np.ndarray:
    """Solve Ap_i W = z W A_i for W by a small eigenproblem.

    Stack the linear maps W -> W A_i (P) and W -> Ap_i W (Q) on vec(W) and
    solve pinv(P) Q w = z w; the eigenvector with the smallest residual wins.
    """
    D = A.shape[1]
    eye = np.eye(D)
    # row-major vec: vec(X B) = (1 (x) B^T) vec X, vec(B X) = (B (x) 1) vec X
    P = np.vstack([np.kron(eye, a.T) for a in A])
    Q = np.vstack([np.kron(b, eye) for b in Ap])
    w, v = np.linalg.eig(np.linalg.pinv(P) @ Q)
    best, res = None, np.inf
    for j in range(len(w)):
        r = np.linalg.norm(Q @ v[:, j] - w[j] * P @ v[:, j])
        if r < res:
            best, res = v[:, j], r
    W = best.reshape(D, D)
    return W / np.sqrt(abs(np.linalg.det(W)))


def aklt_edge_sign_z2xz2(A: np.ndarray, site_ops) -> int:
    """Commutation sign of the edge operators of a1 and a2 (-1: class 1)."""
    Ws = []
    for u in site_ops:
        Ap = np.einsum("ij,jab->iab", u, A)
        Ws.append(intertwiner(A, Ap).T)
    x, y = Ws
    s = x @ y @ np.linalg.inv(y @ x)
    return int(np.round(np.trace(s).real / len(s)))


def aklt_edge_kramers_sign(A: np.ndarray, u: np.ndarray) -> int:
    """V = (W^T, K); returns the sign of V^2 = W^T conj(W^T) (-1: class 1)."""
    Ap = np.einsum("ij,jab->iab", u, np.conj(A))
    V = intertwiner(A, Ap).T
    sq = V @ np.conj(V)
    return int(np.round(np.trace(sq).real / len(sq)))


def xx_twist_energy(L: int, thetas: np.ndarray, J: float = 1.0) -> float:
    """Free-fermion Delta E for exp(-i sum theta_x S3_x) on the open XX chain.

    Jordan-Wigner maps h = J sum (S1 S1 + S2 S2) to hopping (J/2) sum
    (c_x^+ c_{x+1} + h.c.).  The twist multiplies each hop by
    exp(i (theta_x - theta_{x+1})), so Delta E = J sum (cos(dtheta) - 1) G,
    with G the nearest-neighbour correlator of the filled Fermi sea.
    """
    t = np.zeros((L, L))
    for x in range(L - 1):
        t[x, x + 1] = t[x + 1, x] = J / 2
    e, phi = np.linalg.eigh(t)
    occ = phi[:, e < -1e-12]
    G = occ @ occ.T
    dth = thetas[:-1] - thetas[1:]
    return float(np.sum(J * (np.cos(dth) - 1) * np.diag(G, 1)))


def xx_ground_energy(L: int, J: float = 1.0) -> float:
    e = np.linalg.eigvalsh(np.diag(np.full(L - 1, J / 2), 1) + np.diag(np.full(L - 1, J / 2), -1))
    return float(e[e < 0].sum())
