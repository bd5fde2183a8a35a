"""Twisted second cohomology H^2(G, U(1)_p) of a finite graded group.

Phases are handled additively as exact rationals mod 1: a U(1) value
``exp(2 pi i t)`` is stored as the :class:`fractions.Fraction` ``t`` in
[0, 1).  The twisted action is ``g . t = p(g) t``.

The class group is computed through the Bockstein isomorphism
H^2(G, U(1)_p) = H^3(G, Z_p), valid for finite G because twisted real
cohomology vanishes in positive degree.  H^3 is the torsion of the cokernel
of the integral coboundary ``d2`` on normalized cochains, read off from its
Smith normal form.  A rational 2-cocycle ``t`` is mapped to coordinates by
lifting it to Q, pushing it through ``d2`` (the result is an integral
3-cocycle) and reducing in the Smith basis.  Working over Q avoids the
spurious classes that appear when U(1) is replaced by Z_N and coboundaries
are taken only from Z_N-valued 1-cochains (e.g. H^2(Z_n, Z_n) = Z_n while
H^2(Z_n, U(1)) = 0).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterator, Optional, Sequence

import numpy as np

from .groups import GradedGroup, ValidationReport
from .snf import smith_normal_form


class CohomologyError(ValueError):
    pass


def phase(num: int, den: int = 1) -> Fraction:
    """Rotation number num/den reduced into [0, 1)."""
    if den <= 0:
        raise ValueError("denominator must be positive")
    return Fraction(num, den) % 1


def phase_to_complex(t: Fraction) -> complex:
    return complex(np.exp(2j * np.pi * float(t)))


def _lcm(values) -> int:
    return reduce(math.lcm, values, 1)


# ---------------------------------------------------------------------------
# normalized cochain bookkeeping

def _nonid(n: int) -> np.ndarray:
    return np.arange(1, n)


def coboundary_matrix_1(g: GradedGroup) -> np.ndarray:
    """Integer matrix of d1: C^1 -> C^2 on normalized cochains.

    (d1 b)(g, h) = b(g) + p(g) b(h) - b(gh); rows index pairs, columns
    non-identity elements.
    """
    n = g.order
    k = n - 1
    D = np.zeros((k * k, k), dtype=np.int64)
    for a, x in enumerate(_nonid(n)):
        for b, y in enumerate(_nonid(n)):
            r = a * k + b
            D[r, x - 1] += 1
            D[r, y - 1] += g.parity[x]
            xy = g.mult[x, y]
            if xy:
                D[r, xy - 1] -= 1
    return D


def coboundary_matrix_2(g: GradedGroup) -> np.ndarray:
    """Integer matrix of d2: C^2 -> C^3 on normalized cochains.

    (d2 t)(f, g, h) = p(f) t(g, h) - t(fg, h) + t(f, gh) - t(f, g).
    """
    n = g.order
    k = n - 1
    D = np.zeros((k ** 3, k * k), dtype=np.int64)
    m = g.mult
    for a, f in enumerate(_nonid(n)):
        for b, x in enumerate(_nonid(n)):
            fx = m[f, x]
            for c, y in enumerate(_nonid(n)):
                r = (a * k + b) * k + c
                D[r, b * k + c] += g.parity[f]
                if fx:
                    D[r, (fx - 1) * k + c] -= 1
                xy = m[x, y]
                if xy:
                    D[r, a * k + (xy - 1)] += 1
                D[r, a * k + b] -= 1
    return D


# ---------------------------------------------------------------------------
# cochains

@dataclass(frozen=True, eq=False)
class Cochain1:
    group: GradedGroup
    phases: tuple  # Fraction per element, phases[0] == 0

    def __post_init__(self):
        ph = tuple(Fraction(p) % 1 for p in self.phases)
        if len(ph) != self.group.order:
            raise CohomologyError("one phase per group element required")
        if ph[0] != 0:
            raise CohomologyError("a normalized 1-cochain has psi(e) = 1")
        object.__setattr__(self, "phases", ph)


@dataclass(frozen=True, eq=False)
class Cocycle2:
    """Table (g, h) -> rotation number of phi(g, h).

    Construction does not check the cocycle condition; use
    :func:`validate_cocycle`.
    """

    group: GradedGroup
    phases: np.ndarray  # object array of Fractions, shape (n, n)

    def __post_init__(self):
        n = self.group.order
        arr = np.empty((n, n), dtype=object)
        src = np.asarray(self.phases, dtype=object)
        if src.shape != (n, n):
            raise CohomologyError(f"phase table must be {n}x{n}")
        for i in range(n):
            for j in range(n):
                arr[i, j] = Fraction(src[i, j]) % 1
        arr.setflags(write=False)
        object.__setattr__(self, "phases", arr)

    @classmethod
    def trivial(cls, group: GradedGroup) -> "Cocycle2":
        n = group.order
        return cls(group, np.full((n, n), Fraction(0), dtype=object))

    @classmethod
    def from_vector(cls, group: GradedGroup, vec: Sequence) -> "Cocycle2":
        n = group.order
        arr = np.full((n, n), Fraction(0), dtype=object)
        arr[1:, 1:] = np.asarray([Fraction(v) for v in vec], dtype=object).reshape(n - 1, n - 1)
        return cls(group, arr)

    def vector(self) -> list:
        """Normalized entries (both arguments non-identity), row-major."""
        return list(self.phases[1:, 1:].reshape(-1))

    def denominator(self) -> int:
        return _lcm(p.denominator for p in self.phases.reshape(-1))

    def values(self) -> np.ndarray:
        t = np.array([[float(p) for p in row] for row in self.phases])
        return np.exp(2j * np.pi * t)

    def __mul__(self, other: "Cocycle2") -> "Cocycle2":
        if other.group is not self.group and not other.group.same_table(self.group):
            raise CohomologyError("cocycles live on different groups")
        return Cocycle2(self.group, self.phases + other.phases)

    def to_dict(self) -> dict:
        return {"phases": [[p.numerator, p.denominator] for p in self.phases.reshape(-1)]}

    @classmethod
    def from_dict(cls, group: GradedGroup, doc: dict) -> "Cocycle2":
        n = group.order
        vals = [Fraction(a, b) for a, b in doc["phases"]]
        return cls(group, np.asarray(vals, dtype=object).reshape(n, n))


def _integer_table(phi: Cocycle2) -> tuple[np.ndarray, int]:
    L = phi.denominator()
    T = np.array([[int(p * L) for p in row] for row in phi.phases], dtype=np.int64)
    return T, L


def validate_cocycle(phi: Cocycle2) -> ValidationReport:
    """Exact check of normalization and the twisted cocycle identity."""
    g = phi.group
    T, L = _integer_table(phi)
    if np.any(T[0] != 0) or np.any(T[:, 0] != 0):
        bad = int(np.flatnonzero((T[0] != 0) | (T[:, 0] != 0))[0])
        return ValidationReport(False, f"not normalized at element {bad}", (bad,))
    m, p = g.mult, g.parity
    n = g.order
    f = np.arange(n)[:, None, None]
    x = np.arange(n)[None, :, None]
    y = np.arange(n)[None, None, :]
    resid = p[f] * T[x, y] + T[f, m[x, y]] - T[f, x] - T[m[f, x], y]
    bad = np.argwhere(resid % L != 0)
    if len(bad):
        trip = tuple(int(v) for v in bad[0])
        return ValidationReport(False, f"cocycle condition fails at (f,g,h)={trip}", trip)
    return ValidationReport(True, "ok")


def coboundary(psi: Cochain1) -> Cocycle2:
    """phi(g, h) = psi(g) psi(h)^{p(g)} / psi(gh), additively."""
    g = psi.group
    b = np.asarray(psi.phases, dtype=object)
    n = g.order
    arr = np.empty((n, n), dtype=object)
    for x in range(n):
        for y in range(n):
            arr[x, y] = b[x] + g.parity[x] * b[y] - b[g.mult[x, y]]
    return Cocycle2(g, arr)


def commutator_phase(phi: Cocycle2, x: int, y: int) -> Fraction:
    """theta(x, y) - theta(y, x) mod 1; a class invariant for commuting unitary x, y."""
    g = phi.group
    if g.mult[x, y] != g.mult[y, x]:
        raise CohomologyError("elements do not commute")
    if g.parity[x] != 1 or g.parity[y] != 1:
        raise CohomologyError("commutator phase needs unitary elements")
    return (phi.phases[x, y] - phi.phases[y, x]) % 1


# ---------------------------------------------------------------------------
# the class group

@dataclass(frozen=True, eq=False)
class CohomologyGroup:
    """H^2(G, U(1)_p) = sum_i Z_{d_i} with a fixed coordinate system.

    ``modulus`` is the root-of-unity grid on which :meth:`projection` acts
    and on which :meth:`section` representatives live.  It is always a
    multiple of the exponent of the group.
    """

    group: GradedGroup
    modulus: int
    invariant_factors: tuple
    _Vinv_rows: np.ndarray = field(repr=False)
    _V_cols: np.ndarray = field(repr=False)

    @classmethod
    def abstract(cls, factors: Sequence[int]) -> "CohomologyGroup":
        """Bare abelian group sum Z_{d_i} for class arithmetic only (no section)."""
        from .groups import trivial_group
        f = tuple(int(d) for d in factors)
        if any(d < 2 for d in f) or any(b % a for a, b in zip(f, f[1:])):
            raise CohomologyError("factors must be >= 2 and form a divisibility chain")
        return cls(trivial_group(), 1, f, np.zeros((len(f), 0), dtype=np.int64),
                   np.zeros((0, len(f)), dtype=np.int64))

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def zero(self) -> "CohomologyClass":
        return CohomologyClass(self, (0,) * self.rank)

    def element(self, *coords: int) -> "CohomologyClass":
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        if len(coords) != self.rank:
            raise CohomologyError(f"expected {self.rank} coordinates, got {len(coords)}")
        return CohomologyClass(self, tuple(coords))

    def elements(self) -> Iterator["CohomologyClass"]:
        for c in itertools.product(*(range(d) for d in self.invariant_factors)):
            yield CohomologyClass(self, c)

    @property
    def projection(self) -> np.ndarray:
        """Integer matrix P: for a Z_N cocycle vector t, coordinate i is
        ``d_i * (P t)_i / N mod d_i`` (the division is exact for cocycles)."""
        return self._Vinv_rows

    def project_vector(self, vec: Sequence) -> tuple:
        """Coordinates of a rational normalized 2-cocycle vector."""
        fr = [Fraction(v) for v in vec]
        L = _lcm(v.denominator for v in fr)
        t = np.array([int(v * L) for v in fr], dtype=object)
        coords = []
        for d, row in zip(self.invariant_factors, self._Vinv_rows):
            num = d * int(np.dot(np.asarray(row, dtype=object), t))
            if num % L:
                raise CohomologyError("vector is not a 2-cocycle (non-integral d2)")
            coords.append((num // L) % d)
        return tuple(coords)

    def section(self, cls: "CohomologyClass | Sequence[int]") -> Cocycle2:
        """Representative cocycle with phases on the 1/modulus grid."""
        coords = cls.coords if isinstance(cls, CohomologyClass) else tuple(cls)
        k = self.group.order - 1
        vec = [Fraction(0)] * (k * k)
        for c, d, col in zip(coords, self.invariant_factors, self._V_cols.T):
            if c % d:
                for r in range(k * k):
                    vec[r] += Fraction(int(col[r]) * (c % d), d)
        return Cocycle2.from_vector(self.group, vec)

    def to_dict(self) -> dict:
        return {"modulus": self.modulus, "invariant_factors": list(self.invariant_factors)}


@dataclass(frozen=True)
class CohomologyClass:
    parent: CohomologyGroup = field(compare=False)
    coords: tuple

    def __post_init__(self):
        red = tuple(int(c) % d for c, d in zip(self.coords, self.parent.invariant_factors))
        object.__setattr__(self, "coords", red)

    def _check(self, other: "CohomologyClass"):
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        if other.parent is not self.parent and not (
                other.parent.group.same_table(self.parent.group)
                and other.parent.invariant_factors == self.parent.invariant_factors):
            raise CohomologyError("classes belong to different cohomology groups")
        return None

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        return (self.coords == other.coords
                and self.parent.invariant_factors == other.parent.invariant_factors)

    def __hash__(self):
        return hash((self.coords, self.parent.invariant_factors))

    def __add__(self, other):
        self._check(other)
        return CohomologyClass(self.parent, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return CohomologyClass(self.parent, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, m: int):
        return CohomologyClass(self.parent, tuple(int(m) * a for a in self.coords))

    __mul__ = __rmul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def order(self) -> int:
        return _lcm(d // math.gcd(d, c) for c, d in zip(self.coords, self.parent.invariant_factors))

    def __repr__(self):
        if self.parent.rank == 1:
            return f"<class {self.coords[0]} in Z_{self.parent.invariant_factors[0]}>"
        return f"<class {self.coords} in {self.parent.invariant_factors}>"


def compute_H2(g: GradedGroup, modulus: Optional[int] = None) -> CohomologyGroup:
    """H^2(G, U(1)_p) with invariant factors d_1 | ... | d_k (all > 1).

    ``modulus`` defaults to |G|; it must be a positive multiple of the
    exponent of the result, which always divides |G|.
    """
    if modulus is not None and modulus < 1:
        raise CohomologyError("modulus must be positive")
    N = g.order if modulus is None else int(modulus)
    if g.order == 1:
        return CohomologyGroup(g, N, (), np.zeros((0, 0), dtype=np.int64),
                               np.zeros((0, 0), dtype=np.int64))
    D2 = coboundary_matrix_2(g)
    diag, V, Vinv = smith_normal_form(D2)
    tors = [i for i, d in enumerate(diag) if d > 1]
    factors = tuple(diag[i] for i in tors)
    if factors and N % factors[-1]:
        raise CohomologyError(
            f"modulus {N} is not a multiple of the exponent {factors[-1]}; use a multiple")
    Vinv_rows = np.array(np.asarray(Vinv)[tors])
    V_cols = np.array(np.asarray(V)[:, tors])
    h2 = CohomologyGroup(g, N, factors, Vinv_rows, V_cols)
    # Orientation: a coordinate's generator is flipped when the first
    # nonzero commutator phase theta(x,y)-theta(y,x), x > y, exceeds 1/2.
    # Flipping column i of V together with row i of Vinv keeps them inverse.
    pairs = [(x, y) for x in range(1, g.order) for y in range(1, x)
             if g.mult[x, y] == g.mult[y, x] and g.parity[x] == 1 and g.parity[y] == 1]
    for i, d in enumerate(factors):
        if d <= 2:
            continue
        unit = [0] * len(factors)
        unit[i] = 1
        rep = h2.section(unit)
        for x, y in pairs:
            w = commutator_phase(rep, x, y)
            if w:
                if w > Fraction(1, 2):
                    Vinv_rows[i] *= -1
                    V_cols[:, i] *= -1
                break
    return h2


def class_of(phi: Cocycle2, h2: CohomologyGroup) -> CohomologyClass:
    """Coordinates of the class of a rational cocycle.

    Any denominator is accepted; the computation is exact over Q.
    """
    if not phi.group.same_table(h2.group):
        raise CohomologyError("cocycle and cohomology group are over different groups")
    rep = validate_cocycle(phi)
    if not rep:
        raise CohomologyError(rep.message)
    return CohomologyClass(h2, h2.project_vector(phi.vector()))


def add(a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
    return a + b


def negate(a: CohomologyClass) -> CohomologyClass:
    return -a


def times(m: int, a: CohomologyClass) -> CohomologyClass:
    return m * a


def solve_divisibility(m: int, c: CohomologyClass) -> Optional[CohomologyClass]:
    """Smallest x (componentwise) with m*x = c, or None."""
    if m < 1:
        raise CohomologyError("m must be positive")
    out = []
    for ci, d in zip(c.coords, c.parent.invariant_factors):
        gd = math.gcd(m, d)
        if ci % gd:
            return None
        d2 = d // gd
        x = (ci // gd) * pow(m // gd, -1, d2) % d2 if d2 > 1 else 0
        out.append(x)
    return CohomologyClass(c.parent, tuple(out))


def torsion_count(h2: CohomologyGroup, N: int) -> int:
    """Number of classes killed by N, i.e. those representable with Z_N-valued cocycles."""
    return math.prod(math.gcd(N, d) for d in h2.invariant_factors)


def _kernel_size_mod(A: np.ndarray, N: int) -> int:
    """|{x in Z_N^n : A x = 0 mod N}| from the Smith form of A."""
    n = A.shape[1]
    diag, _, _ = smith_normal_form(A)
    return N ** (n - len(diag)) * math.prod(math.gcd(d, N) for d in diag)


def zn_cohomology_order(g: GradedGroup, N: int) -> int:
    """|H^2(G, Z_N)| with the p-twisted action, on normalized cochains.

    This is the naive Z_N-coefficient count; it exceeds the number of
    U(1) classes whenever Z_N-valued coboundaries miss some U(1) ones.
    """
    if N < 1:
        raise CohomologyError("N must be positive")
    k = g.order - 1
    if k == 0:
        return 1
    d1 = coboundary_matrix_1(g)
    d2 = coboundary_matrix_2(g)
    z2 = _kernel_size_mod(d2, N)
    b2 = N ** k // _kernel_size_mod(d1, N)
    return z2 // b2
