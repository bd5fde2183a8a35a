"""Obstruction verdicts for symmetric pure split states on chains.

A chain is described by its on-site classes ``c_x`` in H^2(G, U(1)_p) and a
spatial symmetry.  The verdicts reduce to divisibility questions in the
finite abelian group H^2:

* translation: a symmetric split state requires ``c = 0``;
* reflection about the origin: requires ``c_0 = 2c`` for some ``c``;
* the star lattice with m arms: requires ``c_o = m c`` for some ``c``.

Index bookkeeping uses ``sR[x] = c[x] + sR[x+1]`` and ``sL[x-1] = -sR[x]``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from .cohomology import (CohomologyClass, CohomologyGroup, compute_H2,
                         solve_divisibility)
from .groups import GradedGroup, builtin

TRANSLATION = "translation"
REFLECTION = "reflection_about_origin"
STAR = "star"
CENTER = "o"

THEOREM_TAGS = {
    TRANSLATION: "translation: c = 0",
    REFLECTION: "reflection: c_0 = 2c",
    STAR: "star(m): c_o = m c",
}


class SpecError(ValueError):
    pass


Site = Union[int, str, tuple]


@dataclass(frozen=True, eq=False)
class ChainSpec:
    """On-site classes plus spatial symmetry.

    ``sites`` maps coordinates to classes.  Chains use integer coordinates;
    the star lattice uses ``"o"`` for the center and ``(arm, x)`` with
    ``x >= 1`` on the arms.  Sites not listed are taken from the nearest
    listed rule: under translation a single entry fixes every site.
    """

    group: GradedGroup
    h2: CohomologyGroup
    sites: dict
    spatial_symmetry: str
    m: Optional[int] = None

    def __post_init__(self):
        if self.spatial_symmetry not in THEOREM_TAGS:
            raise SpecError(f"unknown spatial symmetry {self.spatial_symmetry!r}")
        if not self.sites:
            raise SpecError("at least one site class is required")
        for k, c in self.sites.items():
            if c.parent is not self.h2 and c.parent.invariant_factors != self.h2.invariant_factors:
                raise SpecError(f"class at site {k!r} lives in a different group")
        msg = self.violation()
        if msg:
            raise SpecError(msg)

    def violation(self) -> str:
        s = self.spatial_symmetry
        if s == TRANSLATION:
            vals = list(self.sites.values())
            for k, v in self.sites.items():
                if v != vals[0]:
                    return f"translation requires equal classes; site {k!r} differs"
        elif s == REFLECTION:
            for k, v in self.sites.items():
                if not isinstance(k, int):
                    return f"chain coordinates must be integers, got {k!r}"
                if -k in self.sites and self.sites[-k] != v:
                    return f"reflection requires c_x = c_-x; fails at x = {k}"
            if 0 not in self.sites:
                return "reflection spec must list the class at the origin"
        else:
            if self.m is None or self.m < 2:
                raise SpecError("star lattice needs m >= 2 arms")
            if CENTER not in self.sites:
                return "star spec must list the class at the center 'o'"
            arms = {}
            for k, v in self.sites.items():
                if k == CENTER:
                    continue
                if not (isinstance(k, tuple) and len(k) == 2 and 0 <= k[0] < self.m and k[1] >= 1):
                    return f"bad star coordinate {k!r}"
                if k[1] in arms and arms[k[1]] != v:
                    return f"arm-independence fails at distance {k[1]}"
                arms[k[1]] = v
        return ""

    def site_class(self, x: Site) -> CohomologyClass:
        if x in self.sites:
            return self.sites[x]
        if self.spatial_symmetry == TRANSLATION:
            return next(iter(self.sites.values()))
        if self.spatial_symmetry == REFLECTION and isinstance(x, int) and -x in self.sites:
            return self.sites[-x]
        if self.spatial_symmetry == STAR and isinstance(x, tuple):
            for (arm, r), v in ((k, v) for k, v in self.sites.items() if k != CENTER):
                if r == x[1]:
                    return v
        raise SpecError(f"no class recorded for site {x!r}")

    @property
    def origin_class(self) -> CohomologyClass:
        if self.spatial_symmetry == STAR:
            return self.sites[CENTER]
        if self.spatial_symmetry == REFLECTION:
            return self.sites[0]
        return next(iter(self.sites.values()))

    def to_dict(self) -> dict:
        def key(k):
            return list(k) if isinstance(k, tuple) else k
        doc = {"symmetry": self.spatial_symmetry,
               "sites": [{"site": key(k), "class": list(v.coords)} for k, v in self.sites.items()]}
        if self.m is not None:
            doc["m"] = self.m
        return doc


@dataclass(frozen=True)
class Verdict:
    obstructed: bool
    theorem: str
    certificate: dict = field(default_factory=dict)
    sentence: str = ""

    def recheck(self, h2: CohomologyGroup) -> bool:
        """Re-verify the certificate with class arithmetic."""
        cert = self.certificate
        target = h2.element(*cert["target"])
        m = cert["m"]
        if self.obstructed:
            return all(not (m * x == target) for x in h2.elements())
        if m == 0:
            return target.is_zero()
        return m * h2.element(*cert["witness"]) == target

    def to_dict(self) -> dict:
        return {"obstructed": self.obstructed, "theorem": self.theorem,
                "certificate": self.certificate, "sentence": self.sentence}


def _describe(h2: CohomologyGroup) -> str:
    if h2.is_trivial():
        return "0"
    return " x ".join(f"Z_{d}" for d in h2.invariant_factors)


def _divisibility_verdict(m: int, target: CohomologyClass, tag: str, what: str) -> Verdict:
    x = solve_divisibility(m, target)
    if x is None:
        cert = {"m": m, "target": list(target.coords),
                "instance": f"{m}*c = {list(target.coords)} has no solution in "
                            f"{_describe(target.parent)}"}
        return Verdict(True, tag, cert,
                       f"No {what}-invariant G-symmetric pure split state exists, so there is no "
                       f"unique gapped ground state (such ground states are split).")
    cert = {"m": m, "target": list(target.coords), "witness": list(x.coords)}
    return Verdict(False, tag, cert,
                   f"The {what} constraint is satisfiable ({m}*{list(x.coords)} = "
                   f"{list(target.coords)}); no obstruction follows.")


def check_translation(spec: ChainSpec) -> Verdict:
    if spec.spatial_symmetry != TRANSLATION:
        raise SpecError("check_translation needs a translation spec")
    c = spec.origin_class
    tag = THEOREM_TAGS[TRANSLATION]
    if c.is_zero():
        return Verdict(False, tag, {"m": 0, "target": list(c.coords), "statement": "c = 0"},
                       "The on-site class is trivial; no obstruction follows.")
    return Verdict(True, tag, {"m": 0, "target": list(c.coords),
                               "instance": f"c = {list(c.coords)} != 0"},
                   "No translation-invariant G-symmetric pure split state exists, so there is "
                   "no unique gapped ground state (such ground states are split).")


def check_reflection(spec: ChainSpec) -> Verdict:
    if spec.spatial_symmetry != REFLECTION:
        raise SpecError("check_reflection needs a reflection spec")
    return _divisibility_verdict(2, spec.sites[0], THEOREM_TAGS[REFLECTION], "reflection")


def check_star(spec: ChainSpec, m: Optional[int] = None) -> Verdict:
    m = spec.m if m is None else m
    if m is None or m < 2:
        raise SpecError("star lattice needs m >= 2 arms")
    if spec.spatial_symmetry == REFLECTION:
        if m != 2:
            raise SpecError("a reflection spec is a star with m = 2 only")
        target = spec.sites[0]
    elif spec.spatial_symmetry == STAR:
        target = spec.sites[CENTER]
    else:
        raise SpecError("check_star needs a star or reflection spec")
    return _divisibility_verdict(m, target, THEOREM_TAGS[STAR], f"{m}-arm rotation")


def check(spec: ChainSpec) -> Verdict:
    if spec.spatial_symmetry == TRANSLATION:
        return check_translation(spec)
    if spec.spatial_symmetry == REFLECTION:
        return check_reflection(spec)
    return check_star(spec)


@dataclass
class Propagation:
    right: dict
    left: dict
    consistent: bool
    contradiction: str = ""
    derived: dict = field(default_factory=dict)


def propagate_indices(spec: ChainSpec, seed: tuple, window: range) -> Propagation:
    """Spread ``sR`` from ``seed = (x0, class)`` across ``window``.

    Under translation the indices must be constant; under reflection
    ``sL[x] = sR[-x]`` must hold.  A failure is reported, not raised: it is
    the contradiction that drives the obstruction.
    """
    if spec.spatial_symmetry == STAR:
        raise SpecError("per-site propagation is defined for chains only")
    x0, s0 = seed
    if x0 not in window:
        raise SpecError("seed site outside the window")
    lo, hi = window.start, window.stop - 1
    sr = {x0: s0}
    for x in range(x0 - 1, lo - 1, -1):
        sr[x] = spec.site_class(x) + sr[x + 1]
    for x in range(x0 + 1, hi + 1):
        sr[x] = sr[x - 1] - spec.site_class(x - 1)
    sl = {x - 1: -sr[x] for x in sr}
    out = Propagation(dict(sorted(sr.items())), dict(sorted(sl.items())), True)
    if spec.spatial_symmetry == TRANSLATION:
        for x in range(lo, hi):
            if sr[x] != sr[x + 1]:
                out.consistent = False
                out.contradiction = (f"translation needs sR constant but sR[{x}] = {sr[x]} and "
                                     f"sR[{x + 1}] = {sr[x + 1]}, i.e. c = {spec.site_class(x)} != 0")
                break
    else:
        for x in sl:
            if -x in sr and sl[x] != sr[-x]:
                out.consistent = False
                out.contradiction = (f"reflection needs sL[{x}] = sR[{-x}] but "
                                     f"{sl[x]} != {sr[-x]}")
                break
        if 0 in sr:
            out.derived["c0 == 2*sR0"] = spec.sites[0] == 2 * sr[0]
    return out


# ---------------------------------------------------------------------------
# compact groups through their fundamental group data

@dataclass(frozen=True)
class FactorInstance:
    order: int
    group: GradedGroup
    h2: CohomologyGroup
    cls: CohomologyClass
    verdict: Verdict


def reduce_compact_group(pi1_factors, c) -> tuple[bool, list[FactorInstance]]:
    """Translation verdict for a compact group with pi_1 = prod Z_{k_i}.

    Component ``i`` becomes the finite instance Z_k x Z_k with the class of
    the almost-commuting pair scaled by ``c_i``; class 1 is the one carried
    by ``representation_group_rep(k, 1)``.
    """
    from .groups import zn_x_zn

    ks = [int(k) for k in pi1_factors]
    cs = [int(v) for v in c]
    if len(ks) != len(cs):
        raise SpecError("one class coordinate per cyclic factor is required")
    if any(k < 2 for k in ks):
        raise SpecError("cyclic factors must have order >= 2")
    out = []
    for k, ci in zip(ks, cs):
        g = zn_x_zn(k)
        h2 = compute_H2(g)
        cls = ci * h2.element(1)
        spec = ChainSpec(g, h2, {0: cls}, TRANSLATION)
        out.append(FactorInstance(k, g, h2, cls, check_translation(spec)))
    return any(f.verdict.obstructed for f in out), out


# ---------------------------------------------------------------------------
# ingestion

def _parse_site(raw) -> Site:
    if isinstance(raw, list):
        return tuple(int(v) for v in raw)
    if isinstance(raw, str) and raw != CENTER:
        return int(raw)
    return raw


def load_group(ref, base: Optional[Path] = None) -> GradedGroup:
    if isinstance(ref, dict):
        return GradedGroup.from_dict(ref)
    p = Path(ref)
    if base is not None and not p.is_absolute():
        p = base / p
    if p.suffix == ".json" or p.exists():
        return GradedGroup.from_dict(json.loads(p.read_text()))
    return builtin(str(ref))


def spec_from_dict(doc: dict, base: Optional[Path] = None) -> ChainSpec:
    """Build a ChainSpec from ``{group, symmetry, sites, m}``.

    ``sites`` is a list of ``{"site": ..., "class": [coords]}``, a list of
    bare classes (site = position) or a mapping from site to coordinates; ``"class": 1`` is accepted for cyclic H^2.
    """
    try:
        group = load_group(doc["group"], base)
        h2 = compute_H2(group)
        sym = doc.get("symmetry", TRANSLATION)
        if sym == "reflection":
            sym = REFLECTION
        raw = doc["sites"]
        if isinstance(raw, dict):
            items = raw.items()
        else:
            # bare classes in a list are indexed by their position
            items = [(e["site"], e["class"]) if isinstance(e, dict) else (i, e)
                     for i, e in enumerate(raw)]
        sites = {}
        for k, v in items:
            coords = [v] if isinstance(v, int) else list(v)
            if h2.is_trivial() and not any(coords):
                coords = []
            sites[_parse_site(k)] = h2.element(*coords)
        m = doc.get("m")
        return ChainSpec(group, h2, sites, sym, None if m is None else int(m))
    except (KeyError, TypeError) as exc:
        raise SpecError(f"malformed chain spec: {exc}") from exc


def load_spec(path) -> ChainSpec:
    p = Path(path)
    return spec_from_dict(json.loads(p.read_text()), p.parent)
