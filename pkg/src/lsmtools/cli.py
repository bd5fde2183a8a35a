"""Batch front end: ``python -m lsmtools <command> [flags]``.

Every run writes one JSON report (``--out`` or stdout).  Exit status is 0 on
success, 2 for unreadable or malformed input, 3 when a computation fails and
4 when the computation finished but one of its invariant checks did not.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

import numpy as np

from . import cohomology, groups, lsm, mps, projective, spectra

SCHEMA_VERSION = 1

EXIT_OK, EXIT_PARSE, EXIT_COMPUTE, EXIT_INVARIANT = 0, 2, 3, 4

# name -> (default, lower bound, upper bound)
TOLERANCES = {
    "unitary": (projective.TOL_UNITARY, 1e-15, 1e-3),
    "scalar": (projective.TOL_SCALAR, 1e-15, 1e-3),
    "snap": (projective.TOL_SNAP, 1e-15, 1e-2),
    "inj": (mps.TOL_INJ, 1e-15, 1e-2),
    "edge": (mps.TOL_EDGE, 1e-15, 1e-2),
    "eig": (spectra.TOL_EIG, 1e-15, 1e-3),
    "deg": (spectra.TOL_DEG, 1e-15, 1e-3),
    "exp": (spectra.TOL_EXP, 1e-15, 1e-2),
    "sym": (spectra.TOL_SYM, 1e-15, 1e-3),
    "twist": (0.10, 0.0, 1.0),
}


class ParseError(Exception):
    pass


class ComputeError(Exception):
    pass


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, cohomology.CohomologyClass):
        return list(x.coords)
    return x


def _read_json(path: str) -> dict:
    p = Path(path)
    if not p.exists():
        raise ParseError(f"file not found: {path}")
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _is_file(ref: str) -> bool:
    return ref.endswith(".json") or ref.endswith(".cfg") or Path(ref).exists()


# ---------------------------------------------------------------------------
# builtin registry

def load_group(ref: str) -> groups.GradedGroup:
    if _is_file(ref):
        g = groups.GradedGroup.from_dict(_read_json(ref))
    else:
        try:
            g = groups.builtin(ref)
        except groups.GroupError as exc:
            raise ParseError(str(exc)) from exc
    rep = groups.validate(g)
    if not rep:
        raise ParseError(f"invalid group table: {rep.message}")
    return g


def load_rep(ref: str, group_ref: Optional[str] = None) -> projective.SesquiRep:
    """Builtins: spin_z2xz2:<2S>, spin_tr:<2S>, clock:<n>:<k>, trivial:<group>[:<dim>]."""
    if _is_file(ref):
        doc = _read_json(ref)
        gref = doc.get("group", group_ref)
        if gref is None:
            raise ParseError("representation file needs a group (in the file or via --group)")
        g = groups.GradedGroup.from_dict(gref) if isinstance(gref, dict) else load_group(gref)
        try:
            return projective.SesquiRep.from_dict(g, doc)
        except (KeyError, ValueError, TypeError) as exc:
            raise ParseError(f"malformed representation: {exc}") from exc
    parts = ref.split(":")
    try:
        if parts[0] == "spin_z2xz2":
            return projective.spin_rep_z2xz2(int(parts[1]))
        if parts[0] == "spin_tr":
            return projective.spin_rep_time_reversal(int(parts[1]))
        if parts[0] == "clock":
            return projective.representation_group_rep(int(parts[1]), int(parts[2]))
        if parts[0] == "trivial":
            dim = int(parts[2]) if len(parts) > 2 else 1
            return projective.trivial_rep(load_group(parts[1]), dim)
    except (IndexError, ValueError) as exc:
        raise ParseError(f"bad builtin representation {ref!r}: {exc}") from exc
    raise ParseError(f"unknown representation {ref!r}")


def load_mps(ref: str, sym: Optional[projective.SesquiRep]):
    """Builtins: aklt, product:<2S> (the m = 0 or m = 1/2 state), clock_spt:<n>:<k>.

    Returns the tensor and the physical symmetry; ``clock_spt`` supplies its own.
    """
    if _is_file(ref):
        try:
            return mps.MPSTensor.from_dict(_read_json(ref)), sym
        except (KeyError, ValueError, TypeError) as exc:
            raise ParseError(f"malformed MPS: {exc}") from exc
    parts = ref.split(":")
    try:
        if parts[0] == "aklt":
            return mps.aklt(), sym
        if parts[0] == "product":
            d = int(parts[1]) + 1
            v = np.zeros(d)
            v[(d - 1) // 2] = 1.0
            return mps.product_state(v), sym
        if parts[0] == "clock_spt":
            tensor, phys = mps.dimer_spt(projective.representation_group_rep(int(parts[1]), int(parts[2])))
            return tensor, phys
    except (IndexError, ValueError) as exc:
        raise ParseError(f"bad builtin MPS {ref!r}: {exc}") from exc
    raise ParseError(f"unknown MPS {ref!r}")


def load_hamiltonian_doc(ref: str) -> dict:
    """File, or builtin ``heisenberg|xx:<2S>:<boundary>:<L>[,<L>...]``."""
    if _is_file(ref):
        return _read_json(ref)
    parts = ref.split(":")
    if parts[0] not in ("heisenberg", "xx") or len(parts) != 4:
        raise ParseError(f"unknown Hamiltonian {ref!r}")
    try:
        Ls = [int(v) for v in parts[3].split(",")]
        return {"model": parts[0], "two_s": int(parts[1]), "boundary": parts[2],
                "L": Ls if len(Ls) > 1 else Ls[0]}
    except ValueError as exc:
        raise ParseError(f"bad builtin Hamiltonian {ref!r}") from exc


def _hamiltonian(doc: dict, L: Optional[int] = None) -> spectra.ChainHamiltonian:
    d = dict(doc)
    if L is not None:
        d["L"] = L
    try:
        return spectra.hamiltonian_from_dict(d)
    except spectra.HamiltonianError as exc:
        raise ParseError(str(exc)) from exc


# ---------------------------------------------------------------------------
# commands; each returns (inputs, results, checks)

def _check(name: str, ok: bool, detail="") -> dict:
    return {"name": name, "ok": bool(ok), "detail": detail}


def cmd_cohomology(a, tol):
    if not a.group:
        raise ParseError("cohomology needs --group")
    g = load_group(a.group)
    h2 = cohomology.compute_H2(g)
    roundtrip = all(cohomology.class_of(h2.section(c), h2) == c for c in h2.elements())
    res = {"order": h2.order, "invariant_factors": list(h2.invariant_factors),
           "modulus": h2.modulus, "group_order": g.order}
    return {"group": a.group}, res, [_check("section/class round trip", roundtrip)]


def cmd_classify_rep(a, tol):
    if not a.rep:
        raise ParseError("classify-rep needs --rep")
    rep = load_rep(a.rep, a.group)
    problems = rep.check(tol["unitary"], tol["scalar"])
    checks = [_check("rep invariants", not problems, "; ".join(problems))]
    if problems:
        return {"rep": a.rep}, {}, checks
    c = projective.classify(rep, tol_unitary=tol["unitary"], tol_scalar=tol["scalar"],
                            tol_snap=tol["snap"])
    res = {"class": list(c.coords), "invariant_factors": list(c.parent.invariant_factors),
           "dim": rep.dim, "scalar_residual": projective.max_scalar_residual(rep)}
    return {"rep": a.rep, "group": a.group}, res, checks


def cmd_lsm_check(a, tol):
    if not a.spec:
        raise ParseError("lsm-check needs --spec")
    doc = _read_json(a.spec) if _is_file(a.spec) else None
    if doc is None:
        raise ParseError(f"spec file not found: {a.spec}")
    try:
        spec = lsm.spec_from_dict(doc, Path(a.spec).parent)
    except (lsm.SpecError, groups.GroupError, cohomology.CohomologyError) as exc:
        raise ParseError(str(exc)) from exc
    verdict = lsm.check(spec)
    res = verdict.to_dict()
    res["note"] = ("Verdicts concern G-invariant pure split states; unique gapped ground "
                   "states are split, so an obstruction excludes them.")
    res["invariant_factors"] = list(spec.h2.invariant_factors)
    checks = [_check("certificate re-check", verdict.recheck(spec.h2))]
    if spec.spatial_symmetry == lsm.REFLECTION:
        checks.append(_check("star(2) agrees with reflection",
                             lsm.check_star(spec, 2).obstructed == verdict.obstructed))
    return {"spec": a.spec, "chain": spec.to_dict()}, res, checks


def cmd_mps_index(a, tol):
    if not a.mps:
        raise ParseError("mps-index needs --mps")
    sym = load_rep(a.rep, a.group) if a.rep else None
    tensor, sym = load_mps(a.mps, sym)
    if sym is None:
        raise ParseError("mps-index needs --rep for the physical symmetry")
    ok, msg = tensor.injectivity_report(tol["inj"])
    if not ok:
        raise ComputeError(f"MPS is not injective: {msg}")
    right = mps.extract_edge_rep(tensor, sym, tol["edge"])
    left = mps.extract_edge_rep(tensor.reversed(), sym, tol["edge"])
    sr, sl = right.index(), left.index()
    res = {"sigma_R": list(sr.coords), "sigma_L": list(sl.coords),
           "invariant_factors": list(sr.parent.invariant_factors),
           "residual_R": right.max_residual, "residual_L": left.max_residual,
           "bond_dim": tensor.bond_dim, "phys_dim": tensor.phys_dim}
    checks = [_check("sigma_L + sigma_R = 0", (sl + sr).is_zero()),
              _check("edge residual", max(right.max_residual, left.max_residual) < tol["edge"])]
    return {"mps": a.mps, "rep": a.rep}, res, checks


def cmd_ed_gap(a, tol):
    if not a.hamiltonian:
        raise ParseError("ed-gap needs --hamiltonian")
    doc = load_hamiltonian_doc(a.hamiltonian)
    Ls = doc.get("L")
    k = int(doc.get("k", 4))
    checks = []
    if isinstance(Ls, list):
        for L in Ls:
            _hamiltonian(doc, L)
        scan = spectra.gap_scan(lambda L: _hamiltonian(doc, L), Ls, k=k, tol_deg=tol["deg"])
        res = scan.to_dict()
        checks.append(_check("gaps nonnegative", all(g >= 0 for g in scan.gaps)))
    else:
        h = _hamiltonian(doc)
        s = spectra.lowest_spectrum(h, k=k, tol_deg=tol["deg"])
        res = s.to_dict()
        res["bound_B"] = h.bound
        checks.append(_check("eigen residual", s.residual <= tol["eig"] * max(1.0, h.bound),
                             s.residual))
        checks.append(_check("U(1) invariance", spectra.u1_error(h) <= tol["sym"]) |
                      {"required": False})
    return {"hamiltonian": a.hamiltonian, "doc": doc}, res, checks


def cmd_twist(a, tol):
    if not a.hamiltonian:
        raise ParseError("twist needs --hamiltonian")
    doc = load_hamiltonian_doc(a.hamiltonian)
    h = _hamiltonian(doc)
    ells = [int(v) for v in doc.get("ells", [2, 3])]
    center = int(doc.get("center", (h.L - 1) // 2 if h.boundary == "open" else 0))
    for ell in ells:
        try:
            spectra.twist_window(h, ell, center)
        except spectra.HamiltonianError as exc:
            raise ParseError(str(exc)) from exc
    ident = max(spectra.twist_identity_error(h, ell, center) for ell in ells)
    expect = spectra.twist_expectation_check(h, ells[-1], center, tol=tol["exp"])
    s = spectra.lowest_spectrum(h, k=2, vectors=True, tol_deg=tol["deg"])
    energy = spectra.twist_energy_check(h, s.vectors[:, 0], ells, center, tol=tol["twist"])
    res = {"identity_error": ident, "expectation": expect.to_dict(),
           "energy": energy.to_dict(), "center": center}
    checks = [_check("R~ U R~^dagger = exp(2 pi i S3_0) U", ident <= tol["sym"], ident),
              _check("variational dE >= 0", energy.variational_ok),
              _check("<U> vanishes for half-odd center", expect.ok, abs(expect.value)),
              # diagnostic only: the fitted-C bound is not an identity
              _check("l*dE(l) <= C(1+tol)", energy.bound_holds) | {"required": False}]
    return {"hamiltonian": a.hamiltonian, "doc": doc, "ells": ells}, res, checks


COMMANDS = {
    "cohomology": cmd_cohomology,
    "classify-rep": cmd_classify_rep,
    "lsm-check": cmd_lsm_check,
    "mps-index": cmd_mps_index,
    "ed-gap": cmd_ed_gap,
    "twist": cmd_twist,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lsmtools", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--group")
    p.add_argument("--spec")
    p.add_argument("--rep")
    p.add_argument("--mps")
    p.add_argument("--hamiltonian")
    p.add_argument("--out")
    return p


def parse_tolerances(extra: list) -> dict:
    tol = {k: v[0] for k, v in TOLERANCES.items()}
    i = 0
    while i < len(extra):
        arg = extra[i]
        if not arg.startswith("--tol-"):
            raise ParseError(f"unrecognized argument {arg!r}")
        if "=" in arg:
            name, val = arg[6:].split("=", 1)
            i += 1
        else:
            if i + 1 >= len(extra):
                raise ParseError(f"{arg} needs a value")
            name, val = arg[6:], extra[i + 1]
            i += 2
        if name not in TOLERANCES:
            raise ParseError(f"unknown tolerance {name!r}; known: {', '.join(TOLERANCES)}")
        try:
            x = float(val)
        except ValueError as exc:
            raise ParseError(f"tolerance {name} must be a number") from exc
        lo, hi = TOLERANCES[name][1:]
        if not (lo <= x <= hi) or math.isnan(x):
            raise ParseError(f"tolerance {name}={x} outside [{lo}, {hi}]")
        tol[name] = x
    return tol


def _emit(report: dict, out: Optional[str]):
    text = json.dumps(_jsonable(report), indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args, extra = parser.parse_known_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    t0 = time.perf_counter()
    # everything that varies between identical runs lives under "timing"
    report = {"schema_version": SCHEMA_VERSION, "command": args.command,
              "timing": {"timestamp": datetime.now(timezone.utc).isoformat()}}
    status = EXIT_OK
    try:
        tol = parse_tolerances(extra)
        report["tolerances"] = tol
        inputs, results, checks = COMMANDS[args.command](args, tol)
        report.update(inputs=inputs, results=results, checks=checks)
        if not all(c["ok"] for c in checks if c.get("required", True)):
            status = EXIT_INVARIANT
    except ParseError as exc:
        report["error"] = {"kind": "parse", "message": str(exc)}
        status = EXIT_PARSE
    except (ComputeError, ValueError, RuntimeError, AssertionError,
            np.linalg.LinAlgError) as exc:
        report["error"] = {"kind": "computation", "message": f"{type(exc).__name__}: {exc}"}
        status = EXIT_COMPUTE
    report["status"] = status
    report["timing"]["wall_time_s"] = round(time.perf_counter() - t0, 6)
    _emit(report, args.out)
    if status:
        msg = report.get("error", {}).get("message") or "invariant check failed"
        print(f"lsmtools {args.command}: {msg}", file=sys.stderr)
    return status


def main():
    sys.exit(run())
