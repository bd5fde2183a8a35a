"""
Batch runs through the command line
===================================

The same computations run as ``lsmtools <command>`` (or ``python3 -m lsmtools``)
and write a JSON report.  Here we call the entry point in-process.
"""
import json
import tempfile
from pathlib import Path

from lsmtools.cli import run

here = Path(__file__).resolve().parent if "__file__" in dir() else Path("demos")
cfg = here / "configs"
out = Path(tempfile.mkdtemp()) / "report.json"

jobs = [
    ["cohomology", "--group", str(cfg / "z2xz2_group.json")],
    ["classify-rep", "--rep", str(cfg / "spin_half_rep.json")],
    ["lsm-check", "--spec", str(cfg / "reflection_spin_half.cfg")],
    ["mps-index", "--mps", "aklt", "--rep", "spin_tr:2"],
    ["ed-gap", "--hamiltonian", "heisenberg:1:periodic:8,10,12"],
    ["twist", "--hamiltonian", str(cfg / "heisenberg_open_13.json"), "--tol-twist", "0.2"],
]
for argv in jobs:
    code = run(argv + ["--out", str(out)])
    report = json.loads(out.read_text())
    print(f"{argv[0]:13s} exit {code}", json.dumps(report["results"])[:100])
