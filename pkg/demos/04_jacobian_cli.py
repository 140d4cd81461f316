"""Drive the command line tool: embed a curve, then compute its Jacobian."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

with tempfile.TemporaryDirectory() as tmp:
    model = Path(tmp) / "model.json"
    cmd = [sys.executable, "-m", "g1omega", "embed", "--a3", "1", "--a4", "-1", "--n", "5",
           "--output", str(model)]
    subprocess.run(cmd, check=True)
    print("embedded model:", len(json.loads(model.read_text())["quadrics"]), "quadrics")

    out = subprocess.run([sys.executable, "-m", "g1omega", "jacobian", "--input", str(model), "--verify"],
                         check=True, capture_output=True, text=True).stdout
    report = json.loads(out)
    print("c4 =", report["c4"], " c6 =", report["c6"])
    print("Jacobian:", report["jacobian"])
    print("j =", report["j"])
    print("checks:", report["checks"])

    # a singular cubic is rejected with exit code 3
    bad = Path(tmp) / "hesse.json"
    terms = [([3, 0, 0], "1"), ([0, 3, 0], "1"), ([0, 0, 3], "1"), ([1, 1, 1], "-3")]
    bad.write_text(json.dumps({"cubic": {"vars": 3, "terms": [{"exps": e, "coeff": c} for e, c in terms]}}))
    proc = subprocess.run([sys.executable, "-m", "g1omega", "jacobian", "--input", str(bad)],
                          capture_output=True, text=True)
    print("x^3 + y^3 + z^3 - 3xyz: exit", proc.returncode, "-", proc.stderr.strip())
