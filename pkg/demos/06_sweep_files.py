"""
Sweeps to files
===============

The same sweep from Python and from the command line, then read back.  The
CSV has one row per time point and a ``.meta.json`` sidecar with the
configuration and the detected switches.
"""
import json
import subprocess
import sys
import tempfile
from pathlib import Path

from eof2xd.sweep import SweepConfig, emit, load, run_sweep

out = Path(tempfile.mkdtemp())

res = run_sweep(SweepConfig(model="tavis_cummings", points=201))
path = emit(res, out / "tc_n0.csv")
print(path.read_text().splitlines()[0])
print(path.read_text().splitlines()[81])
print(json.loads((out / "tc_n0.csv.meta.json").read_text())["crossovers"])

cmd = [sys.executable, "-m", "eof2xd", "--model", "common_reservoir", "--alpha", "0.3",
       "--points", "101", "--format", "json", "--out", str(out / "res.json")]
print("\n$", " ".join(cmd[2:]))
print(subprocess.run(cmd, capture_output=True, text=True).stdout)

records = load(out / "res.json")
print(f"read back {len(records)} records; E at gamma t = {records[-1].tau} is {records[-1].eof:.2e}")

# bad input gives exit code 2 and names the field
bad = subprocess.run([sys.executable, "-m", "eof2xd", "--alpha", "1.5"], capture_output=True, text=True)
print("exit", bad.returncode, bad.stderr.strip())
