"""
Two atoms decaying into a common reservoir
==========================================

The reservoir is kept as the third party C, restricted to its collective
0, 1 and 2 excitation states.  The closed-form amplitudes are checked
against an RK4 integration of the master equation, then E_AC is swept.
"""
import numpy as np

from eof2xd.models import ReservoirParams, lindblad_oracle, reservoir_amplitudes, reservoir_tripartite_state
from eof2xd.sweep import SweepConfig, run_sweep

p = ReservoirParams.from_alpha(0.3)

times, rhos = lindblad_oracle(p, 5.0)
closed = np.array([reservoir_tripartite_state(p, t).reduced([0, 1]) for t in times[::50]])
print(f"closed form vs master equation over gamma t in [0, 5]: max entry error {np.max(abs(closed - rhos[::50])):.1e}")

print("\ngamma t    c1       c2       c3")
for t in (0.0, 0.5, 1.0, 2.0, 5.0, 10.0):
    c = reservoir_amplitudes(p, t)
    print(f"{t:6.1f}  {c.c1:.5f}  {c.c2:.5f}  {c.c3:.5f}")

res = run_sweep(SweepConfig(model="common_reservoir", alpha=0.3, tau_max=8.0, points=801))
print("\ngamma t   E_AC      bound     winner")
for i in range(0, 801, 50):
    r = res.records[i]
    print(f"{r.tau:6.2f}  {r.eof:.6f}  {r.lower_bound:.6f}  {r.winner}")
for c in res.crossovers:
    print(f"single switch {c.left_winner} -> {c.right_winner} at gamma t = {c.tau:.6f}")

# at late times the atoms sit in |gg> and the reservoir keeps the coherent part
psi = reservoir_tripartite_state(p, 15.0)
target = np.kron([1, 0, 0, 0], [0.3, 0, np.sqrt(0.91)])
print(f"fidelity with |gg>(0.3|0> + sqrt(0.91)|2>) at gamma t = 15: {abs(np.vdot(target, psi.vector)) ** 2:.12f}")
