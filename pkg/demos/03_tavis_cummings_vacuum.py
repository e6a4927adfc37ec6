"""
Two atoms in an empty cavity
============================

Atoms start in alpha|gg> + beta|ee>, the cavity in vacuum.  The atom-cavity
entanglement E_AC (A = one atom, C = the field) is computed over one period
tau in [0, 1].  Two closed-form measurements (along x and along z) compete;
where the winner swaps the curve has a kink.
"""
import math

import numpy as np

from eof2xd.models import TCParams, reduced_ac, tc_time, tc_tripartite_state
from eof2xd.sweep import SweepConfig, run_sweep

res = run_sweep(SweepConfig(model="tavis_cummings", alpha=1 / math.sqrt(2), n=0, points=1001))
tau, eof, lb = res.column("tau"), res.column("eof"), res.column("lower_bound")

print("  tau     E_AC    bound  winner")
for i in range(0, 1001, 50):
    r = res.records[i]
    print(f"{r.tau:5.2f}  {r.eof:7.4f}  {r.lower_bound:7.4f}  {r.winner}")

for c in res.crossovers:
    print(f"winner switches {c.left_winner} -> {c.right_winner} at tau = {c.tau:.6f}")

i = int(np.argmax(eof))
print(f"largest E_AC = {eof[i]:.4f} at tau = {tau[i]:.3f}; symmetric about 1/2 to {np.max(abs(eof - eof[::-1])):.0e}")

# halfway through the period atom A and the field are separable again
b = 1 / math.sqrt(2)
rho = reduced_ac(tc_tripartite_state(TCParams.from_alpha(b), tc_time(0, 0.5)))
print("\nrho_AC at tau = 1/2 (rows |g0>,|g1>,|g2>,|e0>,|e1>,|e2>):")
print(np.round(rho.real, 4))
print("expected |g><g| x |phi><phi| + (beta^2/9)|e0><e0| with phi = (alpha, 0, -2 sqrt(2) beta/3):",
      np.round([b, 0, -2 * math.sqrt(2) * b / 3], 4), round(b * b / 9, 4))
