"""
Two atoms in a Fock-state cavity
================================

With n photons initially the motion mixes two incommensurate Rabi
frequencies.  No closed form is known for the optimal measurement so the
generic X-state candidates (x, y, z, best equatorial angle, and a
one-dimensional polar search) are used, and the oracle double-checks them
on a coarser grid.
"""
import math

import numpy as np

from eof2xd.models import TCParams, reduced_ac, tc_time, tc_tripartite_state
from eof2xd.sweep import SweepConfig, run_sweep

alpha = 1 / math.sqrt(2)
res = run_sweep(SweepConfig(model="tavis_cummings", alpha=alpha, n=2, points=1001))
tau, eof = res.column("tau"), res.column("eof")

print("  tau     E_AC  winner")
for i in range(0, 1001, 50):
    print(f"{tau[i]:5.2f}  {eof[i]:7.4f}  {res.records[i].winner}")

print(f"\n{len(res.crossovers)} switches of the extremal measurement:")
for c in res.crossovers:
    print(f"  tau = {c.tau:.6f}: {c.left_winner} -> {c.right_winner}")

mid = (tau > 0.4) & (tau < 0.6)
print(f"deepest dip near 1/2: E = {eof[mid].min():.4f} at tau = {tau[mid][np.argmin(eof[mid])]:.3f}")

# near tau = 1/2 the atom-field state is close to |g> x (alpha|2> - beta|4>)
rho = reduced_ac(tc_tripartite_state(TCParams.from_alpha(alpha, n=2), tc_time(2, 0.5)))
target = np.kron([1, 0], [0, 0, alpha, 0, -alpha])
print(f"fidelity with |g>(alpha|2> - beta|4>) at tau = 1/2: {np.real(target @ rho @ target):.4f}")

check = run_sweep(SweepConfig(model="tavis_cummings", alpha=alpha, n=2, points=60, oracle=True))
print(f"oracle cross-check on 60 points: max |gap| = {np.max(abs(check.column('oracle_gap'))):.1e} bits")
