"""
EoF of a 2 x d state from a two-qubit measurement problem
=========================================================

For a pure state on A (qubit), B (qubit) and C (qudit), the entanglement of
formation between A and C equals the smallest conditional entropy of A left
after a projective measurement on B.  When the AB reduction is an X state a
handful of closed-form measurement directions is enough; the brute-force
oracle scans the whole Bloch sphere to confirm it.
"""
import numpy as np

from eof2xd.oracle import minimize_conditional_entropy
from eof2xd.xstate import (
    TripartiteState,
    eof_xstate,
    koashi_winter_eof,
    quantum_discord,
    xstate_candidates,
    xstate_reduction,
)

rng = np.random.default_rng(3)

# build a random A x B x C state (d = 4) whose C-factors make rho_AB an X state:
# the gg/ee factors live in C-levels {0, 1}, the ge/eg factors in {2, 3}
amp = np.zeros((2, 2, 4), dtype=complex)
amp[0, 0, :2], amp[1, 1, :2] = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
amp[0, 1, 2:], amp[1, 0, 2:] = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
psi = TripartiteState(amp / np.linalg.norm(amp))

x = xstate_reduction(psi)
print("rho_AB populations:", np.round([x.rho00, x.rho11, x.rho22, x.rho33], 4))
print("coherences rho03, rho12:", np.round(x.rho03, 4), np.round(x.rho12, 4))

print("\ncandidate     theta   theta'    p0    S(A|B)")
for c in xstate_candidates(x):
    print(f"{c.label:8s}  {c.theta:7.4f}  {c.theta_prime:7.4f}  {c.p0:5.3f}  {c.entropy:.8f}")

eof, winner = eof_xstate(x)
best, direction = minimize_conditional_entropy(x.matrix())
print(f"\nclosed-form minimum {eof:.10f} ({winner}); oracle {best:.10f} along {np.round(direction, 4)}")

res = koashi_winter_eof(psi)
print(f"E_AC = {res.eof:.6f}, J(A|B) = {res.classical_correlation:.6f}, S_A = {res.entropy_a:.6f}")
print(f"identity residual |E + J - S_A| = {res.residual:.1e}")
print(f"discord of rho_AB = {quantum_discord(x):.6f}")
