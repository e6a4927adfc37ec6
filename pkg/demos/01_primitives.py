"""
Density-matrix primitives
=========================

Partial traces, partial transposes, realignment and entropies on a few
textbook two-qubit states.  Everything is a plain numpy array.
"""
import math

import numpy as np

from eof2xd.linalg import ket2dm, partial_trace, partial_transpose, realign, trace_norm, von_neumann_entropy
from eof2xd.bounds import caf_lower_bound, concurrence, wootters_eof

singlet = np.array([0, 1, -1, 0]) / math.sqrt(2)
rho = ket2dm(singlet)

# the reduced state of either half of a singlet is maximally mixed
print("rho_A of the singlet:\n", partial_trace(rho, [2, 2], [0]).real)
print("S(rho_A) =", von_neumann_entropy(partial_trace(rho, [2, 2], [0])), "bits")

# the partial transpose has a negative eigenvalue -1/2, so its trace norm is 2
pt = partial_transpose(rho, [2, 2])
print("eigenvalues of rho^T_B:", np.round(np.linalg.eigvalsh(pt), 12))
print("||rho^T_B||_1 =", trace_norm(pt), "  ||R(rho)||_1 =", trace_norm(realign(rho, [2, 2])))

# Werner states: mix the singlet with white noise
print("\n  p    concurrence  Wootters EoF  trace-norm bound")
for p in (0.2, 1 / 3, 0.5, 0.8, 1.0):
    w = p * rho + (1 - p) * np.eye(4) / 4
    print(f"{p:5.3f}  {concurrence(w):11.6f}  {wootters_eof(w):12.6f}  {caf_lower_bound(w, [2, 2]).eof_lower:16.6f}")

# for two qubits the bound is tight on Werner states; for 2 x d with d > 2 it is only a bound
