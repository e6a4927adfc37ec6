"""Reference entanglement quantities: Wootters EoF, pure-state EoF and a
trace-norm lower bound for 2 x d states."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    TOL,
    binary_entropy,
    check_density_matrix,
    partial_transpose,
    realign,
    trace_norm,
)

_SYSY = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))


def eof_from_concurrence(c: float) -> float:
    c = min(max(float(c), 0.0), 1.0)
    if c == 0.0:
        return 0.0
    return binary_entropy((1 + np.sqrt(1 - c * c)) / 2)


def concurrence(rho_ab) -> float:
    """Wootters concurrence of a two-qubit density matrix."""
    rho = check_density_matrix(rho_ab)
    if rho.shape != (4, 4):
        raise ValueError("concurrence needs a 4x4 matrix")
    w, v = np.linalg.eigh(rho)
    sqrt_rho = (v * np.sqrt(np.clip(w, 0, None))) @ v.conj().T
    tilde = _SYSY @ rho.conj() @ _SYSY
    r = sqrt_rho @ tilde @ sqrt_rho
    ev = np.linalg.eigvalsh(0.5 * (r + r.conj().T))
    # round-off eigenvalues would otherwise leak in at the 1e-8 level via the sqrt
    lam = np.sqrt(np.where(ev > TOL.eigenvalue_floor, ev, 0.0))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def wootters_eof(rho_ab) -> float:
    return eof_from_concurrence(concurrence(rho_ab))


def pure_state_eof_2xd(psi_ac, dims) -> float:
    """Entropy of the qubit marginal of a pure 2 x d state."""
    psi = np.asarray(psi_ac, dtype=complex).ravel()
    norm = np.vdot(psi, psi).real
    if abs(norm - 1.0) > 1e-8:
        raise ValueError(f"state not normalised (norm^2 = {norm!r})")
    dims = list(dims)
    if dims[0] != 2 or len(dims) != 2:
        raise ValueError("expected dims [2, d]")
    m = psi.reshape(dims)
    rho_a = m @ m.conj().T
    lam = np.linalg.eigvalsh(rho_a)[0]
    return binary_entropy(min(max(lam, 0.0), 1.0))


@dataclass(frozen=True)
class BoundReport:
    eof_lower: float
    ppt_trace_norm: float
    realignment_trace_norm: float

    @property
    def concurrence_lower(self) -> float:
        return min(max(self.ppt_trace_norm - 1.0, self.realignment_trace_norm - 1.0, 0.0), 1.0)


def caf_lower_bound(rho_ac, dims) -> BoundReport:
    """EoF lower bound from the PPT and realignment trace norms.

    For a 2 x d state with L = max(||rho^T_B||_1, ||R(rho)||_1), the bound is
    H2((1 + sqrt(1 - c^2))/2) with c = L - 1 clipped to [0, 1]; this function
    of c is already convex so no convex hull is needed.
    """
    rho = check_density_matrix(rho_ac)
    dims = list(dims)
    if len(dims) != 2 or dims[0] != 2:
        raise ValueError("expected dims [2, d]")
    ppt = trace_norm(partial_transpose(rho, dims, 1))
    ren = trace_norm(realign(rho, dims))
    report = BoundReport(0.0, ppt, ren)
    return BoundReport(eof_from_concurrence(report.concurrence_lower), ppt, ren)
