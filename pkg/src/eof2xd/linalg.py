"""Dense linear algebra and entropy primitives for small composite systems.

Matrices are plain complex ``numpy`` arrays.  Nothing here mutates its
inputs; every function returns a fresh array.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class Tolerances:
    """Numerical slack used when validating density matrices."""

    hermitian: float = 1e-12
    trace: float = 1e-12
    min_eigenvalue: float = -1e-10
    eigenvalue_floor: float = 1e-14
    entropy_trace: float = 1e-8
    eig_input_hermitian: float = 1e-10


TOL = Tolerances()


class DensityMatrixError(ValueError):
    """Raised when a matrix fails the density-matrix checks."""


@dataclass(frozen=True)
class DimSpec:
    """Subsystem dimensions of a qubit-qubit-qudit system."""

    dC: int
    dA: int = 2
    dB: int = 2

    def __post_init__(self):
        if self.dA != 2 or self.dB != 2:
            raise ValueError("subsystems A and B must be qubits")
        if self.dC < 1:
            raise ValueError(f"dC must be >= 1, got {self.dC}")

    @property
    def total(self) -> int:
        return self.dA * self.dB * self.dC

    def as_list(self) -> list[int]:
        return [self.dA, self.dB, self.dC]


def _square(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def kron(a, b) -> np.ndarray:
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def ket2dm(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).ravel()
    return np.outer(psi, psi.conj())


def _check_dims(rho: np.ndarray, dims: Sequence[int]) -> list[int]:
    dims = [int(d) for d in dims]
    if any(d < 1 for d in dims):
        raise ValueError(f"dimensions must be positive: {dims}")
    if int(np.prod(dims)) != rho.shape[0]:
        raise ValueError(
            f"dims {dims} (product {int(np.prod(dims))}) do not match matrix size {rho.shape[0]}"
        )
    return dims


def partial_trace(rho, dims: Sequence[int], keep) -> np.ndarray:
    """Reduce ``rho`` onto the subsystems listed in ``keep``.

    Kept subsystems appear in ascending index order in the result.
    """
    rho = _square(rho)
    dims = _check_dims(rho, dims)
    keep = sorted({int(k) for k in np.atleast_1d(keep)})
    n = len(dims)
    if any(k < 0 or k >= n for k in keep):
        raise ValueError(f"keep indices {keep} out of range for {n} subsystems")
    traced = [i for i in range(n) if i not in keep]
    t = rho.reshape(dims + dims)
    letters = "abcdefghijklmnopqrstuvwxyz"
    row = list(letters[:n])
    col = list(letters[n : 2 * n])
    for i in traced:
        col[i] = row[i]
    out = "".join(row[i] for i in keep) + "".join(col[i] for i in keep)
    red = np.einsum("".join(row) + "".join(col) + "->" + out, t)
    d = int(np.prod([dims[i] for i in keep])) if keep else 1
    return red.reshape(d, d)


def partial_transpose(rho, dims: Sequence[int], subsystem: int = 1) -> np.ndarray:
    rho = _square(rho)
    dims = _check_dims(rho, dims)
    n = len(dims)
    if not 0 <= subsystem < n:
        raise ValueError(f"subsystem {subsystem} out of range")
    t = rho.reshape(dims + dims)
    axes = list(range(2 * n))
    axes[subsystem], axes[n + subsystem] = axes[n + subsystem], axes[subsystem]
    return t.transpose(axes).reshape(rho.shape)


def realign(rho, dims: Sequence[int]) -> np.ndarray:
    """Realignment R[(i,i'),(j,j')] = rho[(i,j),(i',j')] of a bipartite matrix."""
    rho = _square(rho)
    dims = _check_dims(rho, dims)
    if len(dims) != 2:
        raise ValueError("realignment needs exactly two subsystems")
    da, db = dims
    t = rho.reshape(da, db, da, db)
    return t.transpose(0, 2, 1, 3).reshape(da * da, db * db)


def is_hermitian(m, tol: float = TOL.hermitian) -> bool:
    m = _square(m)
    return bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= tol)


def hermitian_eigenvalues(m, tol: float = TOL.eig_input_hermitian) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix.

    2x2 inputs use the closed form, larger ones LAPACK ``eigvalsh``.
    """
    m = _square(m)
    if not is_hermitian(m, tol):
        raise ValueError("matrix is not Hermitian")
    if m.shape[0] == 2:
        a, d = m[0, 0].real, m[1, 1].real
        half = 0.5 * np.hypot(a - d, 2 * abs(m[0, 1]))
        mid = 0.5 * (a + d)
        return np.array([mid - half, mid + half])
    return np.linalg.eigvalsh(0.5 * (m + m.conj().T))


def trace_norm(m) -> float:
    """Sum of singular values.

    Taken from an SVD rather than sqrt(eig(M^dag M)): the square root turns
    round-off eigenvalues of order 1e-17 into 1e-8 errors.
    """
    m = np.asarray(m, dtype=complex)
    if m.size == 0:
        return 0.0
    return float(np.sum(np.linalg.svd(m, compute_uv=False)))


def check_density_matrix(rho, tol: Tolerances = TOL) -> np.ndarray:
    """Return ``rho`` as an array or raise :class:`DensityMatrixError`."""
    rho = _square(rho)
    herm = np.max(np.abs(rho - rho.conj().T), initial=0.0)
    if herm > tol.hermitian:
        raise DensityMatrixError(f"not Hermitian (max deviation {herm:.3e})")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > tol.trace:
        raise DensityMatrixError(f"trace {tr!r} differs from 1")
    lo = hermitian_eigenvalues(rho)[0]
    if lo < tol.min_eigenvalue:
        raise DensityMatrixError(f"negative eigenvalue {lo:.3e}")
    return rho


def _entropy_from_eigenvalues(ev: np.ndarray, floor: float = TOL.eigenvalue_floor) -> float:
    ev = np.asarray(ev, dtype=float)
    ev = ev[ev > floor]
    return float(-np.sum(ev * np.log2(ev)))


def von_neumann_entropy(rho) -> float:
    """Entropy in bits; eigenvalues below 1e-14 count as zero."""
    rho = _square(rho)
    tr = np.trace(rho).real
    if abs(tr - 1.0) > TOL.entropy_trace:
        raise DensityMatrixError(f"trace {tr!r} differs from 1")
    return _entropy_from_eigenvalues(hermitian_eigenvalues(rho))


def binary_entropy(p: float) -> float:
    if p < -1e-12 or p > 1 + 1e-12:
        raise ValueError(f"probability {p!r} outside [0, 1]")
    p = min(max(float(p), 0.0), 1.0)
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return float(-p * np.log2(p) - (1 - p) * np.log2(1 - p))


def binary_entropy_array(p) -> np.ndarray:
    """Vectorised :func:`binary_entropy` without range checks."""
    p = np.clip(np.asarray(p, dtype=float), 0.0, 1.0)
    out = np.zeros_like(p)
    m = (p > 0.0) & (p < 1.0)
    q = p[m]
    out[m] = -q * np.log2(q) - (1 - q) * np.log2(1 - q)
    return out


def random_density_matrix(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Ginibre-distributed density matrix, handy for property tests and demos."""
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))
