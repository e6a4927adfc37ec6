"""X states, measured conditional entropy and the correlation quantities.

Qubit labels: ``g`` is index 0 and ``e`` is index 1.  Two-qubit basis order is
|gg>, |ge>, |eg>, |ee> (first letter is qubit A), so an X state has
populations rho00..rho33 and the coherences rho03 = <gg|rho|ee> and
rho12 = <ge|rho|eg>.

For a pure state on A(2) x B(2) x C(d) the entanglement of formation between
A and C equals the smallest entropy of A left after a projective measurement
on B.  The X form makes the candidate minimisers available in closed form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .linalg import (
    TOL,
    DimSpec,
    binary_entropy,
    check_density_matrix,
    ket2dm,
    partial_trace,
    von_neumann_entropy,
)
from .oracle import (
    OptimizerConfig,
    scalar_evaluator,
    conditional_blocks,
    entropy_along,
    minimize_conditional_entropy,
)

TIE_TOL = 1e-12


class XFormViolation(ValueError):
    """The C-factors are not orthogonal enough for an X-form reduction."""

    def __init__(self, overlap: float):
        super().__init__(f"X-form condition violated: largest overlap {overlap:.3e}")
        self.overlap = overlap


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class TripartiteState:
    """Pure state on A(2) x B(2) x C(d).

    ``amplitudes[a, b, c]`` is the coefficient of |a>_A |b>_B |c>_C.  The four
    C-blocks ``amplitudes[a, b]`` are the unnormalised factors c_ab |psi_ab>.
    """

    amplitudes: np.ndarray
    labels: tuple = field(default=(), compare=False)

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        if amp.ndim == 1:
            if amp.size % 4:
                raise ValueError("flat amplitude vector length must be a multiple of 4")
            amp = amp.reshape(2, 2, -1)
        if amp.ndim != 3 or amp.shape[:2] != (2, 2):
            raise ValueError(f"amplitudes must have shape (2, 2, d), got {amp.shape}")
        norm = float(np.sum(np.abs(amp) ** 2))
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"state not normalised (norm^2 = {norm!r})")
        object.__setattr__(self, "amplitudes", _frozen(amp))

    @classmethod
    def from_vector(cls, psi, dC: int, labels=()) -> "TripartiteState":
        return cls(np.asarray(psi, dtype=complex).reshape(2, 2, dC), labels)

    @property
    def dims(self) -> DimSpec:
        return DimSpec(dC=self.amplitudes.shape[2])

    @property
    def vector(self) -> np.ndarray:
        return self.amplitudes.reshape(-1)

    def density(self) -> np.ndarray:
        return ket2dm(self.vector)

    def reduced(self, keep) -> np.ndarray:
        """Reduced density matrix; subsystems are 0 = A, 1 = B, 2 = C."""
        return partial_trace(self.density(), self.dims.as_list(), keep)

    def block(self, ab: str) -> np.ndarray:
        """Unnormalised C-factor for the A,B labels, e.g. ``block("ge")``."""
        idx = {"g": 0, "e": 1}
        return self.amplitudes[idx[ab[0]], idx[ab[1]]]

    def x_form_overlap(self) -> float:
        """Largest of |<psi_gg|psi_ge>|, |<psi_gg|psi_eg>|, |<psi_ee|psi_ge>|, |<psi_ee|psi_eg>|."""
        pairs = [("gg", "ge"), ("gg", "eg"), ("ee", "ge"), ("ee", "eg")]
        return max(abs(np.vdot(self.block(u), self.block(v))) for u, v in pairs)


@dataclass(frozen=True)
class XState:
    rho00: float
    rho11: float
    rho22: float
    rho33: float
    rho03: complex = 0j
    rho12: complex = 0j

    def __post_init__(self):
        pops = np.array([self.rho00, self.rho11, self.rho22, self.rho33], dtype=float)
        if pops.min() < -1e-10:
            raise ValueError(f"negative population in {pops}")
        if abs(pops.sum() - 1.0) > 1e-10:
            raise ValueError(f"populations sum to {pops.sum()!r}")
        if abs(self.rho03) ** 2 > self.rho00 * self.rho33 + 1e-10:
            raise ValueError("|rho03|^2 exceeds rho00*rho33")
        if abs(self.rho12) ** 2 > self.rho11 * self.rho22 + 1e-10:
            raise ValueError("|rho12|^2 exceeds rho11*rho22")

    @classmethod
    def from_matrix(cls, m, tol: float = 1e-10) -> "XState":
        m = np.asarray(m, dtype=complex)
        mask = np.ones((4, 4), dtype=bool)
        for i, j in [(0, 0), (1, 1), (2, 2), (3, 3), (0, 3), (3, 0), (1, 2), (2, 1)]:
            mask[i, j] = False
        off = float(np.max(np.abs(m[mask])))
        if off > tol:
            raise XFormViolation(off)
        return cls(m[0, 0].real, m[1, 1].real, m[2, 2].real, m[3, 3].real, complex(m[0, 3]), complex(m[1, 2]))

    def matrix(self) -> np.ndarray:
        m = np.diag([self.rho00, self.rho11, self.rho22, self.rho33]).astype(complex)
        m[0, 3], m[3, 0] = self.rho03, np.conj(self.rho03)
        m[1, 2], m[2, 1] = self.rho12, np.conj(self.rho12)
        return m

    def swapped(self) -> "XState":
        """Same state after flipping both qubits (g <-> e)."""
        return XState(
            self.rho33, self.rho22, self.rho11, self.rho00,
            np.conj(self.rho03), np.conj(self.rho12),
        )

    def reduced_a(self) -> np.ndarray:
        return np.diag([self.rho00 + self.rho11, self.rho22 + self.rho33]).astype(complex)

    def reduced_b(self) -> np.ndarray:
        return np.diag([self.rho00 + self.rho22, self.rho11 + self.rho33]).astype(complex)


@dataclass(frozen=True)
class MeasurementEnsemble:
    """Outcome probabilities and conditional states of A after measuring B."""

    p0: float
    p1: float
    rho0: np.ndarray
    rho1: np.ndarray


@dataclass(frozen=True)
class ThetaCandidate:
    """Extremal measurement summarised by the conditional Bloch lengths.

    Outcome 0 (probability ``p0``) leaves A with eigenvalues (1 +/- theta)/2,
    outcome 1 with (1 +/- theta_prime)/2.
    """

    label: str
    theta: float
    theta_prime: float
    p0: float

    def __post_init__(self):
        for name in ("theta", "theta_prime"):
            v = getattr(self, name)
            if not -1e-10 <= v <= 1 + 1e-10:
                raise ValueError(f"{name}={v!r} outside [0, 1]")
        if not -1e-12 <= self.p0 <= 1 + 1e-12:
            raise ValueError(f"p0={self.p0!r} outside [0, 1]")

    @property
    def entropy(self) -> float:
        p0 = min(max(self.p0, 0.0), 1.0)
        h0 = binary_entropy(min(max((1 + self.theta) / 2, 0.0), 1.0))
        h1 = binary_entropy(min(max((1 + self.theta_prime) / 2, 0.0), 1.0))
        return p0 * h0 + (1 - p0) * h1


def _ratio(num: float, den: float) -> float:
    # an outcome that never happens has no entropy; report it as pure
    return 1.0 if den < TOL.eigenvalue_floor else min(abs(num) / den, 1.0)


def xstate_reduction(psi: TripartiteState, tol: float = 1e-10) -> XState:
    overlap = psi.x_form_overlap()
    if overlap > tol:
        raise XFormViolation(overlap)
    return XState.from_matrix(psi.reduced([0, 1]), tol=tol)


def conditional_entropy_for_measurement(x, direction) -> tuple[float, MeasurementEnsemble]:
    """Measure B along ``direction`` and return p0 S(rho0) + p1 S(rho1).

    ``x`` may be an :class:`XState` or any 4x4 two-qubit density matrix.
    """
    n = np.asarray(direction, dtype=float)
    if abs(np.linalg.norm(n) - 1.0) > 1e-10:
        raise ValueError("measurement direction must be a unit vector")
    m = x.matrix() if isinstance(x, XState) else check_density_matrix(x)
    blocks = conditional_blocks(m)
    nsig = np.einsum("i,iab->ab", n, blocks[1:])
    value = 0.0
    probs, states = [], []
    for sign in (1.0, -1.0):
        un = 0.5 * (blocks[0] + sign * nsig)
        p = float(np.trace(un).real)
        probs.append(p)
        if p < TOL.eigenvalue_floor:
            states.append(np.eye(2, dtype=complex) / 2)
            continue
        rho = un / p
        rho = 0.5 * (rho + rho.conj().T)
        states.append(rho)
        value += p * von_neumann_entropy(rho)
    return value, MeasurementEnsemble(probs[0], probs[1], states[0], states[1])


def z_candidate(x: XState) -> ThetaCandidate:
    p0 = x.rho00 + x.rho22
    p1 = x.rho11 + x.rho33
    return ThetaCandidate("z", _ratio(x.rho00 - x.rho22, p0), _ratio(x.rho11 - x.rho33, p1), min(max(p0, 0.0), 1.0))


def equatorial_candidate(x: XState, azimuth: float, label: str) -> ThetaCandidate:
    # measuring along (cos phi, sin phi, 0) leaves A with off-diagonal
    # (e^{i phi} rho03 + e^{-i phi} rho12) and p0 = p1 = 1/2
    dz = x.rho00 + x.rho11 - x.rho22 - x.rho33
    off = np.exp(1j * azimuth) * x.rho03 + np.exp(-1j * azimuth) * x.rho12
    theta = min(float(np.hypot(dz, 2 * abs(off))), 1.0)
    return ThetaCandidate(label, theta, theta, 0.5)


def optimal_azimuth(x: XState) -> float:
    """Azimuth that maximises the conditional coherence for every polar angle."""
    return float(0.5 * (np.angle(x.rho12) - np.angle(x.rho03)))


def _candidate_from_direction(rho_ab, n, label: str) -> ThetaCandidate:
    _, ens = conditional_entropy_for_measurement(rho_ab, n)
    theta = [min(abs(1 - 2 * np.linalg.eigvalsh(r)[0]), 1.0) for r in (ens.rho0, ens.rho1)]
    return ThetaCandidate(label, theta[0], theta[1], min(max(ens.p0, 0.0), 1.0))


def oblique_candidate(x: XState, grid_points: int = 181) -> ThetaCandidate:
    """Best measurement at the optimal azimuth over all polar angles.

    For an X state the conditional populations depend on the polar angle only
    and the coherence is largest at :func:`optimal_azimuth` whatever the polar
    angle, so the full minimisation is one-dimensional.  Near the points where
    the z and equatorial entropies cross, the minimum often sits strictly
    between the poles and the equator.
    """
    m = x.matrix()
    blocks = conditional_blocks(m)
    phi = optimal_azimuth(x)
    c, s = math.cos(phi), math.sin(phi)

    def direction(th):
        return np.array([np.sin(th) * c, np.sin(th) * s, np.cos(th)])

    thetas = np.linspace(0.0, np.pi / 2, grid_points)
    dirs = np.stack([np.sin(thetas) * c, np.sin(thetas) * s, np.cos(thetas)], axis=1)
    values = entropy_along(blocks, dirs)
    i = int(np.argmin(values))
    best_th, best_v = thetas[i], values[i]
    lo, hi = thetas[max(i - 1, 0)], thetas[min(i + 1, grid_points - 1)]
    f = scalar_evaluator(blocks)
    res = minimize_scalar(
        lambda th: f(math.sin(th) * c, math.sin(th) * s, math.cos(th)),
        bounds=(lo, hi), method="bounded", options={"xatol": 1e-12},
    )
    if res.fun < best_v:
        best_th, best_v = float(res.x), float(res.fun)
    return _candidate_from_direction(m, direction(best_th), "oblique")


EXTREMAL_LABELS = ("x", "y", "z", "xy")


def xstate_candidates(
    x: XState, oblique: bool = True, refine: bool = False, cfg: OptimizerConfig | None = None
) -> list[ThetaCandidate]:
    """Candidate measurements for an X state.

    x, y and z always; the best equatorial azimuth ``xy`` when the coherence
    phases are not aligned with x or y; the interior minimiser ``oblique``;
    and, with ``refine``, the direction found by the brute-force oracle.
    """
    cands = [equatorial_candidate(x, 0.0, "x"), equatorial_candidate(x, np.pi / 2, "y"), z_candidate(x)]
    cross = x.rho03 * np.conj(x.rho12)
    if abs(cross.imag) > TIE_TOL:
        cands.append(equatorial_candidate(x, optimal_azimuth(x), "xy"))
    if oblique:
        cands.append(oblique_candidate(x))
    if refine:
        cands.append(oracle_candidate(x.matrix(), cfg))
    return cands


def oracle_candidate(rho_ab, cfg: OptimizerConfig | None = None) -> ThetaCandidate:
    _, n = minimize_conditional_entropy(rho_ab, cfg)
    return _candidate_from_direction(rho_ab, n, "oracle")


def eof_xstate(x: XState, candidates: Sequence[ThetaCandidate] | None = None) -> tuple[float, str]:
    """Smallest candidate conditional entropy and the label achieving it.

    Values within ``TIE_TOL`` of the minimum go to the earliest candidate.
    """
    if candidates is None:
        candidates = xstate_candidates(x)
    if not candidates:
        raise ValueError("no candidates supplied")
    values = [c.entropy for c in candidates]
    lowest = min(values)
    for c, v in zip(candidates, values):
        if v <= lowest + TIE_TOL:
            return v, c.label
    raise AssertionError("unreachable")


def classical_correlation(x: XState, optimizer_result: float) -> float:
    """J(A|B) = S(A) - min conditional entropy."""
    j = von_neumann_entropy(x.reduced_a()) - optimizer_result
    if j < -1e-9:
        raise ValueError(f"negative classical correlation {j:.3e}: minimiser failed")
    return max(j, 0.0)


def mutual_information(x: XState) -> float:
    return (
        von_neumann_entropy(x.reduced_a())
        + von_neumann_entropy(x.reduced_b())
        - von_neumann_entropy(x.matrix())
    )


def quantum_discord(x: XState, min_conditional: float | None = None, refine: bool = False) -> float:
    """Mutual information minus classical correlation, measuring B."""
    if min_conditional is None:
        min_conditional, _ = eof_xstate(x, xstate_candidates(x, refine=refine))
    d = mutual_information(x) - classical_correlation(x, min_conditional)
    if d < -1e-9:
        raise ValueError(f"negative discord {d:.3e}")
    return max(d, 0.0)


@dataclass(frozen=True)
class KWResult:
    eof: float
    classical_correlation: float
    entropy_a: float
    winner: str
    residual: float


def koashi_winter_eof(
    psi: TripartiteState, refine: bool = False, cfg: OptimizerConfig | None = None
) -> KWResult:
    """Entanglement of formation between A and C of a pure ABC state.

    X-form reductions use the closed-form candidates (plus the oracle when
    ``refine``); anything else goes straight to the oracle.
    """
    rho_ab = psi.reduced([0, 1])
    s_a = von_neumann_entropy(psi.reduced([0]))
    try:
        x = xstate_reduction(psi)
    except XFormViolation:
        x = None
    if x is not None:
        eof, winner = eof_xstate(x, xstate_candidates(x, refine=refine, cfg=cfg))
    else:
        eof, _ = minimize_conditional_entropy(rho_ab, cfg)
        winner = "oracle"
    cc = s_a - eof
    if cc < -1e-9:
        raise ValueError(f"negative classical correlation {cc:.3e}")
    return KWResult(eof, cc, s_a, winner, abs(eof + cc - s_a))
