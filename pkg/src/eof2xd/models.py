"""Closed-form dynamics of the two physical scenarios and their integrator checks.

Two-atom Tavis-Cummings
    H = g[(s_A + s_B) a^dag + (s_A^dag + s_B^dag) a], initial state
    (alpha|gg> + beta|ee>)|n>.  The motion stays in the six states
    |gg,n+2>, |+,n+1>, |ee,n>, |gg,n>, |+,n-1>, |ee,n-2> with
    |+> = (|eg> + |ge>)/sqrt(2).

Common vacuum reservoir
    d rho/dt = (gamma/2)(2 J rho J^dag - J^dag J rho - rho J^dag J),
    J = s_A + s_B, initial state (alpha|gg> + beta|ee>)|0>.  With the
    reservoir kept explicitly it only occupies the collective states with
    0, 1 and 2 excitations.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import ket2dm, partial_trace
from .xstate import ThetaCandidate, TripartiteState, XState

SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class TCParams:
    alpha: float
    beta: float
    n: int = 0
    g: float = 1.0

    def __post_init__(self):
        if abs(self.alpha**2 + self.beta**2 - 1.0) > 1e-12:
            raise ValueError("alpha^2 + beta^2 must equal 1")
        if self.n < 0 or int(self.n) != self.n:
            raise ValueError(f"photon number must be a non-negative integer, got {self.n}")

    @classmethod
    def from_alpha(cls, alpha: float, n: int = 0, g: float = 1.0) -> "TCParams":
        return cls(alpha, float(np.sqrt(max(1.0 - alpha * alpha, 0.0))), n, g)


@dataclass(frozen=True)
class TCAmplitudes:
    c1: complex
    c2: complex
    c3: complex
    c4: complex
    c5: complex
    c6: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.c1, self.c2, self.c3, self.c4, self.c5, self.c6], dtype=complex)

    @property
    def norm2(self) -> float:
        return float(np.sum(np.abs(self.as_array()) ** 2))


@dataclass(frozen=True)
class ReservoirParams:
    alpha: float
    beta: float
    gamma: float = 1.0

    def __post_init__(self):
        if abs(self.alpha**2 + self.beta**2 - 1.0) > 1e-12:
            raise ValueError("alpha^2 + beta^2 must equal 1")
        if self.gamma <= 0:
            raise ValueError("gamma must be positive")

    @classmethod
    def from_alpha(cls, alpha: float, gamma: float = 1.0) -> "ReservoirParams":
        return cls(alpha, float(np.sqrt(max(1.0 - alpha * alpha, 0.0))), gamma)


@dataclass(frozen=True)
class ReservoirAmplitudes:
    """Amplitudes of |ee,0>, |+,1> and |gg,2> (the |gg,0> amplitude stays alpha)."""

    c1: float
    c2: float
    c3: float


# --- Tavis-Cummings ---------------------------------------------------------

def tc_frequencies(n: int, g: float = 1.0) -> tuple[float, float]:
    """Rabi frequencies of the upper (from |ee,n>) and lower (from |gg,n>) ladders."""
    upper = np.sqrt(2 * (2 * n + 3)) * g
    lower = np.sqrt(2 * (2 * n - 1)) * g if n >= 1 else 0.0
    return float(upper), float(lower)


def tc_tau_scale(n: int) -> float:
    """Factor k in tau = k g t.

    n = 0 uses one period of the single Rabi frequency, sqrt(6)/(2 pi).
    n >= 1 uses three upper-ladder periods, sqrt(2(2n+3))/(6 pi), which for
    n = 2 is close to a joint revival of both ladders.
    """
    upper, _ = tc_frequencies(n)
    return upper / (2 * np.pi) if n == 0 else upper / (6 * np.pi)


def tc_time(n: int, tau: float, g: float = 1.0) -> float:
    return tau / (tc_tau_scale(n) * g)


def tc_amplitudes(p: TCParams, t: float) -> TCAmplitudes:
    n, a, b = p.n, p.alpha, p.beta
    up, low = tc_frequencies(n, p.g)
    cu, su = np.cos(up * t), np.sin(up * t)
    k = 2 * n + 3
    c1 = -b * np.sqrt((n + 1) * (n + 2)) / k * (1 - cu)
    c2 = -1j * b * np.sqrt(n + 1) / np.sqrt(k) * su
    c3 = b * (1 - (n + 1) / k * (1 - cu))
    if n == 0:
        c4, c5, c6 = a, 0j, 0.0
    else:
        cl, sl = np.cos(low * t), np.sin(low * t)
        m = 2 * n - 1
        c4 = a * (1 - n / m * (1 - cl))
        c5 = -1j * a * np.sqrt(n) / np.sqrt(m) * sl
        c6 = -a * np.sqrt(n * (n - 1)) / m * (1 - cl)
    return TCAmplitudes(complex(c1), complex(c2), complex(c3), complex(c4), complex(c5), complex(c6))


def tc_fock_window(n: int) -> list[int]:
    """Photon numbers spanned by the cavity during the evolution."""
    return list(range(max(n - 2, 0), n + 3))


def tc_tripartite_state(p: TCParams, t: float) -> TripartiteState:
    c = tc_amplitudes(p, t)
    fock = tc_fock_window(p.n)
    col = {m: i for i, m in enumerate(fock)}
    amp = np.zeros((2, 2, len(fock)), dtype=complex)
    n = p.n
    amp[0, 0, col[n + 2]] += c.c1
    amp[0, 1, col[n + 1]] += c.c2 / SQRT2
    amp[1, 0, col[n + 1]] += c.c2 / SQRT2
    amp[1, 1, col[n]] += c.c3
    amp[0, 0, col[n]] += c.c4
    if n >= 1:
        amp[0, 1, col[n - 1]] += c.c5 / SQRT2
        amp[1, 0, col[n - 1]] += c.c5 / SQRT2
    if n >= 2:
        amp[1, 1, col[n - 2]] += c.c6
    # renormalise away the ~1e-16 rounding of the closed forms
    amp /= np.sqrt(np.sum(np.abs(amp) ** 2))
    return TripartiteState(amp, labels=tuple(fock))


def tc_xstate_elements(a: TCAmplitudes) -> XState:
    plus = (abs(a.c2) ** 2 + abs(a.c5) ** 2) / 2
    # <gg|rho|ee>: the |gg> and |ee> branches share only the |n> photon state
    return XState(
        abs(a.c1) ** 2 + abs(a.c4) ** 2,
        plus,
        plus,
        abs(a.c3) ** 2 + abs(a.c6) ** 2,
        a.c4 * np.conj(a.c3),
        plus,
    )


def tc_theta_candidates_n0(p: TCParams, a: TCAmplitudes) -> list[ThetaCandidate]:
    """Closed-form x and z measurement candidates for the vacuum cavity."""
    if p.n != 0:
        raise ValueError("closed-form candidates exist only for n = 0")
    al = p.alpha
    c1, c3 = a.c1.real, a.c3.real
    half = 0.5 * abs(a.c2) ** 2
    theta1 = np.sqrt((al**2 + c1**2 - c3**2) ** 2 + 4 * (al * c3 + half) ** 2)
    up = al**2 + c1**2
    theta2 = abs(up - half) / (up + half) if up + half > 0 else 1.0
    theta2p = abs(c3**2 - half) / (c3**2 + half) if c3**2 + half > 0 else 1.0
    return [
        ThetaCandidate("x", min(float(theta1), 1.0), min(float(theta1), 1.0), 0.5),
        ThetaCandidate("z", float(theta2), float(theta2p), float(min(up + half, 1.0))),
    ]


# --- common reservoir -------------------------------------------------------

def reservoir_amplitudes(p: ReservoirParams, t: float) -> ReservoirAmplitudes:
    """Amplitudes that solve the collective-decay master equation.

    |ee> and |+> both decay at population rate 2 gamma and |ee> feeds |+>, so
    the |+> population is 2 gamma t beta^2 e^{-2 gamma t}.
    """
    gt = p.gamma * t
    c1 = p.beta * np.exp(-gt)
    c2 = p.beta * np.exp(-gt) * np.sqrt(2 * gt)
    arg = 1 - p.alpha**2 - c1**2 - c2**2
    if arg < -1e-12:
        raise ValueError(f"normalisation violated (c3^2 = {arg:.3e})")
    return ReservoirAmplitudes(float(c1), float(c2), float(np.sqrt(max(arg, 0.0))))


def reservoir_tripartite_state(p: ReservoirParams, t: float) -> TripartiteState:
    c = reservoir_amplitudes(p, t)
    amp = np.zeros((2, 2, 3), dtype=complex)
    amp[0, 0, 0] = p.alpha
    amp[1, 1, 0] = c.c1
    amp[0, 1, 1] = amp[1, 0, 1] = c.c2 / SQRT2
    amp[0, 0, 2] = c.c3
    amp /= np.sqrt(np.sum(np.abs(amp) ** 2))
    return TripartiteState(amp, labels=(0, 1, 2))


def reservoir_xstate_elements(p: ReservoirParams, a: ReservoirAmplitudes) -> XState:
    plus = a.c2**2 / 2
    return XState(p.alpha**2 + a.c3**2, plus, plus, a.c1**2, p.alpha * a.c1, plus)


def reservoir_theta_candidates(p: ReservoirParams, t: float) -> list[ThetaCandidate]:
    """x and z measurement candidates written directly in gamma t.

    With u = e^{-2 gamma t}, s = 2 gamma t:
    x: theta = sqrt((1 - 2 b^2 u - b^2 u s)^2 + (2 a b sqrt(u) + b^2 u s)^2), p0 = 1/2
    z: p0 = 1 - b^2 u (1 + s/2),
       theta  = |1 - b^2 u (1 + 3s/2)| / p0,
       theta' = |2 - s| / (2 + s)
    """
    a, b = p.alpha, p.beta
    gt = p.gamma * t
    u = np.exp(-2 * gt)
    s = 2 * gt
    b2u = b * b * u
    theta_x = np.hypot(1 - 2 * b2u - b2u * s, 2 * a * b * np.sqrt(u) + b2u * s)
    p0 = 1 - b2u * (1 + s / 2)
    theta_z = abs(1 - b2u * (1 + 1.5 * s)) / p0 if p0 > 0 else 1.0
    theta_zp = abs(2 - s) / (2 + s) if b2u > 0 else 1.0
    return [
        ThetaCandidate("x", min(float(theta_x), 1.0), min(float(theta_x), 1.0), 0.5),
        ThetaCandidate("z", min(float(theta_z), 1.0), float(theta_zp), float(p0)),
    ]


# --- integrator oracles -----------------------------------------------------

SIGMA_MINUS = np.array([[0, 1], [0, 0]], dtype=complex)  # |g><e| with g = 0


def collective_lowering() -> np.ndarray:
    i2 = np.eye(2)
    return np.kron(SIGMA_MINUS, i2) + np.kron(i2, SIGMA_MINUS)


def _rk4(f, y, dt):
    k1 = f(y)
    k2 = f(y + 0.5 * dt * k1)
    k3 = f(y + 0.5 * dt * k2)
    k4 = f(y + dt * k3)
    return y + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


def _steps(t_end: float, dt: float) -> int:
    return max(int(np.ceil(t_end / dt - 1e-9)), 1)


def lindblad_oracle(p: ReservoirParams, t_end: float, dt: float = 1e-3, gamma: float | None = None):
    """RK4 trajectory of the two-atom collective-decay master equation.

    Returns ``(times, rhos)`` with ``rhos`` of shape (steps + 1, 4, 4).
    ``gamma`` overrides ``p.gamma`` (which must be positive) e.g. to switch
    the decay off.
    """
    gamma = p.gamma if gamma is None else gamma
    if gamma > 0 and dt > 1e-3 / gamma + 1e-15:
        raise ValueError("dt must not exceed 1e-3 / gamma")
    J = collective_lowering()
    Jd = J.conj().T
    JdJ = Jd @ J

    def rhs(r):
        return 0.5 * gamma * (2 * J @ r @ Jd - JdJ @ r - r @ JdJ)

    psi0 = np.array([p.alpha, 0, 0, p.beta], dtype=complex)
    rho = ket2dm(psi0)
    steps = _steps(t_end, dt)
    h = t_end / steps
    out = np.empty((steps + 1, 4, 4), dtype=complex)
    out[0] = rho
    for k in range(steps):
        rho = _rk4(rhs, rho, h)
        drift = abs(np.trace(rho).real - 1.0)
        if drift > 1e-8:
            raise RuntimeError(f"trace drift {drift:.3e} at step {k + 1}")
        out[k + 1] = rho
    return np.linspace(0.0, steps * h, steps + 1), out


def tc_hamiltonian(n: int, g: float = 1.0):
    """Full TC Hamiltonian on A x B x cavity with photon numbers 0..n+3.

    Returns ``(H, nmax)``; the basis index is ((a*2 + b)*(nmax+1) + m).
    """
    nmax = n + 3
    a = np.diag(np.sqrt(np.arange(1, nmax + 1)), 1).astype(complex)
    i2, ic = np.eye(2), np.eye(nmax + 1)
    sa = np.kron(np.kron(SIGMA_MINUS, i2), ic)
    sb = np.kron(np.kron(i2, SIGMA_MINUS), ic)
    ac = np.kron(np.eye(4), a)
    coupling = (sa + sb) @ ac.conj().T
    return g * (coupling + coupling.conj().T), nmax


def tc_subspace_basis(n: int, nmax: int) -> np.ndarray:
    """Rows are the six invariant-subspace vectors in the order of c1..c6."""
    dim = 4 * (nmax + 1)

    def ket(ab, m):
        v = np.zeros(dim, dtype=complex)
        if 0 <= m <= nmax:
            v[ab * (nmax + 1) + m] = 1.0
        return v

    gg, ge, eg, ee = 0, 1, 2, 3
    plus = lambda m: (ket(eg, m) + ket(ge, m)) / SQRT2  # noqa: E731
    return np.array([ket(gg, n + 2), plus(n + 1), ket(ee, n), ket(gg, n), plus(n - 1), ket(ee, n - 2)])


def schrodinger_oracle_tc(p: TCParams, t_end: float, dt: float = 1e-3, g: float | None = None):
    """RK4 integration of the TC Schroedinger equation.

    Returns ``(times, amplitudes)`` where ``amplitudes[k]`` are the overlaps
    with the six invariant-subspace states (same order as c1..c6).
    """
    g = p.g if g is None else g
    if g > 0 and dt > 1e-3 / g + 1e-15:
        raise ValueError("dt must not exceed 1e-3 / g")
    H, nmax = tc_hamiltonian(p.n, g)
    basis = tc_subspace_basis(p.n, nmax)
    psi = p.alpha * basis[3] + p.beta * basis[2]
    steps = _steps(t_end, dt)
    h = t_end / steps
    out = np.empty((steps + 1, 6), dtype=complex)
    out[0] = basis.conj() @ psi

    def rhs(v):
        return -1j * (H @ v)

    for k in range(steps):
        psi = _rk4(rhs, psi, h)
        drift = abs(np.vdot(psi, psi).real - 1.0)
        if drift > 1e-8:
            raise RuntimeError(f"norm drift {drift:.3e} at step {k + 1}")
        out[k + 1] = basis.conj() @ psi
    return np.linspace(0.0, steps * h, steps + 1), out


def excitation_number(n: int) -> np.ndarray:
    """Total excitation operator on the space of :func:`tc_hamiltonian`."""
    nmax = n + 3
    atoms = np.diag([0, 1, 1, 2])
    return np.kron(atoms, np.eye(nmax + 1)) + np.kron(np.eye(4), np.diag(np.arange(nmax + 1)))


def reduced_ac(psi: TripartiteState) -> np.ndarray:
    return partial_trace(psi.density(), psi.dims.as_list(), [0, 2])
