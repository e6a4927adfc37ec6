"""Brute-force minimisation of the measured conditional entropy.

A projective measurement on qubit B is a Bloch unit vector ``n``; the two
outcomes are ``(I +/- n.sigma)/2``.  Since ``n`` and ``-n`` describe the same
measurement only the upper hemisphere is scanned.  The coarse scan is
followed by Nelder-Mead refinement in a local tangent chart, which avoids the
coordinate singularity at the poles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np
from scipy.optimize import minimize

from .linalg import TOL, check_density_matrix

PAULI = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)


@dataclass(frozen=True)
class OptimizerConfig:
    polar_points: int = 64
    azimuth_points: int = 128
    refine_iters: int = 60
    tol: float = 1e-10
    seeds: int = 4

    def __post_init__(self):
        if self.polar_points < 8 or self.azimuth_points < 8:
            raise ValueError("coarse grid needs at least 8 points per angle")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.refine_iters < 0 or self.seeds < 1:
            raise ValueError("refine_iters must be >= 0 and seeds >= 1")


def conditional_blocks(rho_ab: np.ndarray) -> np.ndarray:
    """Return ``M[k] = Tr_B[(I (x) sigma_k) rho]`` for k = 0..3.

    The unnormalised state of A after outcome +/- along ``n`` is
    ``(M[0] +/- sum_k n_k M[k]) / 2``.
    """
    t = np.asarray(rho_ab, dtype=complex).reshape(2, 2, 2, 2)
    return np.einsum("abcd,kdb->kac", t, PAULI)


def _weighted_entropy(blocks: np.ndarray) -> np.ndarray:
    """Sum over outcomes of ``p S(rho/p)`` for stacked unnormalised 2x2 blocks.

    ``blocks`` has shape (..., 2, 2, 2) where axis -3 runs over the outcomes.
    """
    a = blocks[..., 0, 0].real
    d = blocks[..., 1, 1].real
    off = np.abs(blocks[..., 0, 1])
    p = a + d
    half = 0.5 * np.hypot(a - d, 2 * off)
    lam = np.stack([0.5 * p + half, 0.5 * p - half], axis=-1)
    floor = TOL.eigenvalue_floor
    with np.errstate(divide="ignore", invalid="ignore"):
        h = np.where(lam > floor, -lam * np.log2(lam), 0.0).sum(axis=-1)
        h += np.where(p > floor, p * np.log2(p), 0.0)
    return h.sum(axis=-1)


def entropy_along(blocks: np.ndarray, directions: np.ndarray) -> np.ndarray:
    """Conditional entropy for each row of ``directions`` (shape (N, 3))."""
    n = np.atleast_2d(directions)
    n = n / np.linalg.norm(n, axis=1, keepdims=True)
    nsig = np.einsum("ni,iab->nab", n, blocks[1:])
    plus = 0.5 * (blocks[0] + nsig)
    minus = 0.5 * (blocks[0] - nsig)
    return _weighted_entropy(np.stack([plus, minus], axis=1))


def hemisphere_grid(polar_points: int, azimuth_points: int) -> np.ndarray:
    theta = np.linspace(0.0, np.pi / 2, polar_points)
    phi = np.linspace(0.0, 2 * np.pi, azimuth_points, endpoint=False)
    th, ph = np.meshgrid(theta[1:], phi, indexing="ij")
    dirs = np.stack(
        [np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)], axis=-1
    ).reshape(-1, 3)
    return np.vstack([[0.0, 0.0, 1.0], dirs])


def _tangent_frame(n: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    helper = np.array([1.0, 0.0, 0.0]) if abs(n[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = np.cross(n, helper)
    e1 /= np.linalg.norm(e1)
    return e1, np.cross(n, e1)


def scalar_evaluator(blocks: np.ndarray):
    """Fast single-direction version of :func:`entropy_along` for refinement."""
    a = [float(b[0, 0].real) for b in blocks]
    d = [float(b[1, 1].real) for b in blocks]
    o = [complex(b[0, 1]) for b in blocks]
    floor = TOL.eigenvalue_floor
    log2 = math.log2

    def f(nx: float, ny: float, nz: float) -> float:
        r = math.sqrt(nx * nx + ny * ny + nz * nz)
        nx, ny, nz = nx / r, ny / r, nz / r
        na = nx * a[1] + ny * a[2] + nz * a[3]
        nd = nx * d[1] + ny * d[2] + nz * d[3]
        no = nx * o[1] + ny * o[2] + nz * o[3]
        total = 0.0
        for sgn in (1.0, -1.0):
            aa = 0.5 * (a[0] + sgn * na)
            dd = 0.5 * (d[0] + sgn * nd)
            oo = 0.5 * abs(o[0] + sgn * no)
            p = aa + dd
            if p <= floor:
                continue
            half = 0.5 * math.hypot(aa - dd, 2 * oo)
            for lam in (0.5 * p + half, 0.5 * p - half):
                if lam > floor:
                    total -= lam * log2(lam)
            total += p * log2(p)
        return total

    return f


def _refine(f, start: np.ndarray, value: float, step: float, cfg: OptimizerConfig):
    best_n, best_v = start, value
    for _ in range(cfg.refine_iters):
        e1, e2 = _tangent_frame(best_n)
        n0 = best_n

        def g(uv):
            v = n0 + uv[0] * e1 + uv[1] * e2
            return f(v[0], v[1], v[2])

        res = minimize(
            g,
            np.zeros(2),
            method="Nelder-Mead",
            options={
                "initial_simplex": np.array([[0.0, 0.0], [step, 0.0], [0.0, step]]),
                "xatol": 1e-7,
                "fatol": cfg.tol * 1e-2,
                "maxiter": 400,
            },
        )
        improvement = best_v - res.fun
        if improvement > 0:
            n = n0 + res.x[0] * e1 + res.x[1] * e2
            best_n, best_v = n / np.linalg.norm(n), float(res.fun)
        if improvement < cfg.tol:
            break
        step = max(step * 0.25, 1e-6)
    return best_n, best_v


def _seed_indices(grid: np.ndarray, values: np.ndarray, count: int, separation: float = 0.3) -> list[int]:
    """Best grid points that lie in distinct neighbourhoods (antipodes identified)."""
    chosen: list[int] = []
    for i in np.argsort(values, kind="stable")[:2048]:
        if all(abs(np.dot(grid[i], grid[j])) < math.cos(separation) for j in chosen):
            chosen.append(int(i))
            if len(chosen) == count:
                break
    return chosen


def minimize_conditional_entropy(rho_ab, cfg: OptimizerConfig | None = None):
    """Global minimum of the B-measured conditional entropy of A.

    Returns ``(min_value, direction)``.  The coarse grid always contains the
    z axis; the best ``cfg.seeds`` grid points are refined.
    """
    cfg = cfg or OptimizerConfig()
    rho_ab = check_density_matrix(rho_ab)
    if rho_ab.shape != (4, 4):
        raise ValueError("expected a 4x4 two-qubit density matrix")
    blocks = conditional_blocks(rho_ab)
    grid = hemisphere_grid(cfg.polar_points, cfg.azimuth_points)
    values = entropy_along(blocks, grid)
    f = scalar_evaluator(blocks)
    seeds = _seed_indices(grid, values, cfg.seeds)
    best_n, best_v = grid[seeds[0]], float(values[seeds[0]])
    step = 0.5 * np.pi / (cfg.polar_points - 1)
    for i in seeds:
        n, v = _refine(f, grid[i], float(values[i]), step, cfg)
        if v < best_v:
            best_n, best_v = n, v
    if best_n[2] < 0 or (best_n[2] == 0 and best_n[1] < 0):
        best_n = -best_n
    return best_v, best_n


def coarse_minimum(rho_ab, cfg: OptimizerConfig | None = None) -> float:
    """Best value on the coarse grid alone (used to check refinement)."""
    cfg = cfg or OptimizerConfig()
    blocks = conditional_blocks(check_density_matrix(rho_ab))
    return float(entropy_along(blocks, hemisphere_grid(cfg.polar_points, cfg.azimuth_points)).min())


@dataclass(frozen=True)
class Crossover:
    tau: float
    left_winner: str
    right_winner: str


def _bisect(diff: Callable[[float], float], lo: float, hi: float, d_lo: float, xtol: float) -> float:
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        d_mid = diff(mid)
        if (d_mid <= 0) == (d_lo <= 0):
            lo, d_lo = mid, d_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _winner(values: Mapping[str, float], labels: Sequence[str], tie_tol: float) -> str:
    lowest = min(values[k] for k in labels)
    return next(k for k in labels if values[k] <= lowest + tie_tol)


def _strictly_before(records: Sequence, i: int, a: str, b: str, tie_tol: float) -> bool:
    for rec in reversed(records[:i]):
        vals = dict(rec.candidate_entropies)
        if a not in vals or b not in vals:
            return False
        d = vals[a] - vals[b]
        if abs(d) > tie_tol:
            return d < 0
    return False


def detect_crossovers(
    records: Sequence,
    evaluate: Callable[[float], Mapping[str, float]] | None = None,
    xtol: float = 1e-6,
    tie_tol: float = 1e-12,
    labels: Sequence[str] | None = None,
) -> list[Crossover]:
    """Locate the points where the winning candidate changes.

    ``records`` need ``tau``, ``winner`` and ``candidate_entropies`` (pairs of
    label and value).  When ``evaluate`` is given it maps a time to the
    candidate entropies and the crossing is bisected to ``xtol``; otherwise the
    difference is interpolated linearly between grid points.  A label change
    out of an exact tie is a crossing only if the order was strictly reversed
    before the tie, so a tie at the first grid point is never reported.

    With ``labels`` only those candidates compete (in the given order, which
    also breaks ties) and the stored ``winner`` is ignored.
    """
    out: list[Crossover] = []
    for i in range(len(records) - 1):
        left, right = records[i], records[i + 1]
        lv, rv = dict(left.candidate_entropies), dict(right.candidate_entropies)
        if labels is None:
            a, b = left.winner, right.winner
        else:
            keep = [k for k in labels if k in lv and k in rv]
            a, b = _winner(lv, keep, tie_tol), _winner(rv, keep, tie_tol)
        if a == b:
            continue
        d_lo = lv[a] - lv[b]
        d_hi = rv[a] - rv[b]
        if not d_hi > tie_tol:
            continue
        if abs(d_lo) <= tie_tol:
            # crossing exactly on a grid point: it counts only if the order
            # was strictly the other way before the tie
            if _strictly_before(records, i, a, b, tie_tol):
                out.append(Crossover(float(left.tau), a, b))
            continue
        if d_lo > 0:
            continue
        if evaluate is None:
            tau = left.tau + (right.tau - left.tau) * (-d_lo) / (d_hi - d_lo)
        else:
            def diff(t, a=a, b=b):
                vals = evaluate(t)
                return vals[a] - vals[b]

            tau = _bisect(diff, left.tau, right.tau, d_lo, xtol)
        out.append(Crossover(float(tau), a, b))
    return out


def crossover_taus(crossovers: Iterable[Crossover]) -> list[float]:
    return [c.tau for c in crossovers]
