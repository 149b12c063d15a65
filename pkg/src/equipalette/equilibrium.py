"""Charge-equilibrium point sets on the unit sphere.

Distributes n unit point charges so the total Coulomb 1/r potential is
minimal (the classical Thomson setup), by projected gradient descent with a
backtracking line search: halve the step until the energy decreases, grow it
1.2x after each accepted step. Several independently seeded runs are taken
and the lowest-energy one returned, since the landscape has local minima.

A single run is sequential and deterministic; restarts derive their seeds as
seed + restart index, so the result is independent of any execution order
(ties in final energy go to the lowest restart index).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

import numpy as np
from numba import njit


class CoincidentPointsError(ValueError):
    """Raised when two points coincide and the 1/r potential diverges."""


@dataclass(frozen=True)
class SolverConfig:
    max_iterations: int = 50_000
    gradient_tolerance: float = 1e-10  # max tangential force magnitude
    restarts: int = 8
    seed: int = 0

    def __post_init__(self) -> None:
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if self.gradient_tolerance <= 0:
            raise ValueError(f"gradient_tolerance must be > 0, got {self.gradient_tolerance}")
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts}")


_INITIAL_STEP = 0.01
_STEP_GROWTH = 1.2
_STEP_SHRINK = 0.5
_MIN_STEP = 1e-18  # below this the energy can no longer representably decrease


@dataclass(frozen=True)
class SphereConfiguration:
    """n unit vectors plus solver metadata."""

    points: np.ndarray  # (n, 3), read-only
    energy: float  # sum over pairs of 1 / chord length
    min_distance: float  # smallest pairwise chord
    iterations: int
    seed: int
    converged: bool

    @property
    def n(self) -> int:
        return self.points.shape[0]


@njit(cache=True, error_model="numpy")
def _pair_energy(pts):
    n = pts.shape[0]
    e = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            dx = pts[i, 0] - pts[j, 0]
            dy = pts[i, 1] - pts[j, 1]
            dz = pts[i, 2] - pts[j, 2]
            e += 1.0 / np.sqrt(dx * dx + dy * dy + dz * dz)
    return e


@njit(cache=True, error_model="numpy")
def _tangential_gradient_kernel(pts):
    n = pts.shape[0]
    g = np.zeros_like(pts)
    for i in range(n):
        for j in range(i + 1, n):
            dx = pts[i, 0] - pts[j, 0]
            dy = pts[i, 1] - pts[j, 1]
            dz = pts[i, 2] - pts[j, 2]
            d2 = dx * dx + dy * dy + dz * dz
            w = 1.0 / (d2 * np.sqrt(d2))
            # gradient of 1/d wrt p_i is (p_j - p_i)/d^3
            g[i, 0] -= dx * w
            g[i, 1] -= dy * w
            g[i, 2] -= dz * w
            g[j, 0] += dx * w
            g[j, 1] += dy * w
            g[j, 2] += dz * w
    gmax = 0.0
    for i in range(n):
        radial = g[i, 0] * pts[i, 0] + g[i, 1] * pts[i, 1] + g[i, 2] * pts[i, 2]
        g[i, 0] -= radial * pts[i, 0]
        g[i, 1] -= radial * pts[i, 1]
        g[i, 2] -= radial * pts[i, 2]
        gn = np.sqrt(g[i, 0] ** 2 + g[i, 1] ** 2 + g[i, 2] ** 2)
        if gn > gmax:
            gmax = gn
    return g, gmax


@njit(cache=True, error_model="numpy")
def _projected_step(pts, g, step):
    n = pts.shape[0]
    cand = np.empty_like(pts)
    for i in range(n):
        cx = pts[i, 0] - step * g[i, 0]
        cy = pts[i, 1] - step * g[i, 1]
        cz = pts[i, 2] - step * g[i, 2]
        nrm = np.sqrt(cx * cx + cy * cy + cz * cz)
        cand[i, 0] = cx / nrm
        cand[i, 1] = cy / nrm
        cand[i, 2] = cz / nrm
    return cand, _pair_energy(cand)


@njit(cache=True, error_model="numpy")
def _min_pair_distance(pts):
    n = pts.shape[0]
    dmin = np.inf
    for i in range(n):
        for j in range(i + 1, n):
            dx = pts[i, 0] - pts[j, 0]
            dy = pts[i, 1] - pts[j, 1]
            dz = pts[i, 2] - pts[j, 2]
            d = np.sqrt(dx * dx + dy * dy + dz * dz)
            if d < dmin:
                dmin = d
    return dmin


def _validate_points(points: np.ndarray) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 3 or pts.shape[0] < 2:
        raise ValueError(f"expected an (n>=2, 3) array of points, got shape {pts.shape}")
    norms = np.linalg.norm(pts, axis=1)
    if np.max(np.abs(norms - 1.0)) > 1e-9:
        raise ValueError("points must lie on the unit sphere")
    return pts


def coulomb_energy(points: np.ndarray) -> float:
    """Total potential: sum over unordered pairs of 1 / chord length."""
    pts = _validate_points(points)
    e = float(_pair_energy(pts))
    if not np.isfinite(e):
        raise CoincidentPointsError("coincident points give infinite energy")
    return e


def energy_gradient(points: np.ndarray) -> np.ndarray:
    """Per-point energy gradient projected onto the tangent plane at each point."""
    pts = _validate_points(points)
    g, _ = _tangential_gradient_kernel(pts)
    if not np.all(np.isfinite(g)):
        raise CoincidentPointsError("coincident points make the force field singular")
    return g


def sample_uniform_sphere(rng: np.random.Generator) -> np.ndarray:
    """One direction uniform on the sphere: a normalized 3D Gaussian draw."""
    while True:
        v = rng.standard_normal(3)
        norm = np.linalg.norm(v)
        if norm > 0.0:
            return v / norm


def _initial_points(n: int, rng: np.random.Generator) -> np.ndarray:
    pts = np.empty((n, 3))
    for i in range(n):
        pts[i] = sample_uniform_sphere(rng)
    # exact coincidence has probability zero but a broken generator could
    # produce it; resample rather than start on a singularity
    while float(_min_pair_distance(pts)) == 0.0:
        _, keep = np.unique(pts, axis=0, return_index=True)
        for i in sorted(set(range(n)) - set(int(k) for k in keep)):
            pts[i] = sample_uniform_sphere(rng)
    return pts


def _descend(
    pts: np.ndarray,
    cfg: SolverConfig,
    on_step: Optional[Callable[[int, float], None]],
) -> tuple[np.ndarray, float, int, bool]:
    step = _INITIAL_STEP
    energy = float(_pair_energy(pts))
    iterations = 0
    converged = False
    for it in range(1, cfg.max_iterations + 1):
        iterations = it
        g, gmax = _tangential_gradient_kernel(pts)
        if gmax < cfg.gradient_tolerance:
            converged = True
            iterations = it - 1
            break
        stalled = False
        while True:
            cand, e_new = _projected_step(pts, g, step)
            if e_new < energy:
                step *= _STEP_GROWTH
                break
            step *= _STEP_SHRINK
            if step < _MIN_STEP:
                stalled = True
                break
        if stalled:
            # float64 cannot represent a further decrease; positions are
            # accurate to far below any distance tolerance used downstream
            iterations = it - 1
            break
        assert e_new <= energy, "accepted step must not increase energy"
        pts, energy = cand, e_new
        if on_step is not None:
            on_step(it, energy)
    return pts, energy, iterations, converged


def solve(
    n: int,
    cfg: SolverConfig = SolverConfig(),
    on_step: Optional[Callable[[int, float], None]] = None,
) -> SphereConfiguration:
    """Best-of-restarts equilibrium configuration for n points.

    `on_step(iteration, energy)`, when given, is invoked after every accepted
    descent step of every restart.
    """
    if not 2 <= n <= 1000:
        raise ValueError(f"n must be in [2, 1000], got {n}")
    if n == 2:
        # antipodal pair along the pole axis; iterating would be pointless
        pts = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]])
        pts.setflags(write=False)
        return SphereConfiguration(pts, 0.5, 2.0, 0, cfg.seed, True)

    best: tuple[np.ndarray, float, int, bool] | None = None
    for restart in range(cfg.restarts):
        rng = np.random.default_rng(cfg.seed + restart)
        pts = _initial_points(n, rng)
        result = _descend(pts, cfg, on_step)
        if best is None or result[1] < best[1]:
            best = result

    pts, energy, iterations, converged = best
    pts = pts.copy()
    pts.setflags(write=False)
    return SphereConfiguration(
        points=pts,
        energy=energy,
        min_distance=float(_min_pair_distance(pts)),
        iterations=iterations,
        seed=cfg.seed,
        converged=converged,
    )


@lru_cache(maxsize=256)
def cached_solve(n: int, cfg: SolverConfig = SolverConfig()) -> SphereConfiguration:
    """Memoized solve; valid because solve is pure and its result immutable."""
    return solve(n, cfg)
