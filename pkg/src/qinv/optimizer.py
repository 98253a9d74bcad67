"""Maximisation of ``|gamma|`` over the unit sphere of A.

The objective is ``h(z) = |gamma(z)|**2`` on the sphere ``S^7`` in
``C^4 = R^8``.  Gradients are represented as complex 4-vectors ``G`` with
``G_k = dh/dx_k + i dh/dy_k``; for holomorphic ``gamma`` this is
``2 gamma(z) * conj(dgamma/dz_k)``.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .invariants import GAMMA_AT_L, Z_L, gamma
from .validation import check_acoords, check_nonzero

GAMMA_MAX_CONJECTURED = float(abs(GAMMA_AT_L))
HESSIAN_STEP = 1e-5


@lru_cache(maxsize=1)
def _evaluators():
    g = gamma()
    return g.compile(), tuple(g.diff(i).compile() for i in range(4))


def gamma_and_grad(z) -> tuple[complex, np.ndarray]:
    """``gamma(z)`` and its holomorphic partials ``dgamma/dz_i``."""
    val, parts = _evaluators()
    return val(z), np.array([p(z) for p in parts])


def objective(z) -> float:
    """``h(z) = |gamma(z)|**2``."""
    val, _ = _evaluators()
    return abs(val(z)) ** 2


def euclidean_grad(z) -> np.ndarray:
    g, dg = gamma_and_grad(z)
    return 2 * g * np.conj(dg)


def _real_inner(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.real(np.vdot(a, b)))


def project_tangent(z: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Component of ``v`` orthogonal (in R^8) to the unit vector ``z``."""
    return v - _real_inner(z, v) * z


def sphere_grad(z: np.ndarray) -> np.ndarray:
    return project_tangent(z, euclidean_grad(z))


def _normalized(z) -> np.ndarray:
    z = check_acoords(z)
    check_nonzero(z, "z")
    return z / np.linalg.norm(z)


def critical_residual(z) -> float:
    """Norm of the sphere gradient of ``h`` at ``z / |z|``."""
    return float(np.linalg.norm(sphere_grad(_normalized(z))))


def relative_residual(z) -> float:
    """Sphere gradient norm of ``log h`` at ``z / |z|``; 0 where ``h`` and its gradient vanish."""
    z = _normalized(z)
    resid = float(np.linalg.norm(sphere_grad(z)))
    if resid == 0:
        return 0.0
    h = objective(z)
    return resid / h if h > 0 else float("inf")


def tangent_basis(z: np.ndarray) -> np.ndarray:
    """Orthonormal basis (7 complex 4-vectors) of the real tangent space of S^7 at ``z``."""
    x = np.concatenate([z.real, z.imag])
    q, _ = np.linalg.qr(np.column_stack([x, np.eye(8)]))
    basis = q[:, 1:8].T
    return basis[:, :4] + 1j * basis[:, 4:]


class NotCriticalError(ValueError):
    """Raised when a sphere Hessian is requested away from a critical point."""


def sphere_hessian(z, step: float = HESSIAN_STEP, tol: float = 1e-6) -> np.ndarray:
    """Symmetrised 7x7 Riemannian Hessian of ``h`` at a critical point.

    Central differences of the projected gradient along retracted tangent
    directions.  Criticality is judged by :func:`relative_residual` against
    ``tol``: ``|grad h|`` itself never exceeds about 1.2e-8 on the sphere.
    """
    z = _normalized(z)
    rel = relative_residual(z)
    if rel > tol:
        raise NotCriticalError(f"relative residual {rel:.3e} exceeds {tol:g}")
    basis = tangent_basis(z)
    cols = []
    for e in basis:
        plus = (z + step * e) / np.linalg.norm(z + step * e)
        minus = (z - step * e) / np.linalg.norm(z - step * e)
        diff = (sphere_grad(plus) - sphere_grad(minus)) / (2 * step)
        diff = project_tangent(z, diff)
        cols.append([_real_inner(b, diff) for b in basis])
    hess = np.array(cols).T
    return 0.5 * (hess + hess.T)


def sphere_hessian_spectrum(z, step: float = HESSIAN_STEP, tol: float = 1e-6) -> list[float]:
    """Ascending eigenvalues of :func:`sphere_hessian` (seven of them)."""
    return [float(v) for v in np.linalg.eigvalsh(sphere_hessian(z, step, tol))]


@dataclass(frozen=True)
class OptConfig:
    restarts: int = 50
    max_iters: int = 500
    step: float = 0.5
    tol_grad: float = 1e-10
    seed: int = 1

    def __post_init__(self):
        for name in ("restarts", "max_iters"):
            if not isinstance(getattr(self, name), int) or getattr(self, name) < 1:
                raise ValueError(f"{name} must be a positive integer")
        if not self.step > 0 or not self.tol_grad > 0:
            raise ValueError("step and tol_grad must be positive")


@dataclass
class RestartLog:
    index: int
    value: float
    iterations: int
    residual: float
    converged: bool
    z: np.ndarray = field(repr=False)
    history: list[float] = field(default_factory=list, repr=False)


@dataclass
class OptResult:
    best_z: np.ndarray
    best_value: float
    grad_residual: float
    per_restart: list[RestartLog]
    exceeds_conjecture: bool

    def to_dict(self) -> dict:
        return {
            "best_z": [[float(c.real), float(c.imag)] for c in self.best_z],
            "best_value": self.best_value,
            "grad_residual": self.grad_residual,
            "conjectured_max": GAMMA_MAX_CONJECTURED,
            "exceeds_conjecture": bool(self.exceeds_conjecture),
            "per_restart": [
                {"restart": r.index, "value": r.value, "iterations": r.iterations,
                 "residual": r.residual, "converged": bool(r.converged)}
                for r in self.per_restart
            ],
        }


def ascend(z0, cfg: OptConfig, index: int = 0) -> RestartLog:
    """Projected-gradient ascent of ``h`` from ``z0`` with backtracking.

    Trial steps move a distance ``cfg.step`` along the normalised sphere
    gradient and are halved until the Armijo condition holds; the accepted
    length seeds the next trial (doubled).  Convergence is declared when the
    gradient of ``log h`` falls below ``cfg.tol_grad``, which is scale-free
    because ``h`` is tiny on the sphere.
    """
    z = _normalized(z0)
    h = objective(z)
    history = [h]
    length = cfg.step
    converged = False
    it = 0
    for it in range(1, cfg.max_iters + 1):
        g = sphere_grad(z)
        gnorm = np.linalg.norm(g)
        if h == 0 or gnorm <= cfg.tol_grad * h:
            converged = h > 0
            it -= 1
            break
        direction = g / gnorm
        trial = min(2 * length, cfg.step)
        accepted = False
        while trial > 1e-14:
            cand = z + trial * direction
            cand /= np.linalg.norm(cand)
            hc = objective(cand)
            if hc >= h + 1e-4 * trial * gnorm:
                accepted = True
                break
            trial /= 2
        if not accepted:
            converged = gnorm <= np.sqrt(cfg.tol_grad) * h
            break
        z, h, length = cand, hc, trial
        history.append(h)
    resid = float(np.linalg.norm(sphere_grad(z)))
    return RestartLog(index, float(np.sqrt(h)), it, resid, bool(converged), z, history)


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("QINV_THREADS", "1")))
    except ValueError:
        return 1


def _restart(cfg: OptConfig, k: int) -> RestartLog:
    rng = np.random.default_rng(cfg.seed + k)
    z0 = rng.normal(size=4) + 1j * rng.normal(size=4)
    return ascend(z0, cfg, k)


def maximize_abs_gamma(cfg: OptConfig | None = None) -> OptResult:
    """Multi-start maximisation of ``|gamma|`` on the unit sphere of A.

    Restart ``k`` draws its start from ``default_rng(seed + k)``, so results
    do not depend on execution order.  Ties go to the lower restart index.
    """
    cfg = cfg or OptConfig()
    with ThreadPoolExecutor(max_workers=_workers()) as pool:
        logs = list(pool.map(lambda k: _restart(cfg, k), range(cfg.restarts)))
    best = max(logs, key=lambda r: (r.value, -r.index))
    return OptResult(
        best_z=best.z,
        best_value=best.value,
        grad_residual=best.residual,
        per_restart=logs,
        exceeds_conjecture=bool(best.value > GAMMA_MAX_CONJECTURED + 1e-9),
    )


def check_L(step: float = HESSIAN_STEP) -> dict:
    """Criticality and Hessian certificate for the state ``|L>``."""
    resid = critical_residual(Z_L)
    eig = sphere_hessian_spectrum(Z_L, step)
    return {
        "z": [[float(c.real), float(c.imag)] for c in Z_L],
        "abs_gamma": float(np.sqrt(objective(Z_L))),
        "critical_residual": resid,
        "relative_residual": relative_residual(Z_L),
        "hessian_eigenvalues": eig,
        "negative_semidefinite": bool(max(eig) <= 1e-6),
        "has_null_direction": bool(min(abs(e) for e in eig) <= 1e-6),
    }
