"""Steady-state covariance matrix from the Lyapunov equation ``U V + V U^T = -D``."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, NumericalError, ShapeError, StabilityError
from .model import drift_spectral_abscissa, is_stable

SYMMETRY_TOL = 1e-12
PHYSICALITY_TOL = 1e-9
PAIR_TOL = 1e-8
MAX_STEPS = 10_000_000


def lyapunov_residual(u: np.ndarray, d: np.ndarray, v: np.ndarray) -> np.ndarray:
    return u @ v + v @ np.swapaxes(u, -1, -2) + d


def solve_lyapunov(u: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Solve ``u v + v u^T = -d`` for the steady-state covariance matrix.

    The equation is vectorised into a dense ``n^2 x n^2`` system
    ``(I (x) u + u (x) I) vec(v) = -vec(d)`` and solved directly; at n = 6 this
    is a 36 x 36 solve. The result is symmetrised.

    Raises
    ------
    StabilityError
        If ``u`` is not strictly stable, in which case no steady state exists.
    NumericalError
        If the vectorised system is singular or the residual check fails.
    """
    u = np.asarray(u, dtype=float)
    d = np.asarray(d, dtype=float)
    if not is_stable(u):
        raise StabilityError(
            f"drift matrix is not stable (max Re eig = {drift_spectral_abscissa(u):.3g})"
        )
    n = u.shape[0]
    eye = np.eye(n)
    # row-major vec: vec(u v) = (u (x) I) vec(v), vec(v u^T) = (I (x) u) vec(v)
    # (same as np.kron, built by broadcasting to skip its per-call overhead)
    op = (u[:, None, :, None] * eye[None, :, None, :] + eye[:, None, :, None] * u[None, :, None, :])
    op = op.reshape(n * n, n * n)
    try:
        vec = np.linalg.solve(op, -d.reshape(-1))
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"vectorised Lyapunov system is singular: {exc}") from exc
    v = vec.reshape(n, n)
    v = 0.5 * (v + v.T)
    scale = max(np.max(np.abs(d)), np.finfo(float).tiny)
    res = np.max(np.abs(lyapunov_residual(u, d, v)))
    if not res < 1e-10 * scale:
        raise NumericalError(f"Lyapunov residual {res:.3g} exceeds tolerance")
    return v


def oracle_step(u: np.ndarray) -> float:
    """Integration step used by :func:`evolve_to_steady_state` when none is given."""
    fastest = np.max(np.abs(np.linalg.eigvals(u).real), axis=-1)
    return 0.01 / np.maximum(fastest, 1.0)


def evolve_to_steady_state(u, d, v0=None, dt=None, tol=1e-10, max_steps=MAX_STEPS):
    """Integrate ``dV/dt = U V + V U^T + D`` with classical RK4 until stationary.

    Works on a single 6x6 problem or a stack of shape ``(k, n, n)``; stacked
    problems are advanced together, each with its own step size, until every
    member meets the residual tolerance. This is a brute-force check on
    :func:`solve_lyapunov`, not a production path.

    Parameters
    ----------
    u, d : ndarray
        Drift and diffusion matrices, ``(n, n)`` or ``(k, n, n)``.
    v0 : ndarray, optional
        Initial covariance matrix; defaults to the vacuum ``I/2``.
    dt : float or ndarray, optional
        Step size; defaults to ``0.01 / max(|Re eig(u)|, 1)`` per problem.
    tol : float
        Stop when ``max|U V + V U^T + D| < tol``.
    """
    u = np.asarray(u, dtype=float)
    d = np.asarray(d, dtype=float)
    single = u.ndim == 2
    if single:
        u, d = u[None], d[None]
    for ui in u:
        if not is_stable(ui):
            raise StabilityError("drift matrix is not stable; no steady state to integrate to")
    if tol <= 0:
        raise ValueError("tol must be positive")
    k, n, _ = u.shape
    if v0 is None:
        v = np.broadcast_to(0.5 * np.eye(n), (k, n, n)).copy()
    else:
        v = np.broadcast_to(np.asarray(v0, dtype=float), (k, n, n)).copy()
    if dt is None:
        dt = oracle_step(u)
    h = np.broadcast_to(np.asarray(dt, dtype=float), (k,))
    if np.any(h <= 0):
        raise ValueError("dt must be positive")
    h = h[:, None, None]
    ut = np.swapaxes(u, -1, -2)

    def rhs(x):
        return u @ x + x @ ut + d

    for _ in range(max_steps):
        f1 = rhs(v)
        if np.max(np.abs(f1)) < tol:
            break
        f2 = rhs(v + 0.5 * h * f1)
        f3 = rhs(v + 0.5 * h * f2)
        f4 = rhs(v + h * f3)
        v = v + (h / 6.0) * (f1 + 2 * f2 + 2 * f3 + f4)
    else:
        raise ConvergenceError(f"no steady state after {max_steps} RK4 steps")
    v = 0.5 * (v + np.swapaxes(v, -1, -2))
    return v[0] if single else v


@lru_cache(maxsize=8)
def symplectic_form(n_modes: int) -> np.ndarray:
    omega = np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))
    omega.flags.writeable = False
    return omega


def check_covariance_shape(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.ndim != 2 or v.shape[0] != v.shape[1] or v.shape[0] % 2:
        raise ShapeError(f"covariance matrix must be square with even size, got {v.shape}")
    if np.max(np.abs(v - v.T)) > SYMMETRY_TOL * max(1.0, np.max(np.abs(v))):
        raise ShapeError("covariance matrix is not symmetric")
    return v


def symplectic_eigenvalues(v: np.ndarray) -> np.ndarray:
    """Symplectic spectrum of a ``2n x 2n`` covariance matrix, ascending.

    The eigenvalues of ``Omega v`` come in pairs ``+/- i nu``; their moduli are
    sorted and collapsed pairwise to the ``n`` symplectic eigenvalues.
    """
    v = check_covariance_shape(v)
    n = v.shape[0] // 2
    mods = np.sort(np.abs(np.linalg.eigvals(symplectic_form(n) @ v)))
    lo, hi = mods[0::2], mods[1::2]
    if np.any(np.abs(hi - lo) > PAIR_TOL * np.maximum(1.0, hi)):
        raise NumericalError("symplectic spectrum does not pair up; input is not a valid CM")
    return 0.5 * (lo + hi)


def is_physical(v: np.ndarray, tol: float = PHYSICALITY_TOL) -> bool:
    """Positive definite and every symplectic eigenvalue at least 1/2."""
    v = check_covariance_shape(v)
    if np.min(np.linalg.eigvalsh(v)) <= 0:
        return False
    return bool(symplectic_eigenvalues(v)[0] >= 0.5 - tol)
