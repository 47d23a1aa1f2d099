"""Gaussian correlation measures on the steady-state covariance matrix.

All logarithms are natural. Two-mode quantities act on a :class:`TwoModeCM`
in the ordering ``(x_A, y_A, x_B, y_B)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import IntEnum
from functools import cached_property

import numpy as np

from .errors import ArgumentError, DomainError, NumericalError
from .steady_state import check_covariance_shape, symplectic_eigenvalues

VACUUM_VARIANCE = 0.5
GIP_SYMMETRY_TOL = 1e-6
GIP_PURITY_GUARD = 1e-9
DISCRIMINANT_TOL = 1e-12
NEAR_DEGENERATE = 1e-6
# measure values below this are floating-point noise around an exact zero
NUMERICAL_ZERO = 1e-12


class Mode(IntEnum):
    CAVITY = 0
    MAGNON1 = 1
    MAGNON2 = 2


MODE_LABELS = {Mode.CAVITY: "d", Mode.MAGNON1: "o1", Mode.MAGNON2: "o2"}


def _mode(m) -> Mode:
    try:
        return Mode(m)
    except ValueError:
        raise ArgumentError(f"unknown mode index {m!r}") from None


def _det2(b: np.ndarray) -> float:
    return float(b[0, 0] * b[1, 1] - b[0, 1] * b[1, 0])


@dataclass(frozen=True)
class TwoModeCM:
    """Reduced 4x4 covariance matrix of a mode pair, ``[[x, z], [z^T, y]]``."""

    m: np.ndarray

    @cached_property
    def det_x(self) -> float:
        return _det2(self.m[:2, :2])

    @cached_property
    def det_y(self) -> float:
        return _det2(self.m[2:, 2:])

    @cached_property
    def det_z(self) -> float:
        return _det2(self.m[:2, 2:])

    @cached_property
    def det_total(self) -> float:
        return float(np.linalg.det(self.m))

    @cached_property
    def pt_invariant(self) -> float:
        # det x + det y - 2 det z: the invariant of the partially transposed CM
        return self.det_x + self.det_y - 2.0 * self.det_z


@dataclass(frozen=True)
class BipartiteReport:
    entanglement: float | None
    steering_ab: float | None
    steering_ba: float | None
    gip: float | None
    mancini_product: float | None
    mancini_entangled: bool | None
    stable: bool = True


@dataclass(frozen=True)
class TripartiteReport:
    """Residual contangles ``R^{l|mn}`` for each choice of the single mode ``l``."""

    r_d: float
    r_o1: float
    r_o2: float
    r_min: float
    r_min_raw: float
    one_vs_two: dict = field(default_factory=dict)
    pairwise: dict = field(default_factory=dict)


def reduce(v: np.ndarray, mode_a, mode_b) -> TwoModeCM:
    """Extract the covariance matrix of modes ``mode_a`` and ``mode_b`` (A first)."""
    a, b = _mode(mode_a), _mode(mode_b)
    if a == b:
        raise ArgumentError("mode indices must be distinct")
    idx = [2 * a, 2 * a + 1, 2 * b, 2 * b + 1]
    return TwoModeCM(np.asarray(v, dtype=float)[idx][:, idx])


def single_mode_block(v: np.ndarray, mode) -> np.ndarray:
    k = 2 * _mode(mode)
    return np.asarray(v, dtype=float)[k:k + 2, k:k + 2].copy()


def _clip(value: float) -> float:
    return value if value > NUMERICAL_ZERO else 0.0


def _neg_from_nu(nu: float) -> float:
    return _clip(-math.log(2.0 * nu))


def min_pt_symplectic_eigenvalue(m: TwoModeCM) -> float:
    """Smallest symplectic eigenvalue of the partially transposed two-mode CM."""
    delta = m.pt_invariant
    disc = delta * delta - 4.0 * m.det_total
    if disc < -DISCRIMINANT_TOL:
        raise NumericalError(f"complex symplectic eigenvalue (discriminant {disc:.3g}); CM is unphysical")
    if not delta > 0 or not m.det_total > 0:
        raise NumericalError("non-positive symplectic invariants; CM is unphysical")
    if disc < NEAR_DEGENERATE * delta * delta:
        # sqrt(disc) carries no correct digits when nu_- ~ nu_+; use the spectrum instead
        flip = np.diag([1.0, 1.0, 1.0, -1.0])
        return float(symplectic_eigenvalues(flip @ m.m @ flip)[0])
    big = delta + math.sqrt(disc)
    # nu_-^2 nu_+^2 = det m, which avoids cancelling delta against sqrt(disc)
    return math.sqrt(2.0 * m.det_total / big)


def log_negativity(m: TwoModeCM) -> float:
    return _neg_from_nu(min_pt_symplectic_eigenvalue(m))


def steering(m: TwoModeCM, direction: str = "ab") -> float:
    """Gaussian steering ``A -> B`` (``direction="ab"``) or ``B -> A`` (``"ba"``)."""
    if direction in ("ab", "A->B"):
        local = m.det_x
    elif direction in ("ba", "B->A"):
        local = m.det_y
    else:
        raise ArgumentError(f"direction must be 'ab' or 'ba', got {direction!r}")
    if not m.det_total > 0:
        raise DomainError("steering needs a positive-definite two-mode CM")
    return _clip(0.5 * math.log(local / (4.0 * m.det_total)))


def gip(m: TwoModeCM) -> float:
    """Gaussian interferometric power of a symmetric, strictly mixed two-mode state.

    Uses the closed form in the local symplectic invariants
    ``alpha = 4 det x``, ``gamma = 4 det z``, ``D = 16 det m`` (vacuum = 1 scaling).

    Raises
    ------
    DomainError
        If the two local determinants differ (the closed form only covers the
        symmetric case) or the state is pure to within the guard, where the
        expression is 0/0.
    """
    if abs(m.det_x - m.det_y) >= GIP_SYMMETRY_TOL:
        raise DomainError("GIP closed form needs det x == det y")
    alpha = 4.0 * m.det_x
    gamma = 4.0 * m.det_z
    D = 16.0 * m.det_total
    if not D > 1.0 + GIP_PURITY_GUARD:
        raise DomainError("GIP closed form is 0/0 for (near-)pure states")
    c = (alpha + gamma) * (1 + alpha + gamma - D) - D * D
    h = (D - 1) * (1 + 2 * alpha + 2 * gamma + D)
    q = (alpha + D) * (alpha * alpha - D) + gamma * (2 * alpha + gamma) * (1 + alpha)
    disc = c * c + h * q
    if disc < 0:
        if disc < -1e-9 * max(1.0, c * c):
            raise NumericalError("GIP discriminant is negative")
        disc = 0.0
    return max(0.0, (c + math.sqrt(disc)) / (2 * h))


def mancini_product(m: TwoModeCM) -> float:
    """Product of the variances of ``(x_A + x_B)/sqrt2`` and ``(y_A - y_B)/sqrt2``."""
    mm = m.m
    var_bx = 0.5 * (mm[0, 0] + mm[2, 2] + 2 * mm[0, 2])
    var_cy = 0.5 * (mm[1, 1] + mm[3, 3] - 2 * mm[1, 3])
    return float(var_bx * var_cy)


def mancini_entangled(product: float) -> bool:
    # strict, and roundoff below the vacuum value 1/4 is not a detection
    return product < 0.25 - NUMERICAL_ZERO


def quadrature_variance(v: np.ndarray, which: int) -> float:
    if not isinstance(which, (int, np.integer)) or not 0 <= which < 6:
        raise ArgumentError(f"quadrature index must be in 0..5, got {which!r}")
    return float(np.asarray(v)[which, which])


def squeezing_db(variance: float) -> float:
    """Squeezing relative to the vacuum variance, in dB (positive = squeezed)."""
    if not variance > 0:
        raise ArgumentError("variance must be positive")
    return -10.0 * math.log10(variance / VACUUM_VARIANCE) + 0.0


def momentum_flip(n_modes: int, mode) -> np.ndarray:
    p = np.eye(2 * n_modes)
    k = 2 * _mode(mode) + 1
    p[k, k] = -1.0
    return p


def one_vs_two_negativity(v: np.ndarray, solo) -> float:
    """Logarithmic negativity between mode ``solo`` and the other two modes."""
    v = check_covariance_shape(v)
    sign = np.diag(momentum_flip(v.shape[0] // 2, solo))
    nu = symplectic_eigenvalues(v * np.outer(sign, sign))[0]
    return _neg_from_nu(nu)


def pair_negativity(v: np.ndarray, mode_a, mode_b) -> float:
    return log_negativity(reduce(v, mode_a, mode_b))


def residual_contangle(v: np.ndarray) -> TripartiteReport:
    """Residual contangles with contangle = (log-negativity)^2.

    ``R^{l|mn} = C_{l|mn} - C_{l|m} - C_{l|n}``; ``r_min`` is floored at zero,
    the raw minimum is kept in ``r_min_raw``.
    """
    v = check_covariance_shape(v)
    pairwise = {}
    for a, b in ((Mode.CAVITY, Mode.MAGNON1), (Mode.CAVITY, Mode.MAGNON2), (Mode.MAGNON1, Mode.MAGNON2)):
        pairwise[(a, b)] = pair_negativity(v, a, b) ** 2
    c_pair = lambda a, b: pairwise[(min(a, b), max(a, b))]
    one_vs_two = {}
    residuals = {}
    for solo in Mode:
        m, n = (k for k in Mode if k != solo)
        c = one_vs_two_negativity(v, solo) ** 2
        one_vs_two[MODE_LABELS[solo]] = c
        residuals[solo] = c - c_pair(solo, m) - c_pair(solo, n)
    raw = min(residuals.values())
    return TripartiteReport(
        r_d=residuals[Mode.CAVITY],
        r_o1=residuals[Mode.MAGNON1],
        r_o2=residuals[Mode.MAGNON2],
        r_min=max(0.0, raw),
        r_min_raw=raw,
        one_vs_two=one_vs_two,
        pairwise={f"{MODE_LABELS[a]}|{MODE_LABELS[b]}": c for (a, b), c in pairwise.items()},
    )


def gip_or_none(m: TwoModeCM) -> float | None:
    try:
        return gip(m)
    except DomainError:
        return None


def bipartite_report(v: np.ndarray, mode_a=Mode.MAGNON1, mode_b=Mode.MAGNON2) -> BipartiteReport:
    m = reduce(v, mode_a, mode_b)
    prod = mancini_product(m)
    return BipartiteReport(
        entanglement=log_negativity(m),
        steering_ab=steering(m, "ab"),
        steering_ba=steering(m, "ba"),
        gip=gip_or_none(m),
        mancini_product=prod,
        mancini_entangled=mancini_entangled(prod),
        stable=True,
    )


UNSTABLE_BIPARTITE = BipartiteReport(None, None, None, None, None, None, stable=False)
