"""System parameters and the linearised drift/diffusion matrices.

Everything is expressed in units of the cavity linewidth ``kappa_d`` (which is
therefore normally 1). Quadratures are ordered ``(X, P, x1, y1, x2, y2)``:
cavity first, then the two magnon modes. Vacuum variance is 1/2.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, replace

import numpy as np

from .errors import ArgumentError

HBAR = 1.054571817e-34  # J s
K_B = 1.380649e-23  # J / K
# Taken as gamma/2pi. The source text writes gamma/pi = 28 GHz/T; nothing
# downstream depends on which reading is right.
GYROMAGNETIC_HZ_PER_T = 28e9

STABILITY_EPS = 1e-12

QUADRATURES = ("X", "P", "x1", "y1", "x2", "y2")


@dataclass(frozen=True)
class SystemParams:
    """Rotating-frame model parameters, all rates in units of ``kappa_d``."""

    delta_d: float = 0.0
    delta_o1: float = 0.0
    delta_o2: float = 0.0
    kappa_d: float = 1.0
    kappa_o1: float = 0.2
    kappa_o2: float = 0.2
    g1: float = 4.0
    g2: float = 4.0
    lam: float = 0.0
    r: float = 0.0
    n_o1: float = 0.0
    n_o2: float = 0.0

    def __post_init__(self):
        for name in ("kappa_d", "kappa_o1", "kappa_o2"):
            value = getattr(self, name)
            if not value > 0:
                raise ArgumentError(f"{name} must be strictly positive, got {value!r}")
        for name in ("g1", "g2", "lam", "r", "n_o1", "n_o2"):
            value = getattr(self, name)
            if not value >= 0:
                raise ArgumentError(f"{name} must be non-negative, got {value!r}")
        for name in ("delta_d", "delta_o1", "delta_o2"):
            if not math.isfinite(getattr(self, name)):
                raise ArgumentError(f"{name} must be finite")

    @classmethod
    def baseline(cls, **overrides) -> "SystemParams":
        """Resonant, identical magnons with ``kappa_d = 5 kappa_o`` and ``g = 4 kappa_d``.

        Gain, squeezing and occupations default to zero and are usually
        supplied through ``overrides``.
        """
        return cls(**overrides)

    def with_updates(self, **changes) -> "SystemParams":
        return replace(self, **changes)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["lambda"] = d.pop("lam")
        return d


@dataclass(frozen=True)
class PhysicalEnv:
    """Absolute scales used only for unit conversion at the boundaries."""

    omega_d_hz: float = 10e9
    temperature_k: float = 0.020
    kappa_d_hz: float = 5e6
    hbar: float = HBAR
    k_b: float = K_B
    gyromag_hz_per_t: float = GYROMAGNETIC_HZ_PER_T

    def __post_init__(self):
        if not self.temperature_k >= 0:
            raise ArgumentError("temperature_k must be non-negative")
        if not self.omega_d_hz > 0:
            raise ArgumentError("omega_d_hz must be positive")
        if not self.kappa_d_hz > 0:
            raise ArgumentError("kappa_d_hz must be positive")

    def as_dict(self) -> dict:
        return asdict(self)


def thermal_occupation(env: PhysicalEnv, mode_freq_hz: float) -> float:
    """Bose-Einstein occupation of a mode of ordinary frequency ``mode_freq_hz``."""
    if mode_freq_hz <= 0:
        raise ArgumentError("mode frequency must be positive")
    if env.temperature_k == 0:
        return 0.0
    x = env.hbar * 2 * math.pi * mode_freq_hz / (env.k_b * env.temperature_k)
    # exp(-x) form does not overflow deep in the quantum regime
    return math.exp(-x) / -math.expm1(-x)


def occupation_to_temperature(env: PhysicalEnv, n: float, mode_freq_hz: float) -> float:
    """Invert :func:`thermal_occupation`: temperature in kelvin for occupation ``n``.

    Raises
    ------
    ArgumentError
        If ``n <= 0``; zero occupation has no finite temperature (use T = 0).
    """
    if not n > 0:
        raise ArgumentError("zero occupation has no finite temperature")
    if mode_freq_hz <= 0:
        raise ArgumentError("mode frequency must be positive")
    omega = 2 * math.pi * mode_freq_hz
    return env.hbar * omega / (env.k_b * math.log1p(1.0 / n))


def build_drift(p: SystemParams) -> np.ndarray:
    """Return the 6x6 drift matrix of the quadrature fluctuations."""
    kd, lam = p.kappa_d, p.lam
    g1, g2 = p.g1, p.g2
    u = np.zeros((6, 6))
    u[0] = [-kd + 2 * lam, p.delta_d, 0, g1, 0, g2]
    u[1] = [-p.delta_d, -kd - 2 * lam, -g1, 0, -g2, 0]
    u[2] = [0, g1, -p.kappa_o1, p.delta_o1, 0, 0]
    u[3] = [-g1, 0, -p.delta_o1, -p.kappa_o1, 0, 0]
    u[4] = [0, g2, 0, 0, -p.kappa_o2, p.delta_o2]
    u[5] = [-g2, 0, 0, 0, -p.delta_o2, -p.kappa_o2]
    return u


def build_diffusion(p: SystemParams) -> np.ndarray:
    """Diagonal diffusion matrix: squeezed vacuum on the cavity, thermal magnon baths."""
    # 2 sinh^2 r + 1 +/- sinh 2r == exp(+/-2r); the sinh form cancels badly for large r
    m1 = p.kappa_o1 * (2 * p.n_o1 + 1)
    m2 = p.kappa_o2 * (2 * p.n_o2 + 1)
    return np.diag([
        p.kappa_d * math.exp(2 * p.r),
        p.kappa_d * math.exp(-2 * p.r),
        m1, m1, m2, m2,
    ])


def drift_spectral_abscissa(u: np.ndarray) -> float:
    """Largest real part among the eigenvalues of ``u``."""
    return float(np.max(np.linalg.eigvals(u).real))


def is_stable(u: np.ndarray, eps: float = STABILITY_EPS) -> bool:
    return drift_spectral_abscissa(u) < -eps
