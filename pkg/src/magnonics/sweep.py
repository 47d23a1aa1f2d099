"""Parameter sweeps over the full steady-state pipeline and the figure presets."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields, replace

import numpy as np

from . import measures
from .errors import ConfigError, StabilityError
from .measures import Mode
from .model import (
    QUADRATURES,
    PhysicalEnv,
    SystemParams,
    build_diffusion,
    build_drift,
    thermal_occupation,
)
from .steady_state import solve_lyapunov

AXIS_PARAMETERS = ("delta_d", "delta_o", "lambda", "r", "temperature_mk", "g", "n_o")


@dataclass(frozen=True)
class PointResult:
    """Everything computed at one parameter point; ``v`` is None when unstable."""

    params: SystemParams
    stable: bool
    v: np.ndarray | None
    magnons: measures.BipartiteReport
    tripartite: measures.TripartiteReport | None

    @property
    def variances(self) -> dict:
        if self.v is None:
            return {q: None for q in QUADRATURES}
        return {q: float(self.v[i, i]) for i, q in enumerate(QUADRATURES)}


def steady_state(p: SystemParams) -> np.ndarray:
    """Steady-state covariance matrix for ``p``; raises StabilityError if none exists."""
    return solve_lyapunov(build_drift(p), build_diffusion(p))


def evaluate(p: SystemParams) -> PointResult:
    try:
        v = solve_lyapunov(build_drift(p), build_diffusion(p))
    except StabilityError:
        return PointResult(p, False, None, measures.UNSTABLE_BIPARTITE, None)
    return PointResult(
        params=p,
        stable=True,
        v=v,
        magnons=measures.bipartite_report(v, Mode.MAGNON1, Mode.MAGNON2),
        tripartite=measures.residual_contangle(v),
    )


@dataclass(frozen=True)
class SweepAxis:
    name: str
    start: float
    stop: float
    count: int

    def __post_init__(self):
        if self.name not in AXIS_PARAMETERS:
            raise ConfigError(f"unknown sweep parameter {self.name!r}; expected one of {AXIS_PARAMETERS}")
        if not self.start < self.stop:
            raise ConfigError(f"axis {self.name}: start must be < stop")
        if int(self.count) != self.count or self.count < 2:
            raise ConfigError(f"axis {self.name}: count must be an integer >= 2")

    @classmethod
    def parse(cls, spec: str) -> "SweepAxis":
        """Parse ``name:start:stop:count``."""
        parts = spec.split(":")
        if len(parts) != 4:
            raise ConfigError(f"malformed axis {spec!r}; expected name:start:stop:count")
        name, start, stop, count = parts
        try:
            return cls(name, float(start), float(stop), int(count))
        except ValueError as exc:
            raise ConfigError(f"malformed axis {spec!r}: {exc}") from None

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, int(self.count))


def apply_parameter(p: SystemParams, env: PhysicalEnv, name: str, value: float) -> SystemParams:
    """Return ``p`` with sweep parameter ``name`` set to ``value``.

    ``delta_o``, ``g`` and ``n_o`` act on both magnons. ``temperature_mk`` sets
    both magnon occupations from the Bose-Einstein factor at the cavity
    frequency (the magnons are resonant with it).
    """
    value = float(value)
    if name == "delta_d":
        return replace(p, delta_d=value)
    if name == "delta_o":
        return replace(p, delta_o1=value, delta_o2=value)
    if name == "lambda":
        return replace(p, lam=value)
    if name == "r":
        return replace(p, r=value)
    if name == "g":
        return replace(p, g1=value, g2=value)
    if name == "n_o":
        return replace(p, n_o1=value, n_o2=value)
    if name == "temperature_mk":
        n = thermal_occupation(replace(env, temperature_k=value * 1e-3), env.omega_d_hz)
        return replace(p, n_o1=n, n_o2=n)
    raise ConfigError(f"unknown sweep parameter {name!r}")


@dataclass(frozen=True)
class SweepRecord:
    axis1: float
    axis2: float | None
    stable: bool
    E_N: float | None
    S_ab: float | None
    S_ba: float | None
    GIP: float | None
    mancini: float | None
    var_X: float | None
    var_P: float | None
    var_x1: float | None
    var_y1: float | None
    var_x2: float | None
    var_y2: float | None
    sq_db_x1: float | None
    R_d: float | None
    R_o1: float | None
    R_o2: float | None
    R_min: float | None

    @classmethod
    def from_result(cls, res: PointResult, axis1: float, axis2: float | None = None) -> "SweepRecord":
        var = res.variances
        mag = res.magnons
        tri = res.tripartite
        return cls(
            axis1=float(axis1),
            axis2=None if axis2 is None else float(axis2),
            stable=res.stable,
            E_N=mag.entanglement,
            S_ab=mag.steering_ab,
            S_ba=mag.steering_ba,
            GIP=mag.gip,
            mancini=mag.mancini_product,
            **{f"var_{q}": var[q] for q in QUADRATURES},
            sq_db_x1=None if var["x1"] is None else measures.squeezing_db(var["x1"]),
            R_d=tri.r_d if tri else None,
            R_o1=tri.r_o1 if tri else None,
            R_o2=tri.r_o2 if tri else None,
            R_min=tri.r_min if tri else None,
        )

    def as_dict(self) -> dict:
        return asdict(self)


RECORD_FIELDS = tuple(f.name for f in fields(SweepRecord))


def grid_points(axes) -> list[tuple[float, float | None]]:
    if len(axes) == 1:
        return [(float(a), None) for a in axes[0].values]
    if len(axes) == 2:
        return [(float(a), float(b)) for a in axes[0].values for b in axes[1].values]
    raise ConfigError("a sweep takes one or two axes")


def run_sweep(base: SystemParams, env: PhysicalEnv, axes, threads: int = 1) -> list[SweepRecord]:
    """Evaluate the pipeline on a 1-D or 2-D grid, row-major in axis order.

    Each grid point is independent; with ``threads > 1`` the points are
    evaluated by a thread pool but the records come back in grid order and
    are identical to a serial run.
    """
    axes = list(axes)
    names = [ax.name for ax in axes]
    if len(set(names)) != len(names):
        raise ConfigError("sweep axes must be distinct parameters")
    points = grid_points(axes)

    def work(point):
        p = base
        for ax, value in zip(axes, point):
            p = apply_parameter(p, env, ax.name, value)
        return SweepRecord.from_result(evaluate(p), *point)

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(work, points))
    return [work(pt) for pt in points]


# --- figure presets -------------------------------------------------------

DETUNING_RANGE = (-5.0, 5.0)
DETUNING_COUNT = 101
FIG2_DEFAULT_R = 2.0
FIG3_LAMBDAS = (0.0, 0.1, 0.3, 0.5)
FIG7_TEMPERATURES_MK = (10.0, 50.0, 100.0)


@dataclass(frozen=True)
class Series:
    """A family of curves: the preset sweep is repeated for each value."""

    name: str
    values: tuple


@dataclass(frozen=True)
class FigurePreset:
    name: str
    description: str
    quantity: str
    params: SystemParams
    env: PhysicalEnv
    axes: tuple
    series: Series | None = None
    stated: tuple = ()
    defaulted: tuple = ()

    def with_count(self, count: int) -> "FigurePreset":
        return replace(self, axes=tuple(replace(ax, count=count) for ax in self.axes))


def _detuning_axis(name):
    return SweepAxis(name, *DETUNING_RANGE, DETUNING_COUNT)


def _env(temperature_mk=20.0) -> PhysicalEnv:
    return PhysicalEnv(temperature_k=temperature_mk * 1e-3)


def _params(env: PhysicalEnv, **kw) -> SystemParams:
    n = thermal_occupation(env, env.omega_d_hz)
    return SystemParams(n_o1=n, n_o2=n, **kw)


_BASE_STATED = ("omega_d_hz", "kappa_d_hz", "kappa_o", "g")


def _fig2(name, lam):
    env = _env(20.0)
    return FigurePreset(
        name=name,
        description=f"E_N(O1,O2) over (delta_o, delta_d), lambda = {lam}",
        quantity="E_N",
        params=_params(env, lam=lam, r=FIG2_DEFAULT_R),
        env=env,
        axes=(_detuning_axis("delta_o"), _detuning_axis("delta_d")),
        stated=_BASE_STATED + ("temperature", "lambda"),
        defaulted=("r", "delta_o range", "delta_d range"),
    )


def _fig3a():
    env = _env(20.0)
    return FigurePreset(
        name="fig3a",
        description="E_N(O1,O2) versus temperature for several lambda, r = 2",
        quantity="E_N",
        params=_params(env, r=2.0),
        env=env,
        axes=(SweepAxis("temperature_mk", 0.0, 1200.0, 241),),
        series=Series("lambda", FIG3_LAMBDAS),
        stated=_BASE_STATED + ("r",),
        defaulted=("lambda list", "temperature range"),
    )


def _fig3b():
    env = _env(20.0)
    return FigurePreset(
        name="fig3b",
        description="E_N(O1,O2) versus r for several lambda, T = 20 mK",
        quantity="E_N",
        params=_params(env),
        env=env,
        axes=(SweepAxis("r", 0.0, 3.0, 61),),
        series=Series("lambda", FIG3_LAMBDAS),
        stated=_BASE_STATED + ("temperature",),
        defaulted=("lambda list", "r range"),
    )


def _fig4(name, r):
    env = _env(20.0)
    return FigurePreset(
        name=name,
        description=f"steering, E_N and GIP of (O1,O2) versus lambda, r = {r}",
        quantity="S_ab,S_ba,E_N,GIP",
        params=_params(env, r=r),
        env=env,
        axes=(SweepAxis("lambda", 0.0, 0.5, 51),),
        stated=_BASE_STATED + ("temperature", "r", "lambda range"),
        defaulted=(),
    )


def _fig56(name, quantity, description, second):
    env = _env(20.0)
    if second:
        # detuning on the first axis, squeezing on the second; the other detuning is 0
        first = "delta_d" if quantity == "mancini" else "delta_o"
        axes = (_detuning_axis(first), SweepAxis("r", 0.0, 3.0, 61))
        defaulted = (f"{first} range", "r range")
    else:
        axes = (_detuning_axis("delta_o"), _detuning_axis("delta_d"))
        defaulted = ("delta_o range", "delta_d range")
    return FigurePreset(
        name=name,
        description=description,
        quantity=quantity,
        params=_params(env, lam=0.2, r=2.0),
        env=env,
        axes=axes,
        stated=_BASE_STATED + ("temperature", "lambda") + (() if second else ("r",)),
        defaulted=defaulted,
    )


def _fig7a():
    env = _env(10.0)
    return FigurePreset(
        name="fig7a",
        description="R_min versus r for several temperatures, lambda = 0.2, g = 1",
        quantity="R_min",
        params=_params(env, lam=0.2, g1=1.0, g2=1.0),
        env=env,
        axes=(SweepAxis("r", 0.0, 1.5, 151),),
        series=Series("temperature_mk", FIG7_TEMPERATURES_MK),
        stated=("omega_d_hz", "kappa_d_hz", "kappa_o", "g", "lambda"),
        defaulted=("temperature list", "r range"),
    )


def _fig7b():
    env = _env(10.0)
    return FigurePreset(
        name="fig7b",
        description="R_min versus lambda for several temperatures, r = 0.4, g = 1",
        quantity="R_min",
        params=_params(env, r=0.4, g1=1.0, g2=1.0),
        env=env,
        axes=(SweepAxis("lambda", 0.0, 0.5, 101),),
        series=Series("temperature_mk", FIG7_TEMPERATURES_MK),
        stated=("omega_d_hz", "kappa_d_hz", "kappa_o", "r"),
        defaulted=("g (taken from fig7a)", "temperature list", "lambda range"),
    )


_PRESETS = {
    "fig2a": lambda: _fig2("fig2a", 0.0),
    "fig2b": lambda: _fig2("fig2b", 0.2),
    "fig3a": _fig3a,
    "fig3b": _fig3b,
    "fig4a": lambda: _fig4("fig4a", 1.0),
    "fig4b": lambda: _fig4("fig4b", 2.0),
    "fig5a": lambda: _fig56("fig5a", "mancini", "Mancini product over (delta_o, delta_d)", False),
    "fig5b": lambda: _fig56("fig5b", "mancini", "Mancini product over (delta_d, r), delta_o = 0", True),
    "fig6a": lambda: _fig56("fig6a", "var_x1", "variance of x1 over (delta_o, delta_d)", False),
    "fig6b": lambda: _fig56("fig6b", "var_x1", "variance of x1 over (delta_o, r), delta_d = 0", True),
    "fig7a": _fig7a,
    "fig7b": _fig7b,
}

FIGURES = tuple(_PRESETS)


def figure_preset(name: str) -> FigurePreset:
    try:
        return _PRESETS[name]()
    except KeyError:
        raise ConfigError(f"unknown figure {name!r}; valid names: {', '.join(FIGURES)}") from None


def run_figure(preset: FigurePreset, threads: int = 1) -> list[SweepRecord]:
    """Run a preset. Curve families put the series value in ``axis1``."""
    if preset.series is None:
        return run_sweep(preset.params, preset.env, preset.axes, threads=threads)
    (axis,) = preset.axes
    out = []
    for value in preset.series.values:
        p = apply_parameter(preset.params, preset.env, preset.series.name, value)
        for rec in run_sweep(p, preset.env, [axis], threads=threads):
            out.append(replace(rec, axis1=float(value), axis2=rec.axis1))
    return out

