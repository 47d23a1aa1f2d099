"""Command-line front end: ``point``, ``sweep`` and ``figure``.

Rates (lambda, g, detunings) are given in units of kappa_d; absolute
frequencies in GHz/MHz and the temperature in mK. Exit codes: 0 success,
1 bad invocation, 2 unstable parameters (``point`` only).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field, replace

from . import measures
from .errors import ConfigError, MagnonicsError
from .measures import MODE_LABELS, Mode
from .model import PhysicalEnv, SystemParams, thermal_occupation
from .sweep import (
    FIGURES,
    RECORD_FIELDS,
    SweepAxis,
    evaluate,
    figure_preset,
    run_figure,
    run_sweep,
)

EXIT_OK, EXIT_USAGE, EXIT_UNSTABLE = 0, 1, 2

# flag dest -> SystemParams keyword(s)
PARAM_FLAGS = {
    "delta_d": ("delta_d",),
    "delta_o": ("delta_o1", "delta_o2"),
    "g1": ("g1",),
    "g2": ("g2",),
    "lam": ("lam",),
    "r": ("r",),
}

CLI_DEFAULTS = {
    "delta_d": 0.0,
    "delta_o": 0.0,
    "g1": 4.0,
    "g2": 4.0,
    "lam": 0.2,
    "r": 2.0,
    "kappa_d_mhz": 5.0,
    "kappa_o_ratio": 0.2,
    "temp_mk": 20.0,
    "omega_d_ghz": 10.0,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    env: dict = field(default_factory=dict)
    axes: list = field(default_factory=list)
    figure: str | None = None
    out: str | None = None
    fmt: str = "json"
    threads: int = 1
    count: int | None = None

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "RunConfig":
        params = {k: getattr(ns, k) for k in PARAM_FLAGS if getattr(ns, k) is not None}
        env = {k: getattr(ns, k) for k in ("kappa_d_mhz", "kappa_o_ratio", "temp_mk", "omega_d_ghz")
               if getattr(ns, k) is not None}
        return cls(
            command=ns.command,
            params=params,
            env=env,
            axes=list(getattr(ns, "axis", None) or []),
            figure=getattr(ns, "name", None),
            out=getattr(ns, "out", None),
            fmt=getattr(ns, "format", None) or ("json" if ns.command == "point" else "csv"),
            threads=getattr(ns, "threads", 1) or 1,
            count=getattr(ns, "count", None),
        )


def _add_model_flags(p: argparse.ArgumentParser, with_defaults: bool):
    d = CLI_DEFAULTS if with_defaults else {}
    g = p.add_argument_group("model (rates in units of kappa_d)")
    g.add_argument("--delta-d", dest="delta_d", type=float, default=d.get("delta_d"))
    g.add_argument("--delta-o", dest="delta_o", type=float, default=d.get("delta_o"),
                   help="detuning of both magnons")
    g.add_argument("--g1", type=float, default=d.get("g1"))
    g.add_argument("--g2", type=float, default=d.get("g2"))
    g.add_argument("--lambda", dest="lam", type=float, default=d.get("lam"), help="OPA gain")
    g.add_argument("--r", type=float, default=d.get("r"), help="input squeezing parameter")
    g.add_argument("--kappa-o-ratio", dest="kappa_o_ratio", type=float, default=d.get("kappa_o_ratio"),
                   help="kappa_o / kappa_d")
    e = p.add_argument_group("physical scales")
    e.add_argument("--kappa-d-mhz", dest="kappa_d_mhz", type=float, default=d.get("kappa_d_mhz"),
                   help="kappa_d / 2pi in MHz (recorded; the model is in units of kappa_d)")
    e.add_argument("--temp-mk", dest="temp_mk", type=float, default=d.get("temp_mk"))
    e.add_argument("--omega-d-ghz", dest="omega_d_ghz", type=float, default=d.get("omega_d_ghz"),
                   help="cavity (and magnon) frequency / 2pi in GHz")


def _add_output_flags(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--threads", type=int, default=1, metavar="N")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="magnonics", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("point", help="evaluate one parameter point, JSON report on stdout")
    _add_model_flags(p, with_defaults=True)

    s = sub.add_parser("sweep", help="1-D or 2-D grid sweep")
    _add_model_flags(s, with_defaults=True)
    s.add_argument("--axis", action="append", required=True, metavar="NAME:START:STOP:COUNT")
    _add_output_flags(s)

    f = sub.add_parser("figure", help="run a figure preset")
    f.add_argument("name", metavar="FIGURE", help=f"one of {', '.join(FIGURES)}")
    _add_model_flags(f, with_defaults=False)
    f.add_argument("--count", type=int, metavar="N", help="override the points per axis")
    _add_output_flags(f)
    return parser


def make_env(env: dict, base: PhysicalEnv | None = None) -> PhysicalEnv:
    base = base or PhysicalEnv()
    changes = {}
    if "temp_mk" in env:
        changes["temperature_k"] = env["temp_mk"] * 1e-3
    if "omega_d_ghz" in env:
        changes["omega_d_hz"] = env["omega_d_ghz"] * 1e9
    if "kappa_d_mhz" in env:
        changes["kappa_d_hz"] = env["kappa_d_mhz"] * 1e6
    return replace(base, **changes)


def make_params(cfg_params: dict, env_flags: dict, env: PhysicalEnv,
                base: SystemParams | None = None, retherm: bool = True) -> SystemParams:
    base = base or SystemParams()
    changes = {}
    for flag, value in cfg_params.items():
        for key in PARAM_FLAGS[flag]:
            changes[key] = value
    if "kappa_o_ratio" in env_flags:
        k = env_flags["kappa_o_ratio"] * base.kappa_d
        changes["kappa_o1"] = changes["kappa_o2"] = k
    if retherm:
        n = thermal_occupation(env, env.omega_d_hz)
        changes["n_o1"] = changes["n_o2"] = n
    return replace(base, **changes)


def _meta(params: SystemParams, env: PhysicalEnv, **extra) -> dict:
    meta = {"params": params.as_dict(), "env": env.as_dict()}
    meta["units"] = "rates in units of kappa_d; env frequencies in Hz (ordinary); temperature in K"
    meta.update(extra)
    return meta


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _flatten(meta: dict, prefix: str = ""):
    for key, value in meta.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            yield from _flatten(value, name + ".")
        else:
            yield name, value


def records_to_csv(records, meta: dict) -> str:
    buf = io.StringIO()
    for key, value in _flatten(meta):
        if isinstance(value, (list, tuple)):
            value = ";".join(_fmt(v) for v in value)
        buf.write(f"# {key} = {_fmt(value)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(RECORD_FIELDS)
    for rec in records:
        row = asdict(rec)
        w.writerow([_fmt(row[k]) for k in RECORD_FIELDS])
    return buf.getvalue()


def records_to_json(records, meta: dict) -> str:
    return json.dumps({"meta": meta, "records": [asdict(r) for r in records]}, indent=1)


def _parse_cell(text: str):
    if text == "":
        return None
    if text in ("true", "false"):
        return text == "true"
    return float(text)


def read_csv(text: str) -> tuple[dict, list[dict]]:
    """Parse output of :func:`records_to_csv` back into ``(meta, rows)``."""
    meta, body = {}, []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition(" = ")
            meta[key] = value
        else:
            body.append(line)
    rows = list(csv.DictReader(body))
    return meta, [{k: _parse_cell(v) for k, v in row.items()} for row in rows]


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _clean(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return x


def point_report(params: SystemParams, env: PhysicalEnv) -> dict:
    res = evaluate(params)
    report = {"meta": _meta(params, env), "stable": res.stable}
    report["variances"] = res.variances
    report["squeezing_db"] = {
        q: (None if v is None else measures.squeezing_db(v)) for q, v in res.variances.items()
    }
    pairs = {}
    for a, b in ((Mode.MAGNON1, Mode.MAGNON2), (Mode.CAVITY, Mode.MAGNON1), (Mode.CAVITY, Mode.MAGNON2)):
        rep = measures.bipartite_report(res.v, a, b) if res.stable else measures.UNSTABLE_BIPARTITE
        pairs[f"{MODE_LABELS[a]}|{MODE_LABELS[b]}"] = {k: _clean(v) for k, v in asdict(rep).items()}
    report["bipartite"] = pairs
    report["tripartite"] = None if res.tripartite is None else asdict(res.tripartite)
    return report


def cmd_point(cfg: RunConfig) -> int:
    env = make_env(cfg.env)
    params = make_params(cfg.params, cfg.env, env)
    report = point_report(params, env)
    print(json.dumps(report, indent=1))
    return EXIT_OK if report["stable"] else EXIT_UNSTABLE


def _write_records(records, meta, cfg: RunConfig):
    text = records_to_csv(records, meta) if cfg.fmt == "csv" else records_to_json(records, meta)
    _emit(text, cfg.out)


def cmd_sweep(cfg: RunConfig) -> int:
    axes = [SweepAxis.parse(a) for a in cfg.axes]
    if not 1 <= len(axes) <= 2:
        raise ConfigError("give one or two --axis options")
    env = make_env(cfg.env)
    params = make_params(cfg.params, cfg.env, env)
    records = run_sweep(params, env, axes, threads=cfg.threads)
    meta = _meta(params, env, axes={f"axis{i + 1}": asdict(ax) for i, ax in enumerate(axes)})
    _write_records(records, meta, cfg)
    return EXIT_OK


def cmd_figure(cfg: RunConfig) -> int:
    preset = figure_preset(cfg.figure)
    env = make_env(cfg.env, preset.env)
    overridden = sorted(set(cfg.params) | set(cfg.env))
    params = make_params(cfg.params, cfg.env, env, base=preset.params,
                         retherm="temp_mk" in cfg.env or "omega_d_ghz" in cfg.env)
    preset = replace(preset, params=params, env=env)
    if cfg.count is not None:
        if cfg.count < 2:
            raise ConfigError("--count must be >= 2")
        preset = preset.with_count(cfg.count)
    records = run_figure(preset, threads=cfg.threads)
    if preset.series is not None:
        axes = {"axis1": {"name": preset.series.name, "values": list(preset.series.values)},
                "axis2": asdict(preset.axes[0])}
    else:
        axes = {f"axis{i + 1}": asdict(ax) for i, ax in enumerate(preset.axes)}
    meta = _meta(
        params, env,
        figure=preset.name,
        description=preset.description,
        quantity=preset.quantity,
        axes=axes,
        stated=list(preset.stated),
        default_filled=list(preset.defaulted),
        overridden=overridden,
    )
    _write_records(records, meta, cfg)
    return EXIT_OK


COMMANDS = {"point": cmd_point, "sweep": cmd_sweep, "figure": cmd_figure}


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = RunConfig.from_namespace(ns)
    if cfg.threads < 1:
        parser.error("--threads must be >= 1")
    try:
        return COMMANDS[cfg.command](cfg)
    except MagnonicsError as exc:
        print(f"magnonics: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
