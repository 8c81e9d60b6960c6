"""Command line entry point: ``bmhull <command> [options]``.

Settings are resolved per key: command-line flag, then ``BH_<KEY>``
environment variable, then a ``key = value`` config file (``--config`` or
``BH_CONFIG``), then the built-in default.

Exit codes: 0 success, 2 usage error, 3 censoring above 1 % or another
quality failure, 4 self-test failure.
"""
from __future__ import annotations

import argparse
import configparser
import csv
import dataclasses
import io
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Any

from . import __version__, analytic, optim, quad, sim

EXIT_OK, EXIT_USAGE, EXIT_QUALITY, EXIT_SELFTEST = 0, 2, 3, 4
CENSOR_LIMIT = 0.01

DEFAULTS: dict[str, Any] = {
    "seed": 42,
    "paths": 10_000,
    "steps": 10_000,
    "horizon": None,   # command specific, see _default_horizon
    "level": 1.0,
    "format": "text",
    "tol": 1e-10,
    "threads": 1,
    "out": None,
    "slits": 6,
}
_CASTS = {"seed": int, "paths": int, "steps": int, "horizon": float, "level": float,
          "format": str, "tol": float, "threads": int, "out": str, "slits": int}
FORMATS = ("csv", "json", "text")
CSV_COLUMNS = ("quantity", "lower", "mc_mean", "mc_se", "censored", "upper")


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# report


@dataclass
class Row:
    quantity: str
    lower: float | None
    mc_mean: float | None
    mc_se: float | None
    censored: float | None
    upper: float | None


@dataclass
class RunReport:
    command: str
    config: dict[str, Any]
    rows: list[Row] = field(default_factory=list)
    extras: list[dict[str, Any]] = field(default_factory=list)
    integrals: dict[str, dict[str, float]] = field(default_factory=dict)
    version: str = __version__
    timestamp: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "RunReport":
        d = dict(d)
        d["rows"] = [Row(**r) for r in d.get("rows", [])]
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.rows:
            w.writerow([r.quantity] + [_g9(getattr(r, c)) for c in CSV_COLUMNS[1:]])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"bmhull {self.version}  {self.command}"]
        if self.timestamp:
            lines.append(f"generated {self.timestamp}")
        lines.append("config: " + ", ".join(f"{k}={v}" for k, v in sorted(self.config.items())))
        if self.rows:
            lines.append("")
            lines.append(f"{'quantity':<14}{'lower':>12}{'mc_mean':>12}{'mc_se':>12}"
                         f"{'censored':>10}{'upper':>12}")
            for r in self.rows:
                lines.append(f"{r.quantity:<14}{_fmt(r.lower):>12}{_fmt(r.mc_mean):>12}"
                             f"{_fmt(r.mc_se):>12}{_fmt(r.censored):>10}{_fmt(r.upper):>12}")
        if self.extras:
            lines.append("")
            for e in self.extras:
                parts = [f"{k}={_fmt(v) if isinstance(v, float) else v}" for k, v in e.items()]
                lines.append("  ".join(parts))
        if self.integrals:
            lines.append("")
            for name, d in sorted(self.integrals.items()):
                lines.append(f"{name:<28}{d['value']:.12g}  (+/- {d['abs_error_estimate']:.2g})")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        return self.to_text()


def _g9(x) -> str:
    if x is None:
        return ""
    return f"{x:.9g}"


def _fmt(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, float):
        return f"{x:.6g}"
    return str(x)


# --------------------------------------------------------------------------
# settings


def _read_config_file(path: str) -> dict[str, str]:
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#",))
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_string("[bmhull]\n" + fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    except configparser.Error as exc:
        raise UsageError(f"bad config file {path}: {exc}") from exc
    return {k: v.strip().strip('"').strip("'") for k, v in cp["bmhull"].items()}


def resolve_settings(args: argparse.Namespace, env=None) -> dict[str, Any]:
    env = os.environ if env is None else env
    cfg_path = getattr(args, "config", None) or env.get("BH_CONFIG")
    from_file = _read_config_file(cfg_path) if cfg_path else {}
    unknown = set(from_file) - set(DEFAULTS)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    out = {}
    for key, default in DEFAULTS.items():
        val = getattr(args, key, None)
        if val is None:
            val = env.get("BH_" + key.upper())
        if val is None:
            val = from_file.get(key)
        if val is None:
            out[key] = default
            continue
        try:
            out[key] = _CASTS[key](val)
        except ValueError as exc:
            raise UsageError(f"bad value for {key}: {val!r}") from exc
    if out["format"] not in FORMATS:
        raise UsageError(f"format must be one of {', '.join(FORMATS)}")
    for key in ("paths", "steps", "threads"):
        if out[key] < 1:
            raise UsageError(f"{key} must be >= 1")
    if not 0 <= out["seed"] < 2 ** 64:
        raise UsageError("seed must be an unsigned 64-bit integer")
    if out["horizon"] is not None and not out["horizon"] > 0:
        raise UsageError("horizon must be positive")
    if not out["tol"] > 0:
        raise UsageError("tol must be positive")
    return out


def _emit(text: str, settings: dict[str, Any]) -> None:
    if settings["out"]:
        with open(settings["out"], "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# commands

_TABLE_ROWS = (
    ("E[R]", "R"),
    ("E[r]", "r"),
    ("E[Theta^P]", "theta_P"),
    ("E[Theta^A]", "theta_A"),
    ("E[Theta^D]", "theta_D"),
    ("E[Theta^R]", "theta_R"),
    ("E[Theta^r]", "theta_r"),
)


def _integrals(tol: float) -> dict[str, dict[str, float]]:
    c = quad.min_range_constant(tol)
    p2 = quad.perimeter_second_moment(inner_tol=max(tol, 1e-12), outer_tol=max(10 * tol, 1e-11))
    return {
        "min_range_constant": {"value": c.value, "abs_error_estimate": c.abs_error_estimate},
        "perimeter_second_moment": {"value": p2.value, "abs_error_estimate": p2.abs_error_estimate},
    }


def _extras(rec: sim.PathRecords) -> list[dict[str, Any]]:
    import numpy as np

    P, A = rec["P"], rec["A"]
    iso = np.sqrt(np.maximum(P * P - 4.0 * np.pi * A, 0.0))
    derived = {
        "E[P]": (P, analytic.exact_mean_perimeter(1.0)),
        "E[A]": (A, analytic.exact_mean_area(1.0)),
        "E[D]": (rec["D"], None),
        "E[(P+sqrt(P^2-4piA))/2pi]": ((P + iso) / (2 * np.pi), None),
        "E[(P-sqrt(P^2-4piA))/2pi]": ((P - iso) / (2 * np.pi), None),
        "E[sqrt(A/pi)]": (np.sqrt(A / np.pi), None),
        "E[chord inradius]": (rec["chord"], None),
        "E[min range time]": (rec["theta_Rmin"], quad.min_range_constant().value),
    }
    out = []
    for name, (vals, exact) in derived.items():
        est = sim.summarize(vals, rec.censored.get("theta_Rmin") if name == "E[min range time]" else None)
        d = {"quantity": name, "mc_mean": est.mean, "mc_se": est.std_error,
             "censored": est.censored_fraction}
        if exact is not None:
            d["exact"] = exact
        out.append(d)
    return out


def cmd_table1(settings: dict[str, Any]) -> tuple[RunReport, int]:
    horizon = settings["horizon"] if settings["horizon"] is not None else 5.0
    cfg = sim.PathConfig(n_steps=settings["steps"], horizon=horizon,
                         master_seed=settings["seed"], n_paths=settings["paths"])
    if cfg.n_paths < 2:
        raise UsageError("table1 needs at least 2 paths")
    if cfg.horizon < 1:
        raise UsageError("table1 needs horizon >= 1")
    if cfg.n_steps % 2:
        raise UsageError("table1 needs an even number of steps")
    rec = sim.simulate_records(cfg, threads=settings["threads"])
    rows = []
    bad = []
    for b, (label, field_name) in zip(analytic.bounds_table(), _TABLE_ROWS):
        assert b.quantity == label
        est = rec.estimate(field_name)
        rows.append(Row(label, b.lower, est.mean, est.std_error, est.censored_fraction, b.upper))
        if est.censored_fraction > CENSOR_LIMIT:
            bad.append(label)
    report = RunReport(
        command="table1",
        config={"seed": cfg.master_seed, "n_paths": cfg.n_paths, "n_steps": cfg.n_steps,
                "horizon": cfg.horizon,
                "levels": {k.name.lower(): v for k, v in sim.TABLE_LEVELS.items()}},
        rows=rows,
        extras=_extras(rec),
        integrals=_integrals(settings["tol"]),
    )
    if bad:
        print(f"bmhull: censoring above {CENSOR_LIMIT:.0%} in {', '.join(bad)}; "
              f"increase --horizon", file=sys.stderr)
        return report, EXIT_QUALITY
    return report, EXIT_OK


def cmd_bounds(settings: dict[str, Any]) -> tuple[RunReport, int]:
    rows = [Row(b.quantity, b.lower, None, None, None, b.upper) for b in analytic.bounds_table()]
    extras = [{"quantity": b.quantity, "provenance": b.provenance} for b in analytic.bounds_table()]
    extras.append({"quantity": "E[r] constructive", "lower": analytic.constructive_inradius_lower()})
    return RunReport("bounds", {}, rows=rows, extras=extras), EXIT_OK


def cmd_integrals(settings: dict[str, Any]) -> tuple[RunReport, int]:
    ints = _integrals(settings["tol"])
    p2 = ints["perimeter_second_moment"]["value"]
    jensen = {"quantity": "Jensen check", "E[P]^2": 8 * math.pi, "E[P^2]": p2,
              "holds": bool(8 * math.pi < p2)}
    code = EXIT_OK if jensen["holds"] else EXIT_QUALITY
    return RunReport("integrals", {"tol": settings["tol"]}, extras=[jensen], integrals=ints), code


_T1_KINDS = {
    "perimeter": "perimeter", "area": "area", "diameter": "diameter",
    "circumradius": "circumradius", "inradius": "inradius",
}
_THETA_KINDS = {
    "theta-perimeter": sim.FunctionalKind.PERIMETER,
    "theta-area": sim.FunctionalKind.AREA,
    "theta-diameter": sim.FunctionalKind.DIAMETER,
    "theta-circumradius": sim.FunctionalKind.CIRCUMRADIUS,
    "theta-inradius": sim.FunctionalKind.INRADIUS,
    "min-range": sim.FunctionalKind.RANGE_MIN,
    "range-x": sim.FunctionalKind.RANGE_X,
    "range-y": sim.FunctionalKind.RANGE_Y,
}
SIM_KINDS = sorted([*(_T1_KINDS), *(k + "-mean" for k in _T1_KINDS), *_THETA_KINDS,
                    "slit-exit", "triangle-chord"])


def _default_horizon(kind: str, level: float) -> float:
    if kind == "slit-exit":
        return 1e4 * level * level
    if kind == "theta-inradius":
        return 20.0 * level * level
    if kind in _THETA_KINDS:
        k = _THETA_KINDS[kind].scaling_exponent
        return 5.0 * level ** k
    return 1.0


def cmd_simulate(kind: str, settings: dict[str, Any]) -> tuple[RunReport, int]:
    if kind not in SIM_KINDS:
        raise UsageError(f"unknown kind {kind!r}; choose from {', '.join(SIM_KINDS)}")
    level = settings["level"]
    if not level > 0:
        raise UsageError("level must be positive")
    horizon = settings["horizon"] if settings["horizon"] is not None else _default_horizon(kind, level)
    cfg = sim.PathConfig(n_steps=settings["steps"], horizon=horizon,
                         master_seed=settings["seed"], n_paths=settings["paths"])
    if cfg.n_paths < 2:
        raise UsageError("simulate needs at least 2 paths")
    threads = settings["threads"]
    base = kind[:-5] if kind.endswith("-mean") else kind
    if base in _T1_KINDS:
        if horizon < 1:
            raise UsageError("functionals at t = 1 need horizon >= 1")
        est = sim.estimate(cfg, sim.hull_functionals_at_one,
                           lambda hf: getattr(hf, base), threads)
    elif base in _THETA_KINDS:
        k = _THETA_KINDS[base]
        est = sim.estimate(cfg, lambda c, i: sim.hitting_time(c, i, k, level), threads=threads)
    elif base == "slit-exit":
        n = settings["slits"]
        if n < 1:
            raise UsageError("slits must be >= 1")
        est = sim.estimate(cfg, lambda c, i: sim.slit_exit_sample(c, i, n, level), threads=threads)
    else:
        if cfg.n_steps % 2:
            raise UsageError("triangle-chord needs an even number of steps")
        est = sim.estimate(cfg, sim.triangle_chord_sample, threads=threads)
    row = Row(kind, None, est.mean, est.std_error, est.censored_fraction, None)
    conf = {"seed": cfg.master_seed, "n_paths": cfg.n_paths, "n_steps": cfg.n_steps,
            "horizon": cfg.horizon, "level": level}
    if base == "slit-exit":
        conf["slits"] = settings["slits"]
    report = RunReport("simulate", conf, rows=[row])
    if est.censored_fraction > CENSOR_LIMIT:
        print(f"bmhull: {est.censored_fraction:.2%} of paths censored; increase --horizon",
              file=sys.stderr)
        return report, EXIT_QUALITY
    return report, EXIT_OK


def cmd_optimize_inradius(settings: dict[str, Any]) -> tuple[RunReport, int]:
    res = optim.inradius_upper_bound(tol=min(1e-6, settings["tol"] * 1e4))
    extras = [{"quantity": "E[Theta^r] upper bound", "bound": res.bound,
               "a_star": res.a_star, "r_star": res.r_star}]
    return RunReport("optimize-inradius", {}, extras=extras), EXIT_OK


def cmd_selftest(settings: dict[str, Any]) -> tuple[RunReport, int]:
    from .selftest import run_checks

    results = run_checks(seed=settings["seed"])
    extras = [{"check": name, "passed": ok, "detail": detail} for name, ok, detail in results]
    failed = [name for name, ok, _ in results if not ok]
    report = RunReport("selftest", {"seed": settings["seed"]}, extras=extras)
    for name in failed:
        print(f"bmhull selftest FAILED: {name}", file=sys.stderr)
    return report, (EXIT_SELFTEST if failed else EXIT_OK)


# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, help="master seed (default 42)")
    common.add_argument("--paths", type=int, help="number of paths (default 10000)")
    common.add_argument("--steps", type=int, help="time steps per unit time (default 10000)")
    common.add_argument("--horizon", type=float, help="largest simulated time")
    common.add_argument("--level", type=float, help="hitting level or slit radius (default 1)")
    common.add_argument("--format", choices=FORMATS, help="output format (default text)")
    common.add_argument("--tol", type=float, help="quadrature tolerance (default 1e-10)")
    common.add_argument("--threads", type=int, help="worker threads (default 1)")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--config", help="key = value settings file")
    common.add_argument("--timestamp", action="store_true",
                        help="stamp the report with the current UTC time (breaks byte stability)")

    p = _Parser(prog="bmhull", description="Convex hull of planar Brownian motion: bounds, constants and Monte Carlo.")
    p.add_argument("--version", action="version", version=f"bmhull {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("table1", parents=[common], help="bounds and Monte Carlo means")
    sub.add_parser("bounds", parents=[common], help="analytic bounds only")
    sub.add_parser("integrals", parents=[common], help="the two quadrature constants")
    s = sub.add_parser("simulate", parents=[common], help="one Monte Carlo estimate")
    s.add_argument("kind", help="one of: " + ", ".join(SIM_KINDS))
    s.add_argument("--slits", type=int, help="number of slits for slit-exit (default 6)")
    sub.add_parser("optimize-inradius", parents=[common], help="minimize the inradius-time bound")
    sub.add_parser("selftest", parents=[common], help="run the oracle checks")
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        settings = resolve_settings(args)
        cmd = args.command
        if cmd == "table1":
            report, code = cmd_table1(settings)
        elif cmd == "bounds":
            report, code = cmd_bounds(settings)
        elif cmd == "integrals":
            report, code = cmd_integrals(settings)
        elif cmd == "simulate":
            report, code = cmd_simulate(args.kind, settings)
        elif cmd == "optimize-inradius":
            report, code = cmd_optimize_inradius(settings)
        else:
            report, code = cmd_selftest(settings)
    except UsageError as exc:
        print(f"bmhull: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except sim.AllCensoredError:
        print("bmhull: every path was censored; increase --horizon", file=sys.stderr)
        return EXIT_QUALITY
    if args.timestamp:
        report.timestamp = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    _emit(report.render(settings["format"]), settings)
    return code


if __name__ == "__main__":
    sys.exit(main())
