"""Command-line front end: scenario configuration, sweeps and tabular output.

Exit codes: 0 success, 2 configuration/validation error, 3 solver error,
4 I/O error.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Sequence

from . import __version__
from .compare import burden_frontier, indifference_curve
from .errors import OilcurbError, SolverError, ValidationError
from .fields import build_curve, load_fields, write_fields
from .market import DEFAULT_P_STAR, DEFAULT_Q_STAR, DEFAULT_S_RU_STAR, Horizon, calibrate
from .policy import Mode, policy_outcome, xi
from .synthetic import SyntheticSpec, generate_synthetic_fields
from .welfare import (
    WORLD_GDP_USD,
    WORLD_OIL_CONSUMPTION_MBD,
    RussiaScale,
    load_regions,
    regional_breakdown,
    russia_scale,
)

EXIT_OK, EXIT_CONFIG, EXIT_SOLVER, EXIT_IO = 0, 2, 3, 4
THREADS_ENV = "OILCURB_THREADS"

OUTCOME_COLUMNS = (
    "extent", "delta_p", "ds_ru", "ds_row", "dq", "d_profit_ru", "d_cs", "p_world", "p_russia", "p_weighted",
)
COMPARE_COLUMNS = (
    "policy", "extent", "importer_surplus", "importer_surplus_pct_gdp", "russia_loss", "russia_loss_pct_gdp",
)
INDIFFERENCE_COLUMNS = ("alpha", "delta", "saturated")
BASELINE_COLUMNS = ("quantity", "value", "unit")

DEFAULT_GRIDS = {
    "quantity": "0:0.9:0.01",
    "discount": "0:0.95:0.01",
    "regions": "0.1,0.3,0.5,0.7",
    "compare": "0:0.9:0.01",
    "indifference": "0:0.9:0.01",
}


class ConfigError(ValidationError):
    pass


@dataclass
class ScenarioConfig:
    p_star: float = DEFAULT_P_STAR
    q_star: float = DEFAULT_Q_STAR
    s_ru_star: float = DEFAULT_S_RU_STAR
    horizon: Horizon = Horizon.SHORT_RUN
    eps_d: float | None = None
    eps_row: float | None = None
    fields_path: Path | None = None
    seed: int = 0
    n_fields: int = SyntheticSpec.n_fields
    policy: str | None = None
    grid: list[float] | None = None
    mode: Mode = Mode.APPROX
    regions_path: Path | None = None
    world_consumption: float = WORLD_OIL_CONSUMPTION_MBD
    world_gdp: float = WORLD_GDP_USD
    russia: RussiaScale = field(default_factory=RussiaScale)
    out_dir: Path | None = None
    fmt: str = "csv"
    threads: int | None = None

    def validate(self) -> None:
        if self.fields_path is not None and not self.fields_path.is_file():
            raise ConfigError(f"field data file not found: {self.fields_path}")
        if self.regions_path is not None and not self.regions_path.is_file():
            raise ConfigError(f"region data file not found: {self.regions_path}")
        if self.fmt not in ("csv", "json"):
            raise ConfigError(f"output format must be csv or json, got {self.fmt!r}")
        if self.grid is not None:
            bad = [g for g in self.grid if not 0.0 <= g < 1.0]
            if bad:
                raise ConfigError(f"grid values must lie in [0, 1): {bad}")
        if self.threads is not None and self.threads < 1:
            raise ConfigError("threads must be at least 1")


def parse_grid(text: str) -> list[float]:
    """Parse ``start:stop:step`` (stop inclusive within 1e-12), a comma list, or a single value."""
    text = text.strip()
    try:
        if ":" in text:
            parts = [float(p) for p in text.split(":")]
            if len(parts) != 3:
                raise ValueError
            start, stop, step = parts
            if not step > 0 or stop < start:
                raise ConfigError(f"grid {text!r}: need step > 0 and stop >= start")
            n = int(math.floor((stop - start) / step + 1e-12)) + 1
            values = [round(start + i * step, 12) for i in range(n)]
            if stop - values[-1] > 1e-12 and abs(values[-1] + step - stop) <= 1e-12:
                values.append(stop)
            return values
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ConfigError(f"cannot parse grid {text!r} (expected start:stop:step or a comma list)") from None


def _get(cp: configparser.ConfigParser, section: str, key: str, conv: Callable = str):
    if not cp.has_option(section, key):
        return None
    raw = cp.get(section, key).strip()
    if raw == "":
        return None
    try:
        return conv(raw)
    except (ValueError, OilcurbError) as exc:
        raise ConfigError(f"[{section}] {key} = {raw!r}: {exc}") from None


def load_config(path: "str | Path | None") -> ScenarioConfig:
    """Read an INI-style scenario file; every key is optional."""
    cfg = ScenarioConfig()
    if path is None:
        return cfg
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_file(fh)
    except configparser.Error as exc:
        raise ConfigError(f"{path}: {exc}") from None
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None

    base = Path(path).resolve().parent

    def rel(p: str) -> Path:
        q = Path(p)
        return q if q.is_absolute() else base / q

    updates = {
        "p_star": _get(cp, "calibration", "p_star", float),
        "q_star": _get(cp, "calibration", "q_star", float),
        "s_ru_star": _get(cp, "calibration", "s_ru_star", float),
        "horizon": _get(cp, "calibration", "horizon", Horizon.parse),
        "eps_d": _get(cp, "calibration", "eps_d", float),
        "eps_row": _get(cp, "calibration", "eps_row", float),
        "fields_path": _get(cp, "fields", "path", rel),
        "seed": _get(cp, "fields", "seed", int),
        "n_fields": _get(cp, "fields", "n_fields", int),
        "policy": _get(cp, "policy", "type"),
        "grid": _get(cp, "policy", "grid", parse_grid),
        "mode": _get(cp, "run", "mode", Mode.parse),
        "threads": _get(cp, "run", "threads", int),
        "regions_path": _get(cp, "regions", "path", rel),
        "world_consumption": _get(cp, "regions", "world_consumption_mbd", float),
        "world_gdp": _get(cp, "regions", "world_gdp_usd", float),
        "out_dir": _get(cp, "output", "dir", rel),
        "fmt": _get(cp, "output", "format", str.lower),
    }
    if updates["fields_path"] is not None and updates["seed"] is not None:
        raise ConfigError("[fields]: give either path or seed, not both")
    gdp_ru = _get(cp, "russia", "gdp_usd", float)
    mil = _get(cp, "russia", "military_usd", float)
    if gdp_ru is not None or mil is not None:
        updates["russia"] = RussiaScale(gdp_ru or cfg.russia.gdp_ru, mil or cfg.russia.military_spend)
    return replace(cfg, **{k: v for k, v in updates.items() if v is not None})


def _thread_count(cfg: ScenarioConfig) -> int:
    if cfg.threads is not None:
        return cfg.threads
    env = os.environ.get(THREADS_ENV, "").strip()
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ConfigError(f"{THREADS_ENV}={env!r} is not an integer") from None
        if n < 1:
            raise ConfigError(f"{THREADS_ENV} must be at least 1")
        return n
    return os.cpu_count() or 1


def _pmap(fn, items, cfg: ScenarioConfig) -> list:
    items = list(items)
    workers = min(_thread_count(cfg), max(len(items), 1))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        # map yields in submission order, so output stays in grid order
        return list(pool.map(fn, items))


def _fields(cfg: ScenarioConfig):
    if cfg.fields_path is not None:
        return load_fields(cfg.fields_path)
    spec = SyntheticSpec(total_capacity=cfg.s_ru_star, n_fields=cfg.n_fields)
    return generate_synthetic_fields(spec, cfg.seed)


def _model(cfg: ScenarioConfig):
    cal = calibrate(cfg.p_star, cfg.q_star, cfg.s_ru_star, cfg.horizon, cfg.eps_d, cfg.eps_row)
    curve = build_curve(_fields(cfg), cfg.horizon)
    return cal, curve


def _grid(cfg: ScenarioConfig, command: str) -> list[float]:
    return cfg.grid if cfg.grid is not None else parse_grid(DEFAULT_GRIDS[command])


def cmd_baseline(cfg: ScenarioConfig):
    cal, curve = _model(cfg)
    rent = cal.p_star * cal.s_ru_star - curve.cost_integral(0.0, curve.total_capacity)
    residual = cal.demand(cal.p_star) - cal.row_supply(cal.p_star) - cal.s_ru_star
    rows = [
        ("horizon", cal.horizon.value, ""),
        ("p_star", cal.p_star, "USD/b"),
        ("q_star", cal.q_star, "Mb/d"),
        ("s_ru_star", cal.s_ru_star, "Mb/d"),
        ("s_row_star", cal.s_row_star, "Mb/d"),
        ("y", cal.y, ""),
        ("eps_d", cal.eps_d, ""),
        ("eps_row", cal.eps_row, ""),
        ("b_d", cal.b_d, "Mb/d*(USD/b)^-eps_d"),
        ("b_row", cal.b_row, "Mb/d*(USD/b)^-eps_row"),
        ("xi", xi(cal), ""),
        ("clearing_residual", residual, "Mb/d"),
        ("curve_capacity", curve.total_capacity, "Mb/d"),
        ("curve_min_mc", curve.min_cost, "USD/b"),
        ("curve_max_mc", curve.max_cost, "USD/b"),
        ("russia_profit", rent, "MUSD/day"),
    ]
    return BASELINE_COLUMNS, [dict(zip(BASELINE_COLUMNS, r)) for r in rows]


def _sweep(cfg: ScenarioConfig, policy: str):
    cal, curve = _model(cfg)
    outcomes = _pmap(lambda e: policy_outcome(cal, curve, policy, e, cfg.mode), _grid(cfg, policy), cfg)
    rows = [{c: getattr(o, c) for c in OUTCOME_COLUMNS} for o in outcomes]
    return OUTCOME_COLUMNS, rows


def cmd_regions(cfg: ScenarioConfig):
    cal, curve = _model(cfg)
    regions = load_regions(cfg.regions_path)
    policy = cfg.policy or "quantity"
    outcomes = _pmap(lambda e: policy_outcome(cal, curve, policy, e, cfg.mode), _grid(cfg, "regions"), cfg)
    columns = ("extent", *(r.name for r in regions), "Russia")
    rows = []
    for o in outcomes:
        row = {"extent": o.extent}
        row.update(regional_breakdown(o.d_cs, regions, cfg.world_consumption))
        row["Russia"] = russia_scale(o.d_profit_ru, cfg.russia)[0]
        rows.append(row)
    return columns, rows


def cmd_compare(cfg: ScenarioConfig):
    cal, curve = _model(cfg)
    grid = _grid(cfg, "compare")
    policies = [cfg.policy] if cfg.policy else ["quantity", "discount"]
    rows = []
    for policy in policies:
        chunks = _pmap(
            lambda e: burden_frontier(cal, curve, [e], policy, cfg.mode, cfg.world_gdp, cfg.russia)[0], grid, cfg
        )
        rows += [{c: getattr(p, c) for c in COMPARE_COLUMNS} for p in chunks]
    return COMPARE_COLUMNS, rows


def cmd_indifference(cfg: ScenarioConfig):
    cal, curve = _model(cfg)
    points = _pmap(lambda a: indifference_curve(cal, curve, [a], cfg.mode)[0], _grid(cfg, "indifference"), cfg)
    return INDIFFERENCE_COLUMNS, [{c: getattr(p, c) for c in INDIFFERENCE_COLUMNS} for p in points]


COMMANDS = {
    "baseline": cmd_baseline,
    "quantity": lambda cfg: _sweep(cfg, "quantity"),
    "discount": lambda cfg: _sweep(cfg, "discount"),
    "regions": cmd_regions,
    "compare": cmd_compare,
    "indifference": cmd_indifference,
}


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _check_finite(rows) -> None:
    for i, row in enumerate(rows):
        for key, value in row.items():
            if isinstance(value, float) and not math.isfinite(value):
                raise SolverError(f"non-finite value in row {i}, column {key!r}: {value}")


def render(columns: Sequence[str], rows: list[dict], fmt: str) -> str:
    _check_finite(rows)
    if fmt == "json":
        records = [{c: row[c] for c in columns} for row in rows]
        return json.dumps(records, indent=2, allow_nan=False) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row[c]) for c in columns])
    return buf.getvalue()


def run(cfg: ScenarioConfig, command: str, stdout=None) -> int:
    """Execute one subcommand; returns the process exit status."""
    stdout = stdout if stdout is not None else sys.stdout
    try:
        cfg.validate()
        if command == "gen-fields":
            fields = _fields(replace(cfg, fields_path=None))
            text = write_fields(fields)
            name = "fields.csv"
        else:
            columns, rows = COMMANDS[command](cfg)
            text = render(columns, rows, cfg.fmt)
            name = f"{command}_{cfg.horizon.value}.{cfg.fmt}"
        if cfg.out_dir is None:
            stdout.write(text)
        else:
            cfg.out_dir.mkdir(parents=True, exist_ok=True)
            (cfg.out_dir / name).write_text(text, encoding="utf-8")
    except SolverError as exc:
        print(f"oilcurb: solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except OilcurbError as exc:
        print(f"oilcurb: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"oilcurb: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="INI scenario file")
    common.add_argument("--horizon", choices=["short", "long"])
    common.add_argument("--mode", choices=["approx", "exact"])
    common.add_argument("--p-star", type=float)
    common.add_argument("--q-star", type=float)
    common.add_argument("--s-ru-star", type=float)
    common.add_argument("--eps-d", type=float)
    common.add_argument("--eps-row", type=float)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--fields", type=Path, help="field cost CSV (default: synthetic fields)")
    src.add_argument("--seed", type=int, help="seed for synthetic fields")
    common.add_argument("--n-fields", type=int)
    common.add_argument("--regions", type=Path, help="region CSV (default: bundled 2021 data)")
    common.add_argument("--out-dir", type=Path, help="write <command>_<horizon>.<format> here instead of stdout")
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--threads", type=int, help=f"worker threads (env {THREADS_ENV}; default: CPU count)")

    parser = argparse.ArgumentParser(prog="oilcurb", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("baseline", parents=[common], help="calibration report")
    for name, flag, single in (("quantity", "--alpha-grid", "--alpha"), ("discount", "--delta-grid", "--delta")):
        p = sub.add_parser(name, parents=[common], help=f"{name} policy sweep")
        g = p.add_mutually_exclusive_group()
        g.add_argument(flag, dest="grid", help="start:stop:step or comma list")
        g.add_argument(single, dest="grid", help="single extent")
    for name, helptext in (("regions", "consumer surplus by region, % of GDP"),
                           ("compare", "burden on importers vs Russia")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--grid")
        p.add_argument("--policy", choices=["quantity", "discount"])
    p = sub.add_parser("indifference", parents=[common], help="discount equivalent to each restriction")
    p.add_argument("--alpha-grid", dest="grid")
    sub.add_parser("gen-fields", parents=[common], help="write a synthetic field file")
    return parser


def config_from_args(args: argparse.Namespace) -> ScenarioConfig:
    cfg = load_config(args.config)
    overrides = {
        "p_star": args.p_star,
        "q_star": args.q_star,
        "s_ru_star": args.s_ru_star,
        "eps_d": args.eps_d,
        "eps_row": args.eps_row,
        "horizon": Horizon.parse(args.horizon) if args.horizon else None,
        "mode": Mode.parse(args.mode) if args.mode else None,
        "n_fields": args.n_fields,
        "regions_path": args.regions,
        "out_dir": args.out_dir,
        "fmt": args.format,
        "threads": args.threads,
        "policy": getattr(args, "policy", None),
        "grid": parse_grid(args.grid) if getattr(args, "grid", None) else None,
    }
    cfg = replace(cfg, **{k: v for k, v in overrides.items() if v is not None})
    if args.fields is not None:
        cfg = replace(cfg, fields_path=args.fields)
    elif args.seed is not None:
        cfg = replace(cfg, seed=args.seed, fields_path=None)
    return cfg


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
    except OilcurbError as exc:
        print(f"oilcurb: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return run(cfg, args.command)


if __name__ == "__main__":
    sys.exit(main())
