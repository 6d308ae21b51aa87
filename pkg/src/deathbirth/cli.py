"""Command-line experiments: ``simulate``, ``sweep``, ``drift``, ``replicator``, ``region``.

Each command reads an optional YAML config (``--config``); explicit flags and
``--set key=value`` pairs override file values, in that order. Every CSV
starts with ``#`` comment lines echoing the resolved configuration, so a
config file plus the package version determines the output byte for byte.

Exit codes: 0 success, 1 usage or configuration error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import io
import json
import logging
import sys
from pathlib import Path

import numpy as np
import yaml

from . import __version__
from .lattice import Configuration, LatticeTopology
from .mean_field import classify_regime, integrate_replicator
from .payoff import PayoffMatrix, drift_table
from .regions import SWEEP_COLUMNS, classify_point, sweep_phase_diagram
from .simulator import (GAP_CLASSES, SimulationParams, estimate_drift,
                        init_pattern_1d, init_product_measure, run,
                        run_replicas, winner_frequency)
from .seeding import derive_replica_seed

log = logging.getLogger("deathbirth")

DEFAULTS = {
    "simulate": {
        "payoffs": [1.0, 1.0, 1.0, 1.0], "d": 1, "M": 1, "L": 100,
        "init": "product", "density1": 0.5, "fill": 1, "epsilon": 1.0,
        "t_end": 1e6, "max_events": 10**9, "sample_interval": 1.0,
        "replicas": 1, "seed": 0, "parallel": 1, "out": None,
    },
    "sweep": {
        "a12": 1.0, "a21": 2.0,
        "a11_grid": {"start": 0.1, "stop": 4.0, "num": 40},
        "a22_grid": {"start": 0.1, "stop": 4.0, "num": 40},
        "d": 1, "M": 1, "N": None,
        "simulate": False, "sim_L": 100, "sim_t_end": 1e5, "sim_max_events": 10**8,
        "density1": 0.5, "replicas": 10, "seed": 0, "parallel": 1, "out": None,
    },
    "drift": {
        "payoffs": [1.0, 1.0, 1.0, 1.0], "d": 1, "M": 1, "gap_classes": list(GAP_CLASSES),
        "replicas": 10, "events_per_replica": 1000, "L": None, "seed": 0, "out": None,
    },
    "replicator": {
        "payoffs": [1.0, 1.0, 1.0, 1.0], "u0": 0.5, "t_end": 100.0, "step": 1e-3,
        "sample_every": 100, "out": None, "regime_out": None,
    },
    "region": {"payoffs": [1.0, 1.0, 1.0, 1.0], "d": 1, "M": 1, "N": None, "out": None},
}


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="deathbirth", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in DEFAULTS:
        p = sub.add_parser(name)
        p.add_argument("--config", type=Path)
        p.add_argument("--seed", type=int)
        p.add_argument("--out", type=Path)
        p.add_argument("--replicas", type=int)
        p.add_argument("--parallel", type=int)
        p.add_argument("--payoffs", type=float, nargs=4, metavar=("A11", "A12", "A21", "A22"))
        p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                       help="override any config key; VALUE is parsed as YAML")
        p.add_argument("-v", "--verbose", action="store_true")
    return parser


def resolve_config(command: str, args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS[command])
    if args.config is not None:
        try:
            loaded = yaml.safe_load(args.config.read_text()) or {}
        except (OSError, yaml.YAMLError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ConfigError("config file must hold a key-value mapping")
        cfg.update(loaded)
    for key in ("seed", "out", "replicas", "parallel", "payoffs"):
        value = getattr(args, key)
        if value is not None:
            cfg[key] = str(value) if isinstance(value, Path) else value
    for item in args.set:
        key, sep, raw = item.partition("=")
        if not sep:
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        cfg[key.strip()] = yaml.safe_load(raw)
    unknown = set(cfg) - set(DEFAULTS[command])
    if unknown:
        raise ConfigError(f"unknown config keys for {command}: {sorted(unknown)}")
    return cfg


# --- formatting ------------------------------------------------------------

def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def header_block(command: str, cfg: dict) -> str:
    lines = [f"# deathbirth {__version__} {command}"]
    for key in sorted(cfg):
        if key in ("out", "regime_out", "parallel"):
            continue
        lines.append(f"# {key}: {json.dumps(cfg[key], sort_keys=True)}")
    return "\n".join(lines) + "\n"


def _write(path, text: str):
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _payoffs(cfg) -> PayoffMatrix:
    try:
        a11, a12, a21, a22 = (float(v) for v in cfg["payoffs"])
        return PayoffMatrix(a11, a12, a21, a22)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad payoffs {cfg['payoffs']!r}: {exc}") from exc


def _topology(cfg) -> LatticeTopology:
    try:
        return LatticeTopology(int(cfg["d"]), int(cfg["M"]), int(cfg["L"]))
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def _neighborhood_size(cfg) -> int:
    if cfg.get("N") is not None:
        return int(cfg["N"])
    return (2 * int(cfg["M"]) + 1) ** int(cfg["d"]) - 1


def _grid(spec) -> list:
    if isinstance(spec, dict):
        return [float(v) for v in np.linspace(spec["start"], spec["stop"], int(spec["num"]))]
    if isinstance(spec, (list, tuple)) and spec:
        return [float(v) for v in spec]
    raise ConfigError(f"grid must be a nonempty list or start/stop/num mapping, got {spec!r}")


def _params(cfg, seed) -> SimulationParams:
    try:
        return SimulationParams(t_end=float(cfg["t_end"]), max_events=int(cfg["max_events"]),
                                seed=int(seed), sample_interval=float(cfg["sample_interval"]),
                                epsilon=float(cfg["epsilon"]))
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


# --- commands ----------------------------------------------------------------

def cmd_simulate(cfg: dict) -> int:
    pm = _payoffs(cfg)
    top = _topology(cfg)
    base = _params(cfg, cfg["seed"])
    replicas = int(cfg["replicas"])
    init = str(cfg["init"])

    if init == "product":
        summaries, records = run_replicas(top, pm, base, replicas, float(cfg["density1"]),
                                          parallel=int(cfg["parallel"]), keep_records=True)
        seeds = [s.seed for s in summaries]
    else:
        if init in ("all1", "all2"):
            start = Configuration.uniform(top, int(init[-1]))
        else:
            start = init_pattern_1d(top, init, int(cfg["fill"]))
        seeds = [derive_replica_seed(int(cfg["seed"]), r) for r in range(replicas)]
        records = [run(start, pm, _params(cfg, s)) for s in seeds]

    buf = io.StringIO()
    buf.write(header_block("simulate", cfg))
    buf.write("time,density1,fixed,winner\n")
    wins = 0
    for r, (seed, rec) in enumerate(zip(seeds, records)):
        buf.write(f"# replica={r} seed={seed}\n")
        fix_t = rec.fixation[1] if rec.fixation else None
        for t, rho in zip(rec.times, rec.density1):
            fixed = fix_t is not None and t >= fix_t
            buf.write(f"{fmt(t)},{fmt(rho)},{fmt(fixed)},{fmt(rec.winner if fixed else None)}\n")
        if rec.fixation:
            wins += rec.winner == 1
            print(f"replica {r}: fixed winner={rec.winner} t={fmt(fix_t)}")
        else:
            print(f"replica {r}: not fixed density1={fmt(rec.density1[-1])} "
                  f"events={rec.event_count}")
    print(f"winner-1 frequency: {fmt(wins / replicas)} over {replicas} replicas")
    _write(cfg["out"], buf.getvalue())
    return 0


def cmd_sweep(cfg: dict) -> int:
    a12, a21 = float(cfg["a12"]), float(cfg["a21"])
    N = _neighborhood_size(cfg)
    a11_grid, a22_grid = _grid(cfg["a11_grid"]), _grid(cfg["a22_grid"])
    if not a21 > a12:
        raise ConfigError("sweep needs a21 > a12")
    verdicts = sweep_phase_diagram(a12, a21, a11_grid, a22_grid, N)

    columns = list(SWEEP_COLUMNS)
    simulate = bool(cfg["simulate"])
    if simulate:
        columns.append("sim_win1_freq")
        top = LatticeTopology(int(cfg["d"]), int(cfg["M"]), int(cfg["sim_L"]))
        if top.N != N:
            raise ConfigError(f"N={N} does not match the simulated lattice (N={top.N})")
    buf = io.StringIO()
    buf.write(header_block("sweep", cfg))
    buf.write(",".join(columns) + "\n")
    for cell, verdict in enumerate(verdicts):
        row = verdict.row()
        if simulate:
            pm = PayoffMatrix(verdict.a11, a12, a21, verdict.a22)
            params = SimulationParams(t_end=float(cfg["sim_t_end"]),
                                      max_events=int(cfg["sim_max_events"]),
                                      seed=derive_replica_seed(int(cfg["seed"]), cell),
                                      sample_interval=float(cfg["sim_t_end"]))
            summaries, _ = run_replicas(top, pm, params, int(cfg["replicas"]),
                                        float(cfg["density1"]), parallel=int(cfg["parallel"]))
            row["sim_win1_freq"] = winner_frequency(summaries, 1)
        buf.write(",".join(fmt(row[c]) for c in columns) + "\n")
    _write(cfg["out"], buf.getvalue())
    return 0


def cmd_drift(cfg: dict) -> int:
    if int(cfg["d"]) != 1 or int(cfg["M"]) != 1:
        raise ConfigError("interface drifts are defined for M = d = 1 only "
                          f"(got d={cfg['d']}, M={cfg['M']})")
    pm = _payoffs(cfg)
    closed = drift_table(pm)
    closed_by_gap = {2: closed.D2, 3: closed.D3, 4: closed.D4}
    buf = io.StringIO()
    buf.write(header_block("drift", cfg))
    buf.write("gap_class,mean_drift,std_error,events,replicas,closed_form\n")
    for gap in cfg["gap_classes"]:
        try:
            est = estimate_drift(pm, gap, int(cfg["replicas"]), int(cfg["events_per_replica"]),
                                 int(cfg["seed"]), L=cfg["L"])
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        buf.write(",".join(fmt(v) for v in (
            est.gap_class, est.mean_drift, est.std_error, est.events_used, est.replicas,
            closed_by_gap[est.gap_class])) + "\n")
        print(f"gap {est.gap_class}: {est.mean_drift:.4f} +- {est.std_error:.4f} "
              f"(closed form {float(closed_by_gap[est.gap_class]):.4f})")
    _write(cfg["out"], buf.getvalue())
    return 0


def cmd_replicator(cfg: dict) -> int:
    pm = _payoffs(cfg)
    try:
        traj = integrate_replicator(pm, float(cfg["u0"]), float(cfg["t_end"]),
                                    float(cfg["step"]), int(cfg["sample_every"]))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    report = classify_regime(pm).to_dict()
    report["final_u1"] = traj.final
    buf = io.StringIO()
    buf.write(header_block("replicator", cfg))
    buf.write("time,u1\n")
    for t, u in zip(traj.times, traj.u1_values):
        buf.write(f"{fmt(t)},{fmt(u)}\n")
    _write(cfg["out"], buf.getvalue())

    regime_json = json.dumps(report, indent=2, sort_keys=True) + "\n"
    regime_out = cfg["regime_out"]
    if regime_out is None and cfg["out"] is not None:
        regime_out = str(Path(cfg["out"]).with_suffix(".regime.json"))
    if regime_out is not None:
        Path(regime_out).write_text(regime_json)
    if cfg["out"] is not None:
        sys.stdout.write(regime_json)
    return 0


def cmd_region(cfg: dict) -> int:
    pm = _payoffs(cfg)
    N = _neighborhood_size(cfg)
    verdict = classify_point(pm, N).to_dict()
    dt = drift_table(pm)
    verdict["drifts"] = {"D2": dt.D2, "D3": dt.D3, "D4": dt.D4}
    _write(cfg["out"], json.dumps(verdict, indent=2, sort_keys=True) + "\n")
    return 0


COMMANDS = {
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
    "drift": cmd_drift,
    "replicator": cmd_replicator,
    "region": cmd_region,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = resolve_config(args.command, args)
        return COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"deathbirth {args.command}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"deathbirth {args.command}: I/O error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        log.debug("runtime failure", exc_info=True)
        print(f"deathbirth {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
