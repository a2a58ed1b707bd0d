"""Experiment runner: policy x workload cells in, CSV/JSON reports out."""

import argparse
import copy
import csv
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .core import ConfigError, apply_setting, default_config, load_config
from .engine import CapacityError, Engine, SimReport
from .policies import POLICY_NAMES, build_policy
from .workload import (
    GeneratorSpec,
    KINDS,
    TraceFormatError,
    generate,
    parse_hist,
    read_trace,
    write_trace,
)

# sweep shorthands for the knobs that get swept all the time
SWEEP_ALIASES = {
    "interval": "monitor.interval_cycles",
    "topn": "monitor.top_n",
}

RESULTS_CSV = "results.csv"


def parse_size(text: str) -> int:
    """Integer sizes/counts with scientific notation and k/m/g/t suffixes."""
    t = text.strip().lower()
    mult = 1
    if t and t[-1] in "kmgt":
        mult = 1024 ** ("kmgt".index(t[-1]) + 1)
        t = t[:-1]
    try:
        v = float(t) * mult
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v.is_integer():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(v)


@dataclass
class Cell:
    """One independent simulation job; shared-nothing and picklable."""

    cell_id: str
    label: str
    policy_name: str
    cfg: object
    trace_path: str | None
    gen_spec: GeneratorSpec | None
    seed: int


def _execute_cell(cell: Cell) -> SimReport:
    policy = build_policy(cell.policy_name, cell.cfg)
    records = (read_trace(cell.trace_path) if cell.trace_path
               else generate(cell.gen_spec))
    engine = Engine(cell.cfg, policy, seed=cell.seed)
    return engine.run(records, label=cell.label)


def _add_gen_flags(p, with_kind_default=None):
    g = p.add_argument_group("trace generation")
    g.add_argument("--gen", choices=KINDS, default=with_kind_default,
                   help="generate the input trace with this generator")
    g.add_argument("--refs", type=parse_size, default=1_000_000,
                   help="references to generate (default 1e6)")
    g.add_argument("--footprint", type=parse_size, default=1 << 30,
                   help="virtual footprint in bytes (default 1g)")
    g.add_argument("--working-set", type=parse_size, default=0,
                   help="actively referenced bytes (default: whole footprint)")
    g.add_argument("--zipf-s", type=float, default=1.1,
                   help="zipf exponent (default 1.1)")
    g.add_argument("--write-fraction", type=float, default=0.2,
                   help="fraction of writes (default 0.2)")
    g.add_argument("--hot-fraction", type=float, default=0.7,
                   help="share of references landing on hot pages (default 0.7)")
    g.add_argument("--hist", type=parse_hist, default="concentrated",
                   help="hot-pages-per-superpage histogram: preset name or "
                        "six comma-separated fractions")
    g.add_argument("--seed", type=int, default=1, help="generator seed")


def _spec_from_args(args) -> GeneratorSpec:
    spec = GeneratorSpec(
        kind=args.gen,
        refs=args.refs,
        footprint_bytes=args.footprint,
        working_set_bytes=args.working_set,
        zipf_s=args.zipf_s,
        write_fraction=args.write_fraction,
        hot_fraction=args.hot_fraction,
        hist=args.hist if isinstance(args.hist, tuple) else parse_hist(args.hist),
        seed=args.seed,
    )
    spec.validate()
    return spec


def _build_config(args):
    cfg = load_config(args.config) if args.config else default_config()
    for setting in args.set or ():
        key, eq, value = setting.partition("=")
        if not eq:
            raise ConfigError(f"--set expects key=value, got {setting!r}")
        apply_setting(cfg, key.strip(), value)
    return cfg.finalize()


def _parse_sweep(text):
    key, eq, values = text.partition("=")
    key = key.strip()
    if not eq or not values:
        raise ConfigError(f"--sweep expects key=v1,v2,..., got {text!r}")
    key = SWEEP_ALIASES.get(key, key)
    vals = [v.strip() for v in values.split(",") if v.strip()]
    if not vals:
        raise ConfigError(f"--sweep has no values: {text!r}")
    return key, vals


def cmd_run(args) -> int:
    policies = [p.strip() for p in args.policy.split(",") if p.strip()]
    for p in policies:
        if p not in POLICY_NAMES:
            raise ConfigError(f"unknown policy {p!r} (choose from {POLICY_NAMES})")
    if bool(args.trace) == bool(args.gen):
        raise ConfigError("exactly one of --trace or --gen is required")

    base_cfg = _build_config(args)
    spec = _spec_from_args(args) if args.gen else None
    points = [(None, None)]
    if args.sweep:
        key, vals = _parse_sweep(args.sweep)
        points = [(key, v) for v in vals]

    cells = []
    for key, value in points:
        cfg = copy.deepcopy(base_cfg)
        label = ""
        if key is not None:
            apply_setting(cfg, key, value)
            cfg.finalize()
            label = f"{key}={value}"
        for pol in policies:
            cell_id = pol if not label else f"{pol}__{label.replace('.', '_')}"
            cells.append(Cell(cell_id, label, pol, cfg, args.trace, spec,
                              spec.seed if spec else 0))
    ids = [c.cell_id for c in cells]
    if len(set(ids)) != len(ids):
        raise ConfigError(f"duplicate cells in the plan: {sorted(ids)}")

    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_execute_cell, cells))
    else:
        reports = [_execute_cell(c) for c in cells]

    os.makedirs(args.out, exist_ok=True)
    for cell, report in zip(cells, reports):
        with open(os.path.join(args.out, f"{cell.cell_id}.json"), "w",
                  encoding="utf-8") as fh:
            fh.write(report.to_json())
            fh.write("\n")
    csv_path = os.path.join(args.out, RESULTS_CSV)
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(SimReport.csv_fields())
        for report in reports:
            writer.writerow(report.csv_row())
    print(f"wrote {csv_path} ({len(reports)} cells)")
    return 0


def _ratio(value: float, base: float) -> float:
    if base:
        return value / base
    return 1.0 if not value else math.inf


def cmd_report(args) -> int:
    csv_path = os.path.join(args.dir, RESULTS_CSV)
    if not os.path.exists(csv_path):
        raise FileNotFoundError(f"no {RESULTS_CSV} under {args.dir!r}; run first")
    with open(csv_path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        raise ValueError(f"{csv_path} has no cells")

    groups: dict = {}
    for row in rows:
        groups.setdefault(row["label"], []).append(row)

    out = [("label", "policy", "cycles", "mpkr", "traffic", "energy")]
    for label in sorted(groups):
        group = groups[label]
        base = next((r for r in group if r["policy"] == "flat-static"), None)
        if base is None:
            raise ValueError(
                f"group {label or '<default>'!r} lacks the flat-static baseline")
        for row in group:
            out.append((
                label or "-",
                row["policy"],
                f"{_ratio(float(row['total_cycles']), float(base['total_cycles'])):.4f}",
                f"{_ratio(float(row['tlb_mpkr']), float(base['tlb_mpkr'])):.4f}",
                f"{_ratio(float(row['migration_traffic_bytes']), float(base['migration_traffic_bytes'])):.4f}",
                f"{_ratio(float(row['energy_total_pj']), float(base['energy_total_pj'])):.4f}",
            ))
    widths = [max(len(r[i]) for r in out) for i in range(len(out[0]))]
    for row in out:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return 0


def cmd_gen(args) -> int:
    spec = _spec_from_args(args)
    count = write_trace(generate(spec), args.out)
    print(f"wrote {args.out} ({count} records)")
    return 0


def cmd_trace_dump(args) -> int:
    shown = 0
    for i, rec in enumerate(read_trace(args.trace)):
        if args.limit and shown >= args.limit:
            break
        print(f"{i} {'W' if rec.op else 'R'} {rec.vaddr:#014x} {rec.tid}")
        shown += 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rainbowsim",
        description="Trace-driven hybrid DRAM/NVM memory-system simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="simulate policy x workload cells")
    run.add_argument("--policy", default="rainbow,flat-static",
                     help="comma-separated policies (default rainbow,flat-static)")
    run.add_argument("--trace", help="input trace file (alternative to --gen)")
    run.add_argument("--config", help="config file of section.key = value lines")
    run.add_argument("--set", action="append", metavar="KEY=VALUE",
                     help="override one config key (repeatable)")
    run.add_argument("--sweep", metavar="KEY=V1,V2,...",
                     help="run every policy at each value of one config key")
    run.add_argument("--out", default="results", help="output directory")
    run.add_argument("--jobs", type=int, default=1,
                     help="cells to simulate concurrently")
    _add_gen_flags(run)
    run.set_defaults(fn=cmd_run)

    rep = sub.add_parser("report", help="normalize results to flat-static")
    rep.add_argument("--dir", default="results", help="directory with results.csv")
    rep.set_defaults(fn=cmd_report)

    gen = sub.add_parser("gen", help="write a synthetic trace file")
    gen.add_argument("--out", required=True, help="trace file to write")
    _add_gen_flags(gen, with_kind_default="zipf")
    gen.set_defaults(fn=cmd_gen)

    dump = sub.add_parser("trace-dump", help="print a binary trace as text")
    dump.add_argument("--trace", required=True, help="trace file to read")
    dump.add_argument("--limit", type=int, default=0,
                      help="records to print (0 = all)")
    dump.set_defaults(fn=cmd_trace_dump)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigError, TraceFormatError, CapacityError, ValueError,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
