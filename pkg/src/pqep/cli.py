"""Command-line front end: ``pqep <command> [options]``.

Exit status is 0 on success, 1 when ``validate --strict`` finds errors or the
dataset cannot be loaded, and 2 on usage errors. Data goes to stdout,
diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import baskets as bk
from .crossover import (
    CrossoverKind,
    battery_budget,
    crossover_point,
    frontier,
    link_from_spec,
    rank_at,
)
from .dataset import (
    REFERENCE_PLATFORM,
    AlgorithmRecord,
    DatasetError,
    Kind,
    Platform,
    SecurityLevel,
    Severity,
    builtin_reference_dataset,
    filter_records,
    load_dataset,
    validate_dataset,
)
from .plot import emit_plot, render_svg
from .power_model import ConfigurationError, scale_measurement
from .report import Column, Report

ENV_DATASET = "PQEP_DATASET"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _note(r: AlgorithmRecord) -> str:
    return ";".join(f for f in ("extrapolated", "hybrid") if f in r.flags)


# -- dataset and argument resolution -------------------------------------


def _load(args) -> tuple[Platform, list[AlgorithmRecord]]:
    path = args.dataset or os.environ.get(ENV_DATASET)
    if not path:
        return builtin_reference_dataset()
    p = Path(path)
    fmt = "json" if p.suffix.lower() == ".json" else "csv"
    platform, records = load_dataset(p.read_text(encoding="utf-8"), fmt)
    return platform or REFERENCE_PLATFORM, records


def _lookup(records: list[AlgorithmRecord], name: str, freq: float) -> AlgorithmRecord:
    by_name = {r.name: r for r in records}
    if name in by_name:
        return by_name[name]
    if "+" in name:
        parts = name.split("+")
        missing = [p for p in parts if p not in by_name]
        if not missing:
            rec = by_name[parts[0]]
            for part in parts[1:]:
                rec = bk.compose_hybrid(rec, by_name[part], freq=freq)
            return rec
        name = missing[0]
    raise UsageError(f"unknown algorithm {name!r}")


def _filtered(args, records):
    kind = Kind.parse(args.kind) if args.kind else None
    level = SecurityLevel.parse(args.min_level) if args.min_level else None
    return filter_records(records, kind=kind, min_level=level, families=args.family)


def _basket(args) -> bk.EnergyBasket:
    try:
        return bk.basket_from_spec(args.basket)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _link(args):
    try:
        return link_from_spec(args.link)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(report: Report, args) -> None:
    sys.stdout.write(report.render(args.format, args.precision))


# -- commands --------------------------------------------------------------


def cmd_validate(args) -> int:
    platform, records = _load(args)
    findings = validate_dataset(records, platform, args.rel_tol)
    rep = Report(
        [
            Column("record"),
            Column("field"),
            Column("severity"),
            Column("observed", "J"),
            Column("expected", "J"),
            Column("message"),
        ],
        title=f"validation at rel_tol {args.rel_tol:g} on {platform.name} ({platform.freq:g} Hz)",
    )
    for f in findings:
        unit_ok = f.field_path.endswith("energy")
        rep.add(
            f.record_name,
            f.field_path,
            f.severity.value,
            f.observed if unit_ok else None,
            f.expected if unit_ok else None,
            f.message,
        )
    _emit(rep, args)
    errors = sum(f.severity is Severity.ERROR for f in findings)
    warnings = len(findings) - errors
    print(f"{len(records)} records, {errors} errors, {warnings} warnings", file=sys.stderr)
    return 1 if args.strict and errors else 0


def cmd_list(args) -> int:
    _, records = _load(args)
    rep = Report(
        [
            Column("name"),
            Column("kind"),
            Column("family"),
            Column("level"),
            Column("pubkey", "B"),
            Column("payload", "B"),
            Column("op1_energy", "J"),
            Column("op2_energy", "J"),
            Column("op3_energy", "J"),
            Column("note"),
        ]
    )
    for r in _filtered(args, records):
        rep.add(
            r.name, r.kind.value, r.family or "", str(r.pq_level), r.pubkey_bytes, r.payload_bytes,
            r.op1.energy, r.op2.energy, r.op3.energy, _note(r),
        )  # fmt: skip
    _emit(rep, args)
    return 0


def cmd_rank(args) -> int:
    platform, records = _load(args)
    basket = _basket(args)
    link = _link(args)
    subset = _filtered(args, records)
    by_name = {r.name: r for r in subset}
    rep = Report(
        [
            Column("rank", "1"),
            Column("name"),
            Column("energy", "J"),
            Column("compute", "J"),
            Column("transfer", "J"),
            Column("note"),
        ],
        title=f"{basket.label} at e_xfer = {link.e_xfer:g} J/bit",
    )
    for i, (name, energy) in enumerate(rank_at(subset, basket, link.e_xfer), start=1):
        line = bk.affine_energy(by_name[name], basket)
        rep.add(i, name, energy, line.intercept, line.slope_bits * link.e_xfer, _note(by_name[name]))
    _emit(rep, args)
    return 0


def cmd_crossover(args) -> int:
    platform, records = _load(args)
    basket = _basket(args)
    a = bk.affine_energy(_lookup(records, args.a, platform.freq), basket)
    b = bk.affine_energy(_lookup(records, args.b, platform.freq), basket)
    res = crossover_point(a, b)
    rep = Report(
        [Column("first"), Column("second"), Column("result"), Column("e_star", "J/bit"), Column("energy", "J")],
        title=f"cross-over, basket {basket.label}",
    )
    if res.kind is CrossoverKind.AT:
        rep.add(a.algorithm, b.algorithm, res.kind.value, res.e_star, a(res.e_star))
    else:
        rep.add(a.algorithm, b.algorithm, res.kind.value, None, None)
    _emit(rep, args)
    return 0


def cmd_frontier(args) -> int:
    _, records = _load(args)
    basket = _basket(args)
    subset = _filtered(args, records)
    if not subset:
        raise UsageError("no records match the filters")
    notes = {r.name: _note(r) for r in subset}
    rep = Report(
        [Column("e_lo", "J/bit"), Column("e_hi", "J/bit"), Column("algorithm"), Column("note")],
        title=f"energy-optimal frontier, basket {basket.label}",
    )
    for seg in frontier(subset, basket, args.e_max):
        rep.add(seg.e_lo, seg.e_hi, seg.algorithm, notes[seg.algorithm])
    _emit(rep, args)
    return 0


def cmd_estimate(args) -> int:
    platform, records = _load(args)
    basket = _basket(args)
    link = _link(args)
    rec = _lookup(records, args.algorithm, platform.freq)
    data_rate = args.data_rate or link.data_rate
    line = bk.affine_energy(rec, basket)
    lat = None
    if data_rate or line.slope_bits == 0:
        lat = bk.basket_latency(rec, basket, platform.freq, data_rate)
    compute_s = (
        basket.w_op1 * rec.op1.cycles + basket.w_op2 * rec.op2.cycles + basket.w_op3 * rec.op3.cycles
    ) / platform.freq
    budget = battery_budget(rec, basket, link.e_xfer, args.battery) if args.battery else None
    rep = Report(
        [
            Column("algorithm"),
            Column("energy", "J"),
            Column("compute", "J"),
            Column("transfer", "J"),
            Column("bits", "bit"),
            Column("rsa_modulus", "bit"),
            Column("compute_time", "s"),
            Column("transmit_time", "s"),
            Column("total_time", "s"),
            Column("battery_budget", "1"),
            Column("note"),
        ],
        title=f"{basket.label} at e_xfer = {link.e_xfer:g} J/bit",
    )
    rep.add(
        rec.name,
        line(link.e_xfer),
        line.intercept,
        line.slope_bits * link.e_xfer,
        line.slope_bits,
        bk.rsa_equivalent_bits(rec),
        compute_s,
        None if lat is None else lat.transmit_s,
        None if lat is None else lat.total_s,
        budget,
        _note(rec),
    )
    _emit(rep, args)
    return 0


def cmd_scale(args) -> int:
    platform, records = _load(args)
    rec = _lookup(records, args.algorithm, platform.freq)
    src = Platform(
        name=platform.name,
        freq=platform.freq,
        voltage=platform.voltage,
        energy_per_cycle=args.from_epc if args.from_epc is not None else platform.energy_per_cycle,
        current_per_mhz=platform.current_per_mhz,
    )
    try:
        dst = Platform(
            name="target",
            freq=args.to_freq or platform.freq,
            voltage=args.to_voltage or platform.voltage,
            energy_per_cycle=args.to_epc,
            current_per_mhz=None if args.to_ua_per_mhz is None else args.to_ua_per_mhz * 1e-6,
        )
        scaled = [scale_measurement(m, src, dst) for m in rec.ops]
    except ConfigurationError as exc:
        raise UsageError(str(exc)) from None
    rep = Report(
        [Column("op"), Column("cycles", "1"), Column("avg_power", "W"), Column("energy", "J"), Column("note")],
        title=f"{rec.name} scaled to {dst.freq:g} Hz",
    )
    for op_name, m in zip(rec.op_names, scaled):
        rep.add(op_name, m.cycles, m.avg_power, m.energy, _note(rec))
    _emit(rep, args)
    return 0


def cmd_plot(args) -> int:
    platform, records = _load(args)
    if args.algorithms:
        subset = [_lookup(records, n.strip(), platform.freq) for n in args.algorithms.split(",")]
    else:
        subset = _filtered(args, records)
    if not subset:
        raise UsageError("no records selected")
    pairs = None
    if args.pair:
        pairs = []
        for p in args.pair:
            a, _, b = p.partition(",")
            if not b:
                raise UsageError(f"--pair expects A,B, got {p!r}")
            pairs.append((a.strip(), b.strip()))
    basket = _basket(args) if args.mode == "lines" else None
    doc = emit_plot(
        subset,
        basket,
        mode=args.mode,
        e_range=(args.e_min, args.e_max),
        samples=args.samples,
        pairs=pairs,
        freq=platform.freq,
    )
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    if args.svg:
        render_svg(doc, args.svg)
    return 0


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--dataset", help=f"CSV or JSON dataset (default: ${ENV_DATASET} or bundled)")
    common.add_argument("--format", choices=("table", "csv", "json"), default="table")
    common.add_argument("--precision", type=int, default=4, help="significant digits")

    filters = _Parser(add_help=False)
    filters.add_argument("--kind", choices=("KEM", "SIG"))
    filters.add_argument("--min-level", choices=("none", "L1", "L2", "L3", "L4", "L5"))
    filters.add_argument("--family", action="append", help="repeatable")

    basket = _Parser(add_help=False)
    basket.add_argument(
        "--basket",
        default="ephemeral-total",
        help=f"preset ({', '.join(bk.PRESETS)}) or inline JSON weights",
    )

    link = _Parser(add_help=False)
    link.add_argument("--link", "--e-xfer", dest="link", default="lte-ble", help="preset name or J/bit")

    parser = _Parser(prog="pqep", description="Energy cost model for post-quantum key establishment and signatures.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", parents=[common], help="check energy = cycles/freq * power")
    p.add_argument("--strict", action="store_true", help="exit 1 on any Error finding")
    p.add_argument("--rel-tol", type=float, default=0.02)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("list", parents=[common, filters], help="list records")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("rank", parents=[common, filters, basket, link], help="rank by basket energy")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("crossover", parents=[common, basket], help="cross-over point of two algorithms")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_crossover)

    p = sub.add_parser("frontier", parents=[common, filters, basket], help="piecewise-optimal frontier")
    p.add_argument("--e-max", type=float, default=math.inf)
    p.set_defaults(func=cmd_frontier)

    p = sub.add_parser("estimate", parents=[common, basket, link], help="energy, latency, battery budget")
    p.add_argument("--algorithm", required=True, help="name, or A+B for a hybrid")
    p.add_argument("--data-rate", type=float, help="bits/second")
    p.add_argument("--battery", type=float, help="battery capacity in joules")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("scale", parents=[common], help="scale a record to another platform")
    p.add_argument("--algorithm", required=True)
    p.add_argument("--from-epc", type=float, help="source J/cycle (default: implied by the measurement)")
    p.add_argument("--to-epc", type=float, help="target J/cycle")
    p.add_argument("--to-voltage", type=float)
    p.add_argument("--to-ua-per-mhz", type=float, help="target supply current, uA/MHz")
    p.add_argument("--to-freq", type=float, help="target clock in Hz")
    p.set_defaults(func=cmd_scale)

    p = sub.add_parser("plot", parents=[common, filters, basket], help="emit plot data (JSON)")
    p.add_argument("--mode", choices=("lines", "power_scatter"), default="lines")
    p.add_argument("--algorithms", help="comma-separated names")
    p.add_argument("--e-min", type=float, default=0.0)
    p.add_argument("--e-max", type=float, default=2e-3)
    p.add_argument("--samples", type=int, default=101)
    p.add_argument("--pair", action="append", help="mark cross-over of A,B (repeatable)")
    p.add_argument("--svg", help="also render to this SVG file")
    p.set_defaults(func=cmd_plot)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"pqep: error: {exc}", file=sys.stderr)
        return 2
    except (DatasetError, OSError) as exc:
        print(f"pqep: dataset error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"pqep: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
