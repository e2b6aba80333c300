"""Command-line front end: single-point solves, temperature sweeps, self-checks.

Exit codes: 0 success, 1 configuration error, 2 numerical failure
(degenerate steady state or a failed self-check).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .config import PRESET_NAMES, ConfigError, RunConfig, parse_config, preset
from .dynamics import DegenerateSteadyStateError, LiouvillianBuilder, solve_ness
from .model import decompose
from .observables import heat_currents
from .sweep import emit, run_sweep


def _add_common(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--config", metavar="PATH", help="JSON configuration file")
    group.add_argument("--preset", metavar="NAME",
                       help=f"named configuration, one of {', '.join(PRESET_NAMES)} "
                       "(default: fig2)")
    parser.add_argument("--points", type=int, metavar="N",
                        help="override the number of sweep grid points")
    parser.add_argument("--tm-range", metavar="LO:HI",
                        help="override the modulator temperature range")


def _parse_tm_range(text: str) -> tuple[float, float]:
    try:
        lo, hi = text.split(":")
        return float(lo), float(hi)
    except ValueError:
        raise ConfigError(f"--tm-range expects LO:HI, got {text!r}") from None


def _load_configs(args) -> list[tuple[str, RunConfig]]:
    if args.config is not None:
        path = Path(args.config)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read configuration file: {exc}") from None
        configs = [(path.stem, parse_config(text))]
    else:
        configs = preset(args.preset or "fig2")

    overrides = {}
    if args.points is not None:
        if args.points < 2:
            raise ConfigError(f"--points must be >= 2, got {args.points}")
        overrides["steps"] = args.points
    if args.tm_range is not None:
        overrides["t_m_min"], overrides["t_m_max"] = _parse_tm_range(args.tm_range)
    if overrides:
        configs = [(label, replace(cfg, **overrides)) for label, cfg in configs]
    return configs


def _out_path(base: str, label: str, many: bool) -> str:
    if not many:
        return base
    p = Path(base)
    return str(p.with_name(f"{p.stem}_{label}{p.suffix}"))


def _cmd_sweep(args) -> int:
    if args.format not in ("csv", "json"):
        raise ConfigError(f"--format must be 'csv' or 'json', got {args.format!r}")
    configs = _load_configs(args)
    if args.out == "-" and len(configs) > 1:
        raise ConfigError(
            f"preset defines {len(configs)} configurations; writing to stdout "
            "needs a single one (pass --out PATH)"
        )
    any_degenerate = False
    for label, cfg in configs:
        records = run_sweep(cfg)
        destination = _out_path(args.out, label, len(configs) > 1)
        emit(records, args.format, destination)
        if destination != "-":
            print(f"wrote {len(records)} records to {destination}", file=sys.stderr)
        any_degenerate |= any(r.degenerate for r in records)
    if any_degenerate:
        print("warning: degenerate steady state at one or more grid points",
              file=sys.stderr)
        return 2
    return 0


def _cmd_ness(args) -> int:
    configs = _load_configs(args)
    if len(configs) > 1:
        raise ConfigError(
            f"preset defines {len(configs)} configurations; 'ness' needs a single "
            "one (use --config or --preset fig2)"
        )
    _, cfg = configs[0]
    t_m = args.tm if args.tm is not None else cfg.bath_m.temperature
    decomp = decompose(cfg.system)
    baths = cfg.baths_at(t_m)
    lio = LiouvillianBuilder(decomp).build(baths)
    rho = solve_ness(lio)
    currents = heat_currents(rho, decomp, baths, liouvillian=lio)

    energies = decomp.eigen.values
    populations = np.real(np.diag(decomp.eigen.vectors.conj().T @ rho @ decomp.eigen.vectors))
    print(f"modulator temperature: {t_m:.17g}")
    print("energy levels and steady-state populations:")
    for e, p in zip(energies, populations):
        print(f"  E = {e:+.12f}   p = {p:.12e}")
    print("steady-state density matrix (computational basis):")
    with np.printoptions(precision=6, suppress=False, linewidth=120):
        print(rho)
    print("heat currents:")
    print(f"  I_S = {currents.i_s:+.12e}")
    print(f"  I_M = {currents.i_m:+.12e}")
    print(f"  I_D = {currents.i_d:+.12e}")
    print(f"  sum = {currents.total():+.3e}  (first law residual)")
    return 0


def _cmd_check(args) -> int:
    from .selfcheck import run_all

    failures = 0
    for name, ok, detail in run_all():
        status = "PASS" if ok else "FAIL"
        print(f"[{status}] {name}: {detail}")
        failures += 0 if ok else 1
    if failures:
        print(f"{failures} check(s) failed", file=sys.stderr)
        return 2
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qttsim",
        description="Steady states, heat currents and correlation measures of a "
        "three-qubit thermal transistor with engineered bosonic baths.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ness = sub.add_parser("ness", help="solve a single operating point")
    _add_common(p_ness)
    p_ness.add_argument("--tm", type=float, metavar="T",
                        help="modulator temperature (default: from configuration)")
    p_ness.set_defaults(func=_cmd_ness)

    p_sweep = sub.add_parser("sweep", help="run a modulator-temperature sweep")
    _add_common(p_sweep)
    p_sweep.add_argument("--format", metavar="FMT", default="csv",
                         help="output format, csv or json (default: csv)")
    p_sweep.add_argument("--out", metavar="PATH", default="-",
                         help="output file ('-' for stdout)")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_check = sub.add_parser("check", help="run the invariant self-check battery")
    p_check.set_defaults(func=_cmd_check)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1
    except (DegenerateSteadyStateError, RuntimeError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
