"""Modulator-temperature sweeps and machine-readable output.

One record per grid point, fixed column set.  Floats are printed with 17
significant digits in both CSV and JSON so files round-trip exactly; NaN
(not computed, or degenerate point) becomes ``nan`` in CSV and ``null`` in
JSON.
"""

from __future__ import annotations

import csv
import io
import math
import sys
from dataclasses import dataclass, fields
from pathlib import Path

from .config import RunConfig
from .dynamics import DegenerateSteadyStateError, LiouvillianBuilder, solve_ness
from .infoquant import fidelity, mutual_info_2, mutual_info_3, negativity, reference_state
from .linalg import partial_trace
from .model import decompose
from .observables import CurrentTriple, amplification, heat_currents

_NAN = float("nan")


@dataclass(frozen=True)
class SweepRecord:
    """One grid point of a sweep; NaN marks values that were not computed."""

    t_m: float
    i_s: float = _NAN
    i_m: float = _NAN
    i_d: float = _NAN
    beta_s: float = _NAN
    beta_d: float = _NAN
    m2_sm: float = _NAN
    m2_sd: float = _NAN
    m2_md: float = _NAN
    m3: float = _NAN
    n_sm: float = _NAN
    n_sd: float = _NAN
    n_md: float = _NAN
    f_w: float = _NAN
    f_ghz: float = _NAN
    degenerate: bool = False


# (column name, attribute) in emission order
COLUMNS = [
    ("T_M", "t_m"),
    ("I_S", "i_s"),
    ("I_M", "i_m"),
    ("I_D", "i_d"),
    ("beta_S", "beta_s"),
    ("beta_D", "beta_d"),
    ("M2_SM", "m2_sm"),
    ("M2_SD", "m2_sd"),
    ("M2_MD", "m2_md"),
    ("M3", "m3"),
    ("N_SM", "n_sm"),
    ("N_SD", "n_sd"),
    ("N_MD", "n_md"),
    ("F_W", "f_w"),
    ("F_GHZ", "f_ghz"),
    ("degenerate", "degenerate"),
]

# reduced-pair negativities: (record attr, qubits kept)
_PAIR_CUTS = [("n_sm", (0, 1)), ("n_sd", (0, 2)), ("n_md", (1, 2))]


def run_sweep(config: RunConfig) -> list[SweepRecord]:
    """Deterministic sweep over the modulator temperature grid.

    Grid points where the steady state is not unique are flagged
    ``degenerate`` and left as NaN; the run continues.
    """
    decomp = decompose(config.system)
    builder = LiouvillianBuilder(decomp)
    flags = config.outputs
    ref_w = reference_state("W").state if flags.fidelity else None
    ref_ghz = reference_state("GHZ").state if flags.fidelity else None

    grid = config.grid()
    values: list[dict | None] = []
    for t_m in grid:
        baths = config.baths_at(float(t_m))
        lio = builder.build(baths)
        try:
            rho = solve_ness(lio)
        except DegenerateSteadyStateError:
            values.append(None)
            continue
        row: dict = {}
        if flags.currents:
            cur = heat_currents(rho, decomp, baths, liouvillian=lio)
            row["currents"] = cur
        if flags.m2:
            row["m2_sm"] = mutual_info_2(rho, ("S", "M"))
            row["m2_sd"] = mutual_info_2(rho, ("S", "D"))
            row["m2_md"] = mutual_info_2(rho, ("M", "D"))
        if flags.m3:
            row["m3"] = mutual_info_3(rho)
        if flags.negativity:
            for attr, keep in _PAIR_CUTS:
                row[attr] = negativity(partial_trace(rho, keep=keep), dims=(2, 2))
        if flags.fidelity:
            row["f_w"] = fidelity(rho, ref_w)
            row["f_ghz"] = fidelity(rho, ref_ghz)
        values.append(row)

    betas: list[tuple[float, float]] = [(_NAN, _NAN)] * len(grid)
    if flags.beta:
        filler = CurrentTriple(_NAN, _NAN, _NAN)
        series = [
            (float(t), row["currents"] if row is not None else filler)
            for t, row in zip(grid, values)
        ]
        for i, point in enumerate(amplification(series, config.step)):
            betas[i] = (point.beta_s, point.beta_d)

    records = []
    for t_m, row, (beta_s, beta_d) in zip(grid, values, betas):
        if row is None:
            records.append(SweepRecord(t_m=float(t_m), degenerate=True))
            continue
        cur = row.get("currents")
        records.append(
            SweepRecord(
                t_m=float(t_m),
                i_s=cur.i_s if cur else _NAN,
                i_m=cur.i_m if cur else _NAN,
                i_d=cur.i_d if cur else _NAN,
                beta_s=beta_s,
                beta_d=beta_d,
                m2_sm=row.get("m2_sm", _NAN),
                m2_sd=row.get("m2_sd", _NAN),
                m2_md=row.get("m2_md", _NAN),
                m3=row.get("m3", _NAN),
                n_sm=row.get("n_sm", _NAN),
                n_sd=row.get("n_sd", _NAN),
                n_md=row.get("n_md", _NAN),
                f_w=row.get("f_w", _NAN),
                f_ghz=row.get("f_ghz", _NAN),
            )
        )
    return records


def _format_float(x: float) -> str:
    return f"{x:.17g}"


def _to_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([name for name, _ in COLUMNS])
    for rec in records:
        row = []
        for _, attr in COLUMNS:
            v = getattr(rec, attr)
            row.append(("true" if v else "false") if isinstance(v, bool) else _format_float(v))
        writer.writerow(row)
    return buf.getvalue()


def _to_json(records) -> str:
    lines = []
    for rec in records:
        parts = []
        for name, attr in COLUMNS:
            v = getattr(rec, attr)
            if isinstance(v, bool):
                token = "true" if v else "false"
            elif math.isfinite(v):
                token = _format_float(v)
            else:
                token = "null"
            parts.append(f'"{name}": {token}')
        lines.append("  {" + ", ".join(parts) + "}")
    return "[\n" + ",\n".join(lines) + "\n]\n"


def emit(records, fmt: str, destination) -> None:
    """Write records to ``destination`` ('-' for stdout) as CSV or JSON."""
    if not records:
        raise ValueError("no records to emit")
    if fmt == "csv":
        text = _to_csv(records)
    elif fmt == "json":
        text = _to_json(records)
    else:
        raise ValueError(f"unknown output format {fmt!r}; expected 'csv' or 'json'")
    if destination == "-":
        sys.stdout.write(text)
        return
    path = Path(destination)
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write output to {path}: {exc}") from exc


def _record_from_values(values: dict) -> SweepRecord:
    kwargs = {}
    for name, attr in COLUMNS:
        v = values[name]
        if attr == "degenerate":
            kwargs[attr] = bool(v)
        else:
            kwargs[attr] = _NAN if v is None else float(v)
    return SweepRecord(**kwargs)


def load_records(path) -> list[SweepRecord]:
    """Read back a file produced by :func:`emit` (format inferred by content)."""
    text = Path(path).read_text(encoding="utf-8")
    stripped = text.lstrip()
    if stripped.startswith("["):
        import json

        return [_record_from_values(obj) for obj in json.loads(text)]
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    expected = [name for name, _ in COLUMNS]
    if header != expected:
        raise ValueError(f"unexpected CSV header {header}")
    out = []
    for row in reader:
        values = {}
        for name, cell in zip(header, row):
            if name == "degenerate":
                values[name] = cell == "true"
            else:
                values[name] = float(cell)
        out.append(_record_from_values(values))
    return out


def records_equal(a: SweepRecord, b: SweepRecord) -> bool:
    """Field-by-field equality where NaN == NaN (for round-trip checks)."""
    for f in fields(SweepRecord):
        va, vb = getattr(a, f.name), getattr(b, f.name)
        if isinstance(va, bool) or isinstance(vb, bool):
            if bool(va) != bool(vb):
                return False
        elif not (va == vb or (math.isnan(va) and math.isnan(vb))):
            return False
    return True
