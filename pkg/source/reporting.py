"""Result formatting and file output for single bounds and sweeps.

CSV is fixed at 6 decimals for readable diffs; JSON carries full precision.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO

from .types import BoundResult, SweepRow, SweepSpec

DECIMALS = 6


def format_bits(value: Optional[float]) -> str:
    if value is None or math.isnan(value):
        return "NaN"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    text = f"{value:.{DECIMALS}f}"
    if text.startswith("-") and float(text) == 0.0:
        text = text[1:]
    return text


def _json_safe(value: Any) -> Any:
    """Replace non-finite floats by strings so the output is strict JSON."""
    if isinstance(value, float) and not math.isfinite(value):
        return format_bits(value)
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


def format_bound_line(result: BoundResult) -> str:
    """`<bits> <status> level=<l>` as printed by the bound command."""
    level = "-" if result.level is None else str(result.level)
    return f"{format_bits(result.bits)} {result.report.status.value} level={level}"


def sweep_header(spec: SweepSpec) -> List[str]:
    return ["param", *spec.bounds]


def write_sweep_csv_stream(out: TextIO, spec: SweepSpec, rows: Sequence[SweepRow]) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(sweep_header(spec))
    for row in sorted(rows, key=lambda r: r.index):
        writer.writerow([format_bits(row.param), *(format_bits(row.values.get(b)) for b in spec.bounds)])


def write_sweep_csv(path: Path, spec: SweepSpec, rows: Sequence[SweepRow]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        write_sweep_csv_stream(f, spec, rows)


def sweep_payload(spec: SweepSpec, rows: Sequence[SweepRow]) -> Dict[str, Any]:
    ordered = sorted(rows, key=lambda r: r.index)
    return {
        "spec": spec.to_dict(),
        "rows": [row.to_dict() for row in ordered],
        "ok": all(row.ok for row in ordered),
    }


def write_sweep_json(path: Path, spec: SweepSpec, rows: Sequence[SweepRow]) -> None:
    write_summary_json(path, sweep_payload(spec, rows))


def write_summary_json(path: Path, summary: Dict[str, Any]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    summary["result"] = "passed" if summary.get("ok") else "failed"
    with path.open("w", encoding="utf-8") as f:
        json.dump(_json_safe(summary), f, indent=2)
