"""Parameter sweeps: evaluate a list of bounds over a 1-D grid of channels.

A sweep specification is a JSON file:

    {
      "channel": "kind=gad gamma={p} N=0.3",
      "param": "p",
      "start": 0.0, "stop": 1.0, "points": 21,
      "bounds": ["rains-theta-geometric", "max-rains"],
      "level": 10,
      "format": "csv",
      "output": "reports/gad_quantum.csv"
    }

`{param}` placeholders in the channel text receive the grid value; without
one, the top-level key named `param` is overridden instead.
"""

from __future__ import annotations

import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from .channel_spec import has_placeholder, parse_channel_spec, substitute
from .config import Settings, get_settings
from .errors import ContractViolation
from .registry import evaluate_bound, get_bound
from .types import SweepRow, SweepSpec

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("csv", "json")


def validate_sweep_spec(spec: SweepSpec) -> SweepSpec:
    if spec.points < 1:
        raise ContractViolation(f"points must be >= 1, got {spec.points}")
    if not spec.bounds:
        raise ContractViolation("bounds must be nonempty")
    for name in spec.bounds:
        get_bound(name)
    if spec.output_format not in OUTPUT_FORMATS:
        raise ContractViolation(f"format must be one of {OUTPUT_FORMATS}, got {spec.output_format!r}")
    if spec.level is not None and spec.level < 0:
        raise ContractViolation(f"level must be >= 0, got {spec.level}")
    return spec


def sweep_spec_from_dict(data: Dict[str, Any]) -> SweepSpec:
    missing = [key for key in ("channel", "param", "start", "stop", "points", "bounds") if key not in data]
    if missing:
        raise ContractViolation(f"Sweep specification is missing: {', '.join(missing)}")
    level = data.get("level")
    return validate_sweep_spec(
        SweepSpec(
            channel=str(data["channel"]),
            param=str(data["param"]),
            start=float(data["start"]),
            stop=float(data["stop"]),
            points=int(data["points"]),
            bounds=[str(b) for b in data["bounds"]],
            level=None if level is None else int(level),
            output_format=str(data.get("format", "csv")).lower(),
            output=data.get("output"),
        )
    )


def load_sweep_spec(path: Path) -> SweepSpec:
    with Path(path).open("r", encoding="utf-8") as f:
        return sweep_spec_from_dict(json.load(f))


def grid(spec: SweepSpec) -> List[float]:
    return [float(x) for x in np.linspace(spec.start, spec.stop, spec.points)]


def channel_at(spec: SweepSpec, value: float):
    if has_placeholder(spec.channel, spec.param):
        return parse_channel_spec(substitute(spec.channel, {spec.param: value}))
    return parse_channel_spec(spec.channel, overrides={spec.param: value})


def evaluate_point(spec: SweepSpec, index: int, value: float, settings: Settings) -> SweepRow:
    """All bounds at one grid point; failures become NaN cells with a message."""
    row = SweepRow(index=index, param=value)
    level = spec.level if spec.level is not None else settings.sweep_level
    try:
        channel = channel_at(spec, value)
    except Exception as exc:
        logger.warning("sweep point %d (%s=%g): %s", index, spec.param, value, exc)
        for name in spec.bounds:
            row.values[name] = math.nan
            row.errors[name] = str(exc)
        return row
    for name in spec.bounds:
        try:
            result = evaluate_bound(name, channel, level=level, settings=settings)
        except Exception as exc:
            logger.warning("sweep point %d (%s=%g) %s: %s", index, spec.param, value, name, exc)
            row.values[name] = math.nan
            row.errors[name] = str(exc)
            continue
        row.statuses[name] = result.report.status.value
        row.values[name] = result.bits if result.ok else math.nan
        if not result.ok:
            row.errors[name] = result.report.message or result.report.status.value
    return row


def run_sweep(
    spec: SweepSpec,
    settings: Optional[Settings] = None,
    progress: Optional[Callable[[SweepRow], None]] = None,
) -> List[SweepRow]:
    """Evaluate the whole grid; rows come back ordered by grid index."""
    settings = settings or get_settings()
    validate_sweep_spec(spec)
    points = grid(spec)
    rows: List[SweepRow] = []
    if settings.workers > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=settings.workers) as pool:
            futures = [pool.submit(evaluate_point, spec, i, x, settings) for i, x in enumerate(points)]
            for future in futures:
                row = future.result()
                rows.append(row)
                if progress:
                    progress(row)
    else:
        for i, x in enumerate(points):
            row = evaluate_point(spec, i, x, settings)
            rows.append(row)
            if progress:
                progress(row)
    return sorted(rows, key=lambda r: r.index)
