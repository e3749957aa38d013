"""Runtime settings for solves and sweeps.

Values come from, in increasing precedence: built-in defaults, an optional
key=value config file (see `ci/solver-config.ini`), environment variables,
and finally CLI flags applied by the caller.

Environment:
  GEOBOUNDS_BACKEND       conic backend name (default: cvxpy)
  GEOBOUNDS_SOLVER        solver used by the backend (default: CLARABEL)
  GEOBOUNDS_COMPLEX_MODE  native | embed (default: native)
  GEOBOUNDS_FEAS_TOL      solver feasibility tolerance (default: 1e-8)
  GEOBOUNDS_GAP_TOL       solver duality-gap tolerance (default: 1e-8)
  GEOBOUNDS_GUARD         identity mixed into fixed Choi inputs (default: 1e-9)
  GEOBOUNDS_WORKERS       sweep worker processes (default: 1)
  GEOBOUNDS_LOG_LEVEL     logging level for the CLI (default: WARNING)
  GEOBOUNDS_DUMP_DIR      write every conic program there before solving (default: unset)
  GEOBOUNDS_CONFIG        path of a config file read before the environment
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from .errors import ConfigError

DEFAULT_BACKEND = "cvxpy"
DEFAULT_SOLVER = "CLARABEL"
DEFAULT_SWEEP_LEVEL = 3
DEFAULT_FIGURE_LEVEL = 10
COMPLEX_MODES = ("native", "embed")

_ENV_KEYS = {
    "backend": "GEOBOUNDS_BACKEND",
    "solver": "GEOBOUNDS_SOLVER",
    "complex_mode": "GEOBOUNDS_COMPLEX_MODE",
    "feasibility_tol": "GEOBOUNDS_FEAS_TOL",
    "gap_tol": "GEOBOUNDS_GAP_TOL",
    "feasibility_guard": "GEOBOUNDS_GUARD",
    "workers": "GEOBOUNDS_WORKERS",
    "log_level": "GEOBOUNDS_LOG_LEVEL",
    "dump_dir": "GEOBOUNDS_DUMP_DIR",
}


@dataclass(frozen=True)
class Settings:
    backend: str = DEFAULT_BACKEND
    solver: str = DEFAULT_SOLVER
    complex_mode: str = "native"
    feasibility_tol: float = 1e-8
    gap_tol: float = 1e-8
    accept_gap: float = 1e-6
    accept_residual: float = 1e-7
    feasibility_guard: float = 1e-9
    sweep_level: int = DEFAULT_SWEEP_LEVEL
    figure_level: int = DEFAULT_FIGURE_LEVEL
    workers: int = 1
    max_sep_dim: int = 6
    log_level: str = "WARNING"
    dump_dir: str = ""

    def updated(self, **changes: Any) -> "Settings":
        """Copy with the given fields replaced; values are coerced and validated."""
        return _validated(replace(self, **_coerce_all(changes)))


def _coerce(key: str, raw: Any) -> Any:
    types = {f.name: f.type for f in fields(Settings)}
    if key not in types:
        raise ConfigError(f"Unknown setting: {key!r}. Supported: {', '.join(sorted(types))}")
    kind = types[key]
    try:
        if kind in (int, "int"):
            return int(raw)
        if kind in (float, "float"):
            return float(raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"Invalid value for {key}: {raw!r}") from exc
    return str(raw).strip()


def _coerce_all(values: Mapping[str, Any]) -> Dict[str, Any]:
    return {key: _coerce(key, value) for key, value in values.items()}


def _validated(settings: Settings) -> Settings:
    if settings.complex_mode not in COMPLEX_MODES:
        raise ConfigError(f"complex_mode must be one of {COMPLEX_MODES}, got {settings.complex_mode!r}")
    if settings.workers < 1:
        raise ConfigError(f"workers must be >= 1, got {settings.workers}")
    for key in ("feasibility_tol", "gap_tol", "accept_gap", "accept_residual"):
        if getattr(settings, key) <= 0:
            raise ConfigError(f"{key} must be positive")
    if settings.feasibility_guard < 0:
        raise ConfigError("feasibility_guard must be non-negative")
    if settings.sweep_level < 0 or settings.figure_level < 0:
        raise ConfigError("levels must be non-negative")
    return replace(settings, solver=settings.solver.upper(), backend=settings.backend.lower())


def read_config_file(path: Path) -> Dict[str, Any]:
    """Parse key=value lines; `#` starts a comment."""
    values: Dict[str, Any] = {}
    with Path(path).open("r", encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            values[key] = _coerce(key, value)
    return values


def load_settings(path: Optional[Path] = None, environ: Optional[Mapping[str, str]] = None) -> Settings:
    env = os.environ if environ is None else environ
    values: Dict[str, Any] = {}
    config_path = path or env.get("GEOBOUNDS_CONFIG")
    if config_path:
        values.update(read_config_file(Path(config_path)))
    for key, name in _ENV_KEYS.items():
        raw = env.get(name)
        if raw is not None and raw.strip() != "":
            values[key] = _coerce(key, raw)
    return _validated(replace(Settings(), **values))


_lock = threading.Lock()
_current: Optional[Settings] = None


def get_settings() -> Settings:
    """Process-wide settings, loaded from file/environment on first use."""
    global _current
    with _lock:
        if _current is None:
            _current = load_settings()
        return _current


def set_settings(settings: Optional[Settings]) -> None:
    """Replace the process-wide settings; None reloads on next access."""
    global _current
    with _lock:
        _current = settings
