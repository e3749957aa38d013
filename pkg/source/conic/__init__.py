"""Conic program builder and solver backends."""

from __future__ import annotations

from pathlib import Path
from typing import Optional

from ..config import Settings, get_settings
from ..types import SolveReport
from .base import SolverBackend, create_backend
from .dump import dump_program, read_dump
from .embedding import antisymmetry_residual, embed, embedded_trace, unembed
from .epigraph import alpha_of_level, geomean_epigraph
from .program import ConicProgram, real_trace


def new_program(name: str, settings: Optional[Settings] = None) -> ConicProgram:
    settings = settings or get_settings()
    return ConicProgram(name, complex_mode=settings.complex_mode)


def solve(program: ConicProgram, settings: Optional[Settings] = None) -> SolveReport:
    """Solve with the backend named in the settings.

    With `settings.dump_dir` set, the program is first written there as
    `<program name>.txt`.
    """
    settings = settings or get_settings()
    if settings.dump_dir:
        dump_program(program, Path(settings.dump_dir) / f"{program.name}.txt")
    return create_backend(settings.backend, settings=settings).solve(program)


__all__ = [
    "ConicProgram",
    "SolverBackend",
    "alpha_of_level",
    "antisymmetry_residual",
    "create_backend",
    "dump_program",
    "embed",
    "embedded_trace",
    "geomean_epigraph",
    "new_program",
    "read_dump",
    "real_trace",
    "solve",
    "unembed",
]
