"""Abstract solver backend and the backend factory."""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any, List

from ..types import SolveReport
from .program import ConicProgram


class SolverBackend(ABC):
    """Abstract interface that every conic solver backend must implement."""

    name: str = ""

    @abstractmethod
    def solve(self, program: ConicProgram) -> SolveReport:
        """Solve the program in place and return its status and diagnostics."""
        ...

    @abstractmethod
    def available_solvers(self) -> List[str]:
        """Names of the solvers this backend can reach in the current environment."""
        ...


def create_backend(name: str = "cvxpy", **kwargs: Any) -> SolverBackend:
    """Factory function. Instantiate a solver backend by name.

    Supported values: "cvxpy" (default).
    """
    name = name.lower().strip()
    if name == "cvxpy":
        from .cvxpy_backend import CvxpyBackend
        return CvxpyBackend(**kwargs)
    raise ValueError(f"Unknown solver backend: {name!r}. Supported: cvxpy")
