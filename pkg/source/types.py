"""Shared dataclasses that flow between modules."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional


class SolveStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    INACCURATE = "inaccurate"


class BoundKind(Enum):
    """Every bound the registry can evaluate; values double as CLI names."""
    HOLEVO_WERNER = "holevo-werner"
    MAX_RAINS = "max-rains"
    MAX_RAINS_THETA = "max-rains-theta"
    RAINS_GEOMETRIC = "rains-geometric"
    RAINS_THETA_GEOMETRIC = "rains-theta-geometric"
    BI_HOLEVO_WERNER = "bi-holevo-werner"
    BI_MAX_RAINS = "bi-max-rains"
    BI_THETA_GEOMETRIC = "bi-theta-geometric"
    E_MAX = "e-max"
    E_MAX_SIGMA = "e-max-sigma"
    E_ALPHA = "e-alpha"
    E_ALPHA_SIGMA = "e-alpha-sigma"
    C_BETA = "c-beta"
    C_ZETA = "c-zeta"
    UPSILON_MAX = "upsilon-max"
    UPSILON_GEOMETRIC = "upsilon-geometric"
    MANA = "mana"
    THAUMA_MAX = "thauma-max"
    THAUMA_GEOMETRIC = "thauma-geometric"
    RAINS_STATE_GEOMETRIC = "rains-state-geometric"
    THAUMA_STATE_GEOMETRIC = "thauma-state-geometric"
    THETA_MIN = "theta-min"


@dataclass
class SolveReport:
    """Outcome of one conic solve, with the diagnostics used to trust it."""
    status: SolveStatus
    objective: float = math.nan
    gap: Optional[float] = None
    primal_residual: float = 0.0
    dual_residual: Optional[float] = None
    antisymmetry_residual: Optional[float] = None
    solver: str = ""
    solve_time: float = 0.0
    message: str = ""

    @property
    def ok(self) -> bool:
        return self.status is SolveStatus.OPTIMAL

    @classmethod
    def closed_form(cls, value: float) -> "SolveReport":
        """Report for a quantity evaluated without a solver."""
        return cls(status=SolveStatus.OPTIMAL, objective=value, gap=0.0, solver="closed-form")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status.value,
            "objective": self.objective,
            "gap": self.gap,
            "primal_residual": self.primal_residual,
            "dual_residual": self.dual_residual,
            "antisymmetry_residual": self.antisymmetry_residual,
            "solver": self.solver,
            "solve_time": self.solve_time,
            "message": self.message,
        }


@dataclass
class BoundResult:
    """A capacity bound in bits.

    `level` is the dyadic level l with alpha = 1 + 2**-l, or None for bounds
    that do not depend on alpha.
    """
    bits: float
    bound_kind: BoundKind
    report: SolveReport
    level: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.report.ok and not math.isnan(self.bits)

    @property
    def alpha(self) -> Optional[float]:
        if self.level is None:
            return None
        return 1.0 + 2.0 ** (-self.level)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "bound": self.bound_kind.value,
            "bits": self.bits,
            "level": self.level,
            "alpha": self.alpha,
            "report": self.report.to_dict(),
        }


@dataclass
class SweepSpec:
    """A parameter sweep of one or more bounds over a channel family."""
    channel: str
    param: str
    start: float
    stop: float
    points: int
    bounds: List[str] = field(default_factory=list)
    level: Optional[int] = None
    output_format: str = "csv"
    output: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "channel": self.channel,
            "param": self.param,
            "start": self.start,
            "stop": self.stop,
            "points": self.points,
            "bounds": list(self.bounds),
            "level": self.level,
            "format": self.output_format,
            "output": self.output,
        }


@dataclass
class SweepRow:
    """Values of every requested bound at one grid point."""
    index: int
    param: float
    values: Dict[str, float] = field(default_factory=dict)
    statuses: Dict[str, str] = field(default_factory=dict)
    errors: Dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.errors and all(not math.isnan(v) for v in self.values.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "index": self.index,
            "param": self.param,
            "values": dict(self.values),
            "statuses": dict(self.statuses),
            "errors": dict(self.errors),
        }
