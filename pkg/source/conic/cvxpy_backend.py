"""cvxpy backend: Clarabel by default, SCS as fallback.

Programs are compiled with `Problem.get_problem_data`, solved with
`solve_via_data` and unpacked back into the variables, so the raw solver
certificate stays available. The relative duality gap is measured from it
for every solver as

    |c'x - (-b'y)| / (1 + |c'x| + |b'y|)

in the solver's standard form `min c'x s.t. Ax + s = b, s in K` with dual y.

A solve counts as optimal when the measured gap is within `accept_gap` and
the relative primal residual within `accept_residual`, whatever status
string the solver used ("optimal" or "optimal_inaccurate"). Anything else
is retried with the fallback solver; if that does not do better the first
report is returned as inaccurate.
"""

from __future__ import annotations

import logging
import math
import time
from typing import Any, Dict, List, Optional, Tuple

import cvxpy as cp
import numpy as np

from ..config import Settings, get_settings
from ..errors import SolverFailure
from ..types import SolveReport, SolveStatus
from .base import SolverBackend
from .program import ConicProgram

logger = logging.getLogger(__name__)

FALLBACK_SOLVER = "SCS"

_STATUS = {
    cp.OPTIMAL: SolveStatus.OPTIMAL,
    cp.OPTIMAL_INACCURATE: SolveStatus.INACCURATE,
    cp.INFEASIBLE: SolveStatus.INFEASIBLE,
    cp.INFEASIBLE_INACCURATE: SolveStatus.INFEASIBLE,
    cp.UNBOUNDED: SolveStatus.UNBOUNDED,
    cp.UNBOUNDED_INACCURATE: SolveStatus.UNBOUNDED,
}

_SOLVED = (cp.OPTIMAL, cp.OPTIMAL_INACCURATE)


class CvxpyBackend(SolverBackend):
    name = "cvxpy"

    def __init__(
        self,
        solver: Optional[str] = None,
        feasibility_tol: Optional[float] = None,
        gap_tol: Optional[float] = None,
        accept_gap: Optional[float] = None,
        accept_residual: Optional[float] = None,
        fallback: Optional[str] = FALLBACK_SOLVER,
        settings: Optional[Settings] = None,
    ):
        settings = settings or get_settings()
        self.solver = (solver or settings.solver).upper()
        self.feasibility_tol = feasibility_tol if feasibility_tol is not None else settings.feasibility_tol
        self.gap_tol = gap_tol if gap_tol is not None else settings.gap_tol
        self.accept_gap = accept_gap if accept_gap is not None else settings.accept_gap
        self.accept_residual = accept_residual if accept_residual is not None else settings.accept_residual
        self.fallback = fallback.upper() if fallback else None

    def available_solvers(self) -> List[str]:
        return list(cp.installed_solvers())

    def _options(self, solver: str) -> Dict[str, Any]:
        if solver == "CLARABEL":
            return {"tol_feas": self.feasibility_tol, "tol_gap_abs": self.gap_tol, "tol_gap_rel": self.gap_tol}
        if solver == "SCS":
            return {"eps_abs": self.feasibility_tol, "eps_rel": self.gap_tol, "max_iters": 200000}
        return {}

    def _candidates(self) -> List[str]:
        installed = set(self.available_solvers())
        order = [self.solver] + ([self.fallback] if self.fallback and self.fallback != self.solver else [])
        usable = [s for s in order if s in installed]
        if not usable:
            raise SolverFailure(f"None of the solvers {order} is installed (available: {sorted(installed)})")
        return usable

    def solve(self, program: ConicProgram) -> SolveReport:
        problem = program.problem()
        logger.debug("solving %s", program.summary())
        attempts: List[SolveReport] = []
        for solver in self._candidates():
            report = self._attempt(problem, program, solver)
            logger.debug("%s: %s objective=%s gap=%s", program.name, report.status.value, report.objective, report.gap)
            if report.status is not SolveStatus.INACCURATE:
                return report
            attempts.append(report)
            logger.warning("%s on %s: %s", solver, program.name, report.message)
        first = attempts[0]
        first.message = "; ".join(f"{r.solver}: {r.message}" for r in attempts)
        return first

    def _attempt(self, problem: cp.Problem, program: ConicProgram, solver: str) -> SolveReport:
        start = time.perf_counter()
        try:
            data, chain, inverse_data = problem.get_problem_data(solver)
            raw = chain.solve_via_data(problem, data, False, False, self._options(solver))
            problem.unpack_results(raw, chain, inverse_data)
        except cp.error.SolverError as exc:
            return SolveReport(
                status=SolveStatus.INACCURATE,
                solver=solver,
                solve_time=time.perf_counter() - start,
                message=str(exc),
            )
        return self._report(problem, program, solver, data, raw, time.perf_counter() - start)

    def _report(
        self,
        problem: cp.Problem,
        program: ConicProgram,
        solver: str,
        data: Dict[str, Any],
        raw: Any,
        elapsed: float,
    ) -> SolveReport:
        objective = float(problem.value) if problem.value is not None else math.nan
        gap, dual_residual = certificate_gap(data, raw)
        residual = _primal_residual(problem) / (1.0 + (abs(objective) if math.isfinite(objective) else 0.0))
        status, message = classify(problem.status, gap, residual, self.accept_gap, self.accept_residual)
        return SolveReport(
            status=status,
            objective=objective,
            gap=gap,
            primal_residual=residual,
            dual_residual=dual_residual,
            antisymmetry_residual=program.antisymmetry_residual(),
            solver=solver,
            solve_time=elapsed,
            message=message,
        )


def classify(
    raw_status: str,
    gap: Optional[float],
    residual: float,
    accept_gap: float,
    accept_residual: float,
) -> Tuple[SolveStatus, str]:
    """Map a cvxpy status plus measured diagnostics to a SolveStatus and a message."""
    if raw_status not in _SOLVED:
        return _STATUS.get(raw_status, SolveStatus.INACCURATE), str(raw_status)
    reasons = []
    if gap is None:
        reasons.append("no duality gap available")
    elif not gap <= accept_gap:
        reasons.append(f"gap {gap:.2e}")
    if not residual <= accept_residual:
        reasons.append(f"primal residual {residual:.2e}")
    if not reasons:
        return SolveStatus.OPTIMAL, str(raw_status)
    return SolveStatus.INACCURATE, f"{raw_status}: " + ", ".join(reasons)


def _raw_field(raw: Any, name: str) -> Any:
    if isinstance(raw, dict):
        if name in raw:
            return raw[name]
        return raw.get("info", {}).get(name)
    return getattr(raw, name, None)


def certificate_gap(data: Dict[str, Any], raw: Any) -> Tuple[Optional[float], Optional[float]]:
    """Relative duality gap from the primal-dual pair in `raw`, plus the solver's dual residual.

    Works on Clarabel's solution object (x, z, r_dual) and on SCS's result
    dict (x, y, info["res_dual"]).
    """
    x = _raw_field(raw, "x")
    y = _raw_field(raw, "z")
    if y is None:
        y = _raw_field(raw, "y")
    dual_residual = _raw_field(raw, "r_dual")
    if dual_residual is None:
        dual_residual = _raw_field(raw, "res_dual")
    dual_residual = float(dual_residual) if dual_residual is not None else None
    c, b = data.get("c"), data.get("b")
    if x is None or y is None or c is None or b is None:
        return None, dual_residual
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.size != np.size(c) or y.size != np.size(b):
        return None, dual_residual
    primal = float(np.dot(np.asarray(c, dtype=float).ravel(), x))
    dual = -float(np.dot(np.asarray(b, dtype=float).ravel(), y))
    P = data.get("P")
    if P is not None:
        quad = float(x @ (P @ x))
        primal += 0.5 * quad
        dual -= 0.5 * quad
    if not (math.isfinite(primal) and math.isfinite(dual)):
        return None, dual_residual
    return abs(primal - dual) / (1.0 + abs(primal) + abs(dual)), dual_residual


def _primal_residual(problem: cp.Problem) -> float:
    worst = 0.0
    for constraint in problem.constraints:
        try:
            violation = constraint.violation()
        except (ValueError, TypeError):
            continue
        if violation is None:
            continue
        worst = max(worst, float(np.max(np.abs(np.atleast_1d(violation)))))
    return worst
