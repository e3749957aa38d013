"""Symbolic conic programs over Hermitian matrix variables.

A `ConicProgram` collects named variables, PSD blocks, linear constraints and
a real objective, and hands a `cvxpy.Problem` to a backend. Variables carry a
tag: "hermitian", "general" (arbitrary complex square matrix) or "real".

complex_mode="native" uses cvxpy's complex variables. complex_mode="embed"
stores each Hermitian variable as a real symmetric matrix in the
[[R, -I], [I, R]] pattern and lowers every PSD block the same way, so the
solver only ever sees real symmetric cones.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import cvxpy as cp
import numpy as np

from ..config import COMPLEX_MODES
from ..errors import ContractViolation
from .embedding import antisymmetry_residual, embed_expression, unembed

Shape = Union[int, Tuple[int, ...]]


@dataclass
class ProgramVariable:
    name: str
    tag: str
    shape: Tuple[int, ...]
    expr: Any
    raw: Tuple[cp.Variable, ...]


class ConicProgram:
    def __init__(self, name: str = "program", complex_mode: str = "native"):
        if complex_mode not in COMPLEX_MODES:
            raise ContractViolation(f"complex_mode must be one of {COMPLEX_MODES}, got {complex_mode!r}")
        self.name = name
        self.complex_mode = complex_mode
        self.variables: Dict[str, ProgramVariable] = {}
        self.constraints: List[cp.Constraint] = []
        self.psd_blocks = 0
        self.sense = "min"
        self._objective: Optional[cp.Expression] = None
        self._embedded: List[cp.Variable] = []

    @property
    def embedded(self) -> bool:
        return self.complex_mode == "embed"

    def _register(self, name: str, tag: str, shape: Tuple[int, ...], expr: Any, raw: Tuple[cp.Variable, ...]) -> Any:
        if name in self.variables:
            raise ContractViolation(f"Variable {name!r} already declared in {self.name}")
        self.variables[name] = ProgramVariable(name, tag, shape, expr, raw)
        return expr

    def hermitian(self, name: str, dim: int, psd: bool = False) -> Any:
        """Declare a dim x dim Hermitian matrix variable, optionally PSD."""
        if self.embedded:
            E = cp.Variable((2 * dim, 2 * dim), symmetric=True, name=name)
            self.constraints += [E[:dim, :dim] == E[dim:, dim:], E[:dim, dim:] == -E[dim:, :dim]]
            if psd:
                self.constraints.append(E >> 0)
                self.psd_blocks += 1
            self._embedded.append(E)
            expr = E[:dim, :dim] + 1j * E[dim:, :dim]
            return self._register(name, "hermitian", (dim, dim), expr, (E,))
        H = cp.Variable((dim, dim), hermitian=True, name=name)
        if psd:
            self.constraints.append(H >> 0)
            self.psd_blocks += 1
        return self._register(name, "hermitian", (dim, dim), H, (H,))

    def general(self, name: str, dim: int) -> Any:
        """Declare an unconstrained complex dim x dim matrix variable."""
        if self.embedded:
            re = cp.Variable((dim, dim), name=f"{name}_re")
            im = cp.Variable((dim, dim), name=f"{name}_im")
            return self._register(name, "general", (dim, dim), re + 1j * im, (re, im))
        K = cp.Variable((dim, dim), complex=True, name=name)
        return self._register(name, "general", (dim, dim), K, (K,))

    def real(self, name: str, shape: Shape = (), nonneg: bool = False) -> cp.Variable:
        shape = (shape,) if isinstance(shape, int) else tuple(shape)
        v = cp.Variable(shape, nonneg=nonneg, name=name)
        return self._register(name, "real", shape, v, (v,))

    @staticmethod
    def block(rows: Sequence[Sequence[Any]]) -> cp.Expression:
        return cp.bmat([list(r) for r in rows])

    def psd(self, block: Any) -> cp.Constraint:
        """Constrain a Hermitian affine expression to be PSD."""
        expr = block if isinstance(block, cp.Expression) else cp.Constant(np.asarray(block))
        if len(expr.shape) != 2 or expr.shape[0] != expr.shape[1]:
            raise ContractViolation(f"PSD block must be square, got shape {expr.shape}")
        if self.embedded:
            expr = embed_expression(expr)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            constraint = expr >> 0
        self.constraints.append(constraint)
        self.psd_blocks += 1
        return constraint

    def add(self, *constraints: cp.Constraint) -> None:
        self.constraints.extend(constraints)

    def minimize(self, expr: Any) -> None:
        self.sense, self._objective = "min", expr

    def maximize(self, expr: Any) -> None:
        self.sense, self._objective = "max", expr

    def problem(self) -> cp.Problem:
        if self._objective is None:
            raise ContractViolation(f"Program {self.name} has no objective")
        target = cp.real(self._objective) if _is_complex(self._objective) else self._objective
        objective = cp.Minimize(target) if self.sense == "min" else cp.Maximize(target)
        return cp.Problem(objective, self.constraints)

    def value(self, name: str) -> Any:
        var = self.variables.get(name)
        if var is None:
            raise ContractViolation(f"Unknown variable {name!r}. Declared: {', '.join(self.variables)}")
        if var.tag == "hermitian" and self.embedded:
            E = var.raw[0].value
            return None if E is None else unembed(E)
        value = var.expr.value
        return None if value is None else np.asarray(value)

    def antisymmetry_residual(self) -> Optional[float]:
        """Largest pattern deviation over embedded Hermitian variables, None in native mode."""
        if not self.embedded or not self._embedded:
            return None
        values = [E.value for E in self._embedded if E.value is not None]
        if not values:
            return None
        return max(antisymmetry_residual(v) for v in values)

    def summary(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "complex_mode": self.complex_mode,
            "sense": self.sense,
            "variables": len(self.variables),
            "scalars": sum(int(np.prod(v.shape)) if v.shape else 1 for v in self.variables.values()),
            "psd_blocks": self.psd_blocks,
            "constraints": len(self.constraints),
        }

    def __repr__(self) -> str:
        s = self.summary()
        return f"ConicProgram({s['name']}, {s['variables']} vars, {s['psd_blocks']} PSD blocks, {self.complex_mode})"


def _is_complex(expr: Any) -> bool:
    return isinstance(expr, cp.Expression) and expr.is_complex()


def real_trace(expr: Any) -> cp.Expression:
    """Real part of the trace; exact for Hermitian expressions."""
    return cp.real(cp.trace(expr))
