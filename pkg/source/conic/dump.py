"""Text dump of the canonical cone program behind a `ConicProgram`.

The program is compiled by cvxpy into the SCS standard form

    minimize c'x + offset   subject to  A x + s = b,  s in K

and written as plain text:

    geobounds-conic-dump 1
    name <program name>
    sense min|max
    offset <float>
    cones zero=<n> nonneg=<n> soc=<n1,n2,...> psd=<n1,n2,...>
    c <length> <nnz>
    <i> <value>            (one line per nonzero)
    A <rows> <cols> <nnz>
    <i> <j> <value>        (COO triplets, zero-based)
    b <length> <nnz>
    <i> <value>

Rows of A are ordered by cone: zero, nonneg, soc, psd. Each PSD cone of
order n occupies n(n+1)/2 rows holding the lower triangle column by column,
off-diagonal entries scaled by sqrt(2) (the SCS convention). For a `max`
program c is already negated, so the stored problem is always a minimization.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Dict, Union

import cvxpy as cp
import numpy as np
import scipy.sparse as sp

from .program import ConicProgram

logger = logging.getLogger(__name__)

DUMP_HEADER = "geobounds-conic-dump 1"


def _vector_lines(tag: str, v: np.ndarray) -> list:
    v = np.asarray(v, dtype=float).ravel()
    idx = np.flatnonzero(v)
    lines = [f"{tag} {v.size} {idx.size}"]
    lines += [f"{i} {v[i]:.17g}" for i in idx]
    return lines


def problem_data(program: ConicProgram) -> Dict[str, Any]:
    data, _, _ = program.problem().get_problem_data(cp.SCS)
    return data


def dump_program(program: ConicProgram, path: Union[str, Path]) -> Path:
    """Write the compiled program to `path` and return the path."""
    data = problem_data(program)
    dims = data["dims"]
    A = sp.coo_matrix(data["A"])
    lines = [
        DUMP_HEADER,
        f"name {program.name}",
        f"sense {program.sense}",
        f"offset {float(data.get('offset', 0.0)):.17g}",
        "cones zero={} nonneg={} soc={} psd={}".format(
            int(dims.zero),
            int(dims.nonneg),
            ",".join(str(int(n)) for n in dims.soc),
            ",".join(str(int(n)) for n in dims.psd),
        ),
    ]
    lines += _vector_lines("c", data["c"])
    lines.append(f"A {A.shape[0]} {A.shape[1]} {A.nnz}")
    lines += [f"{i} {j} {v:.17g}" for i, j, v in zip(A.row, A.col, A.data)]
    lines += _vector_lines("b", data["b"])
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")
    logger.info("wrote %s (%d x %d, %d nonzeros)", path, A.shape[0], A.shape[1], A.nnz)
    return path


def read_dump(path: Union[str, Path]) -> Dict[str, Any]:
    """Parse a dump written by `dump_program` back into arrays."""
    with Path(path).open("r", encoding="utf-8") as f:
        lines = [line.rstrip("\n") for line in f]
    if not lines or lines[0] != DUMP_HEADER:
        raise ValueError(f"{path}: not a geobounds conic dump")
    out: Dict[str, Any] = {"name": lines[1].split(" ", 1)[1], "sense": lines[2].split()[1], "offset": float(lines[3].split()[1])}
    cones = dict(part.split("=", 1) for part in lines[4].split()[1:])
    out["cones"] = {
        "zero": int(cones["zero"]),
        "nonneg": int(cones["nonneg"]),
        "soc": [int(n) for n in cones["soc"].split(",") if n],
        "psd": [int(n) for n in cones["psd"].split(",") if n],
    }
    pos = 5

    def vector() -> np.ndarray:
        nonlocal pos
        _, size, nnz = lines[pos].split()
        v = np.zeros(int(size))
        for line in lines[pos + 1:pos + 1 + int(nnz)]:
            i, value = line.split()
            v[int(i)] = float(value)
        pos += 1 + int(nnz)
        return v

    out["c"] = vector()
    _, rows, cols, nnz = lines[pos].split()
    triplets = [line.split() for line in lines[pos + 1:pos + 1 + int(nnz)]]
    pos += 1 + int(nnz)
    out["A"] = sp.coo_matrix(
        ([float(t[2]) for t in triplets], ([int(t[0]) for t in triplets], [int(t[1]) for t in triplets])),
        shape=(int(rows), int(cols)),
    ).tocsc()
    out["b"] = vector()
    return out
