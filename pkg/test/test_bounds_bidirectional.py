import math

import numpy as np
import pytest

from source import bounds, channels
from source.types import BoundKind


@pytest.mark.parametrize("p", [0.0, 0.3, 1.0])
def test_undephased_swap_carries_two_qubits(solver, p):
    ch = channels.make_bidirectional_swap_dephase(p, 0.0)
    assert bounds.bi_holevo_werner(ch, solver).bits == pytest.approx(2.0, abs=1e-5)
    assert bounds.bi_max_rains(ch, solver).bits == pytest.approx(2.0, abs=1e-5)


@pytest.mark.parametrize("p", [0.2, 0.5, 0.8])
def test_geometric_below_max_rains(solver, p):
    ch = channels.make_bidirectional_swap_dephase(p, math.pi)
    top = bounds.bi_max_rains(ch, solver).bits
    result = bounds.bi_theta_geometric(ch, 2, solver)
    assert result.bound_kind is BoundKind.BI_THETA_GEOMETRIC
    assert result.bits <= top + 1e-5
    assert top <= bounds.bi_holevo_werner(ch, solver).bits + 1e-5


@pytest.mark.slow
def test_geometric_separates_from_max_rains_at_phi_pi(solver):
    gaps = []
    for p in np.linspace(0.0, 1.0, 21):
        ch = channels.make_bidirectional_swap_dephase(float(p), math.pi)
        top = bounds.bi_max_rains(ch, solver)
        low = bounds.bi_theta_geometric(ch, 10, solver)
        assert top.ok and low.ok, (p, top.report.message, low.report.message)
        assert low.bits <= top.bits + 1e-5
        gaps.append(top.bits - low.bits)
    assert max(gaps) > 1e-3
