import math

import numpy as np
import pytest

from source import bounds, channels
from source.conic import alpha_of_level


@pytest.mark.parametrize("gamma", [0.1, 0.3, 0.5, 0.75, 0.9])
@pytest.mark.parametrize("N", [0.0, 0.3, 0.5])
def test_gad_analytic_value(solver, gamma, N):
    expected = math.log2(1 + math.sqrt(1 - gamma))
    ch = channels.gad(gamma, N)
    assert bounds.c_beta(ch, solver).bits == pytest.approx(expected, abs=1e-6)
    assert bounds.c_zeta(ch, solver).bits == pytest.approx(expected, abs=1e-6)


def _erasure_upsilon(p, level):
    alpha = alpha_of_level(level)
    return alpha / (alpha - 1) * math.log2((1 - p) * 2 ** ((alpha - 1) / alpha) + p)


@pytest.mark.parametrize("p", [0.0, 0.25, 0.5, 0.75, 1.0])
def test_erasure_upsilon_geometric(solver, p):
    result = bounds.upsilon_geometric(channels.erasure(p), 5, solver)
    assert result.ok
    assert result.bits == pytest.approx(_erasure_upsilon(p, 5), abs=1e-4)
    assert result.bits >= 1 - p - 1e-6


@pytest.mark.parametrize("p", [0.25, 0.5, 0.75])
def test_erasure_upsilon_approaches_capacity_at_figure_level(solver, p):
    result = bounds.upsilon_geometric(channels.erasure(p), 10, solver)
    assert result.ok
    assert result.bits == pytest.approx(1 - p, abs=1e-3)


@pytest.mark.parametrize("p", [0.2, 0.5, 0.8])
def test_dephrasure_upsilon_geometric(solver, p):
    q = p * p
    result = bounds.upsilon_geometric(channels.dephrasure(p, q), 10, solver)
    assert result.ok
    assert result.bits == pytest.approx(1 - q, abs=1e-3)
    assert result.bits >= 1 - q - 5e-4


def test_upsilon_max_below_c_beta_and_c_zeta(solver, rng):
    for _ in range(5):
        ch = channels.random_channel(2, 2, rng)
        upsilon = bounds.upsilon_max(ch, solver).bits
        assert upsilon <= bounds.c_beta(ch, solver).bits + 1e-6
        assert upsilon <= bounds.c_zeta(ch, solver).bits + 1e-6


def test_geometric_below_upsilon_max(solver):
    ch = channels.gad(0.4, 0.3)
    assert bounds.upsilon_geometric(ch, 3, solver).bits <= bounds.upsilon_max(ch, solver).bits + 1e-5


def test_upsilon_subadditive(solver, rng):
    a = channels.random_channel(2, 2, rng)
    b = channels.dephasing(0.2)
    joint = bounds.upsilon_geometric(channels.tensor(a, b), 1, solver).bits
    parts = bounds.upsilon_geometric(a, 1, solver).bits + bounds.upsilon_geometric(b, 1, solver).bits
    assert joint <= parts + 1e-4


@pytest.mark.slow
def test_geometric_separates_from_upsilon_max_on_gad(solver):
    gaps = []
    for gamma in np.linspace(0.0, 1.0, 21):
        ch = channels.gad(float(gamma), 0.3)
        top = bounds.upsilon_max(ch, solver)
        low = bounds.upsilon_geometric(ch, 10, solver)
        assert top.ok and low.ok, (gamma, top.report.message, low.report.message)
        assert low.bits <= top.bits + 1e-5
        gaps.append(top.bits - low.bits)
    assert max(gaps) > 1e-3
