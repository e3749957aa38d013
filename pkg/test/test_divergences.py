import math

import numpy as np
import pytest

from source import channels
from source import divergences as dv
from source import linalg
from source.conic import alpha_of_level
from source.errors import ContractViolation

ALPHAS = (1.03125, 1.5, 2.0)


def _pairs(rng, count):
    for k in range(count):
        d = 2 + k % 3
        yield linalg.random_density(d, rng), linalg.random_density(d, rng)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_ordering_chain_on_random_pairs(rng, alpha):
    for rho, sigma in _pairs(rng, 200):
        chain = [
            dv.umegaki(rho, sigma),
            dv.sandwiched(rho, sigma, alpha),
            dv.petz(rho, sigma, alpha),
            dv.geometric_renyi(rho, sigma, alpha),
            dv.max_relative(rho, sigma),
        ]
        for lower, upper in zip(chain, chain[1:]):
            assert upper - lower >= -1e-8


def test_commuting_states_agree_with_classical_renyi():
    p = np.array([0.6, 0.3, 0.1])
    q = np.array([0.2, 0.5, 0.3])
    rho, sigma = np.diag(p), np.diag(q)
    for alpha in ALPHAS:
        classical = math.log2(np.sum(p ** alpha * q ** (1 - alpha))) / (alpha - 1)
        assert dv.geometric_renyi(rho, sigma, alpha) == pytest.approx(classical, abs=1e-10)
        assert dv.petz(rho, sigma, alpha) == pytest.approx(classical, abs=1e-10)
        assert dv.sandwiched(rho, sigma, alpha) == pytest.approx(classical, abs=1e-10)


def test_binary_renyi_matches_diagonal_states():
    rho, sigma = np.diag([0.7, 0.3]), np.diag([0.4, 0.6])
    assert dv.binary_renyi(0.7, 0.4, 1.5) == pytest.approx(dv.geometric_renyi(rho, sigma, 1.5), abs=1e-10)


def test_binary_renyi_support_violation():
    assert dv.binary_renyi(0.5, 0.0, 1.5) == math.inf


def test_support_violation_gives_infinity():
    rho = np.diag([0.5, 0.5])
    sigma = np.diag([1.0, 0.0])
    assert dv.geometric_renyi(rho, sigma, 1.5) == math.inf
    assert dv.max_relative(rho, sigma) == math.inf
    assert dv.umegaki(rho, sigma) == math.inf


def test_divergence_of_state_with_itself_is_zero(rng):
    rho = linalg.random_density(3, rng)
    assert dv.geometric_renyi(rho, rho, 1.5) == pytest.approx(0.0, abs=1e-9)
    assert dv.belavkin_staszewski(rho, rho) == pytest.approx(0.0, abs=1e-9)
    assert dv.trace_distance(rho, rho) == pytest.approx(0.0, abs=1e-12)


def test_geometric_approaches_belavkin_staszewski(rng):
    rho = linalg.random_density(3, rng)
    sigma = linalg.random_density(3, rng)
    bs = dv.belavkin_staszewski(rho, sigma)
    assert dv.geometric_renyi(rho, sigma, 1 + 1e-5) == pytest.approx(bs, abs=1e-3)
    assert bs >= dv.umegaki(rho, sigma) - 1e-8


def test_geometric_alpha_out_of_range():
    with pytest.raises(ContractViolation):
        dv.geometric_renyi(np.eye(2) / 2, np.eye(2) / 2, 2.5)


@pytest.mark.parametrize("level", [0, 1, 3, 5])
def test_sdp_matches_closed_form(solver, rng, level):
    alpha = alpha_of_level(level)
    for _ in range(5):
        rho = linalg.random_density(2, rng)
        sigma = linalg.random_density(2, rng)
        exact = dv.geometric_renyi(rho, sigma, alpha)
        assert dv.geometric_renyi_sdp(rho, sigma, level, solver) == pytest.approx(exact, abs=1e-5)


def test_sdp_support_violation(solver):
    assert dv.geometric_renyi_sdp(np.diag([0.5, 0.5]), np.diag([1.0, 0.0]), 2, solver) == math.inf


def test_geometric_is_monotone_in_alpha(rng):
    grid = (1.01, 1.1, 1.25, 1.5, 1.75, 2.0)
    for rho, sigma in _pairs(rng, 50):
        values = [dv.geometric_renyi(rho, sigma, a) for a in grid]
        for lower, upper in zip(values, values[1:]):
            assert upper - lower >= -1e-9


@pytest.mark.parametrize("alpha", ALPHAS)
def test_geometric_data_processing(rng, alpha):
    for _ in range(30):
        ch = channels.random_channel(2, 2, rng)
        rho = linalg.random_density(2, rng)
        sigma = linalg.random_density(2, rng)
        assert dv.geometric_renyi(ch(rho), ch(sigma), alpha) <= dv.geometric_renyi(rho, sigma, alpha) + 1e-8


def test_geometric_is_faithful(rng):
    for rho, sigma in _pairs(rng, 30):
        for alpha in ALPHAS:
            assert dv.geometric_renyi(rho, rho, alpha) == pytest.approx(0.0, abs=1e-9)
            assert dv.geometric_renyi(rho, sigma, alpha) > 0
