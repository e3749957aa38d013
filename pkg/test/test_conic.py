from types import SimpleNamespace

import cvxpy as cp
import numpy as np
import pytest

from source import linalg
from source.conic import (
    ConicProgram,
    alpha_of_level,
    create_backend,
    dump_program,
    embed,
    embedded_trace,
    geomean_epigraph,
    new_program,
    read_dump,
    real_trace,
    solve,
    unembed,
)
from source.conic.cvxpy_backend import CvxpyBackend, certificate_gap, classify
from source.conic.embedding import antisymmetry_residual
from source.divergences import geometric_trace
from source.errors import ContractViolation
from source.types import SolveReport, SolveStatus


def test_embed_roundtrip_and_trace(rng):
    H = linalg.random_hermitian(3, rng)
    E = embed(H)
    np.testing.assert_allclose(unembed(E), H, atol=1e-12)
    assert embedded_trace(E) == pytest.approx(np.trace(H).real)
    assert antisymmetry_residual(E) == pytest.approx(0.0, abs=1e-12)


def test_embedding_preserves_spectrum(rng):
    H = linalg.random_hermitian(3, rng)
    lam = np.sort(np.linalg.eigvalsh(H))
    doubled = np.sort(np.linalg.eigvalsh(embed(H)))
    np.testing.assert_allclose(doubled, np.sort(np.concatenate([lam, lam])), atol=1e-10)


def test_alpha_of_level():
    assert alpha_of_level(0) == 2.0
    assert alpha_of_level(3) == 1.125
    with pytest.raises(ContractViolation):
        alpha_of_level(-1)


def test_unknown_backend():
    with pytest.raises(ValueError, match="Supported: cvxpy"):
        create_backend("mosek-direct")


def test_unknown_complex_mode():
    with pytest.raises(ContractViolation):
        ConicProgram("p", complex_mode="quaternion")


def test_duplicate_variable_rejected():
    program = ConicProgram("p")
    program.hermitian("X", 2)
    with pytest.raises(ContractViolation):
        program.hermitian("X", 2)


def test_program_without_objective():
    with pytest.raises(ContractViolation):
        ConicProgram("p").problem()


def _epigraph_program(rho, sigma, level, settings):
    program = new_program(f"epigraph_l{level}", settings)
    M = program.hermitian("M", rho.shape[0])
    geomean_epigraph(program, rho, sigma, M, level, rho.shape[0])
    program.minimize(real_trace(M))
    return program


@pytest.mark.parametrize("level", [0, 1, 2, 4])
def test_epigraph_objective_matches_trace_of_mean(solver, rng, level):
    for _ in range(5):
        rho = linalg.random_density(3, rng)
        sigma = linalg.random_density(3, rng)
        report = solve(_epigraph_program(rho, sigma, level, solver), solver)
        assert report.status is SolveStatus.OPTIMAL
        assert report.objective == pytest.approx(geometric_trace(rho, sigma, alpha_of_level(level)), rel=1e-5, abs=1e-6)


def test_epigraph_block_count(settings):
    program = _epigraph_program(np.eye(2) / 2, np.eye(2) / 2, 3, settings)
    assert program.psd_blocks == 4


def test_embed_mode_agrees_with_native(solver, rng):
    rho = linalg.random_density(2, rng)
    sigma = linalg.random_density(2, rng)
    native = solve(_epigraph_program(rho, sigma, 2, solver), solver)
    embedded_settings = solver.updated(complex_mode="embed")
    program = _epigraph_program(rho, sigma, 2, embedded_settings)
    embedded = solve(program, embedded_settings)
    assert embedded.objective == pytest.approx(native.objective, abs=1e-6)
    assert embedded.antisymmetry_residual is not None
    assert embedded.antisymmetry_residual < 1e-6
    M = program.value("M")
    assert np.trace(M).real == pytest.approx(embedded.objective, abs=1e-6)


def test_infeasible_program_reported(solver):
    program = new_program("infeasible", solver)
    x = program.real("x")
    program.add(x >= 1, x <= 0)
    program.minimize(x)
    report = solve(program, solver)
    assert report.status is SolveStatus.INFEASIBLE
    assert not report.ok


def test_dump_roundtrip(solver, tmp_path):
    program = new_program("dumped", solver)
    X = program.hermitian("X", 2, psd=True)
    program.add(real_trace(X) == 1)
    program.minimize(cp.real(X[0, 0]))
    path = dump_program(program, tmp_path / "dumped.txt")
    data = read_dump(path)
    assert data["name"] == "dumped"
    assert data["sense"] == "min"
    assert data["cones"]["psd"]
    A, b, c = data["A"], data["b"], data["c"]
    assert A.shape[0] == b.size
    assert A.shape[1] == c.size


def test_dump_dir_setting_writes_programs(solver, tmp_path):
    settings = solver.updated(dump_dir=str(tmp_path))
    report = solve(_epigraph_program(np.eye(2) / 2, np.eye(2) / 2, 1, settings), settings)
    assert report.ok
    assert (tmp_path / "epigraph_l1.txt").exists()


def test_classify_judges_on_measured_gap():
    assert classify(cp.OPTIMAL_INACCURATE, 1e-9, 1e-9, 1e-6, 1e-7)[0] is SolveStatus.OPTIMAL
    status, message = classify(cp.OPTIMAL, 1e-3, 0.0, 1e-6, 1e-7)
    assert status is SolveStatus.INACCURATE
    assert "gap" in message
    assert classify(cp.OPTIMAL, None, 0.0, 1e-6, 1e-7)[0] is SolveStatus.INACCURATE
    assert classify(cp.OPTIMAL, 1e-9, 1e-3, 1e-6, 1e-7)[0] is SolveStatus.INACCURATE
    assert classify(cp.INFEASIBLE, None, 0.0, 1e-6, 1e-7)[0] is SolveStatus.INFEASIBLE
    assert classify(cp.UNBOUNDED_INACCURATE, None, 0.0, 1e-6, 1e-7)[0] is SolveStatus.UNBOUNDED


def test_certificate_gap_reads_both_result_layouts():
    data = {"c": np.array([1.0, 2.0]), "b": np.array([3.0])}
    scs_like = {"x": [1.0, 1.0], "y": [-1.0], "info": {"res_dual": 1e-9}}
    gap, dual_residual = certificate_gap(data, scs_like)
    assert gap == pytest.approx(0.0)
    assert dual_residual == pytest.approx(1e-9)
    clarabel_like = SimpleNamespace(x=[1.0, 1.0], z=[-0.9], r_dual=2e-9)
    gap, dual_residual = certificate_gap(data, clarabel_like)
    assert gap == pytest.approx(0.3 / (1 + 3.0 + 2.7))
    assert dual_residual == pytest.approx(2e-9)


def test_certificate_gap_missing_dual():
    data = {"c": np.array([1.0]), "b": np.array([1.0])}
    assert certificate_gap(data, {"x": [1.0]})[0] is None
    assert certificate_gap(data, SimpleNamespace(x=[1.0], z=[1.0, 2.0]))[0] is None


def test_solved_report_carries_gap(solver, rng):
    rho = linalg.random_density(2, rng)
    sigma = linalg.random_density(2, rng)
    report = solve(_epigraph_program(rho, sigma, 3, solver), solver)
    assert report.ok
    assert report.gap is not None
    assert report.gap <= solver.accept_gap


def _stub_attempts(monkeypatch, statuses):
    calls = []

    def attempt(self, problem, program, name):
        calls.append(name)
        return SolveReport(status=statuses[name], objective=1.0, solver=name, message=f"{name} finished")

    monkeypatch.setattr(CvxpyBackend, "available_solvers", lambda self: ["CLARABEL", "SCS"])
    monkeypatch.setattr(CvxpyBackend, "_attempt", attempt)
    return calls


def _scalar_program(settings):
    program = new_program("scalar", settings)
    x = program.real("x")
    program.add(x >= 1)
    program.minimize(x)
    return program


def test_inaccurate_result_is_retried_with_fallback(settings, monkeypatch):
    calls = _stub_attempts(monkeypatch, {"CLARABEL": SolveStatus.INACCURATE, "SCS": SolveStatus.OPTIMAL})
    report = CvxpyBackend(solver="CLARABEL", settings=settings).solve(_scalar_program(settings))
    assert calls == ["CLARABEL", "SCS"]
    assert report.ok
    assert report.solver == "SCS"


def test_both_solvers_inaccurate_keeps_first_report(settings, monkeypatch):
    calls = _stub_attempts(monkeypatch, {"CLARABEL": SolveStatus.INACCURATE, "SCS": SolveStatus.INACCURATE})
    report = CvxpyBackend(solver="CLARABEL", settings=settings).solve(_scalar_program(settings))
    assert calls == ["CLARABEL", "SCS"]
    assert report.status is SolveStatus.INACCURATE
    assert report.solver == "CLARABEL"
    assert "CLARABEL: CLARABEL finished" in report.message
    assert "SCS: SCS finished" in report.message


def test_optimal_first_solver_skips_fallback(settings, monkeypatch):
    calls = _stub_attempts(monkeypatch, {"CLARABEL": SolveStatus.OPTIMAL, "SCS": SolveStatus.OPTIMAL})
    assert CvxpyBackend(solver="CLARABEL", settings=settings).solve(_scalar_program(settings)).ok
    assert calls == ["CLARABEL"]
