from pathlib import Path

import pytest

from source.config import Settings, get_settings, load_settings, read_config_file, set_settings
from source.errors import ConfigError


def test_defaults():
    s = load_settings(environ={})
    assert s == Settings()
    assert s.solver == "CLARABEL"
    assert s.sweep_level == 3 and s.figure_level == 10


def test_environment_overrides():
    s = load_settings(environ={"GEOBOUNDS_SOLVER": "scs", "GEOBOUNDS_WORKERS": "4", "GEOBOUNDS_FEAS_TOL": "1e-6"})
    assert s.solver == "SCS"
    assert s.workers == 4
    assert s.feasibility_tol == 1e-6


def test_config_file_then_environment(tmp_path):
    path = tmp_path / "solver.ini"
    path.write_text("# sample\nsolver=SCS\nworkers=2  # inline\n\ncomplex_mode=embed\n", encoding="utf-8")
    assert read_config_file(path)["workers"] == 2
    s = load_settings(path, environ={"GEOBOUNDS_WORKERS": "3"})
    assert s.solver == "SCS"
    assert s.complex_mode == "embed"
    assert s.workers == 3


def test_config_path_from_environment(tmp_path):
    path = tmp_path / "solver.ini"
    path.write_text("sweep_level=5\n", encoding="utf-8")
    assert load_settings(environ={"GEOBOUNDS_CONFIG": str(path)}).sweep_level == 5


@pytest.mark.parametrize(
    "text",
    ["colour=blue\n", "workers=many\n", "just a line\n", "complex_mode=quaternion\n", "workers=0\n"],
)
def test_bad_config_rejected(tmp_path, text):
    path = tmp_path / "bad.ini"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(ConfigError):
        load_settings(path, environ={})


def test_updated_validates():
    s = Settings().updated(workers="2", complex_mode="embed")
    assert s.workers == 2
    with pytest.raises(ConfigError):
        Settings().updated(feasibility_tol=-1)


def test_process_settings_roundtrip():
    custom = Settings(workers=5)
    set_settings(custom)
    try:
        assert get_settings() is custom
    finally:
        set_settings(None)


def test_sample_config_file_loads():
    s = load_settings(Path(__file__).resolve().parent.parent / "ci" / "solver-config.ini", environ={})
    assert s == Settings()
