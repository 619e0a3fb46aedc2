import pytest

from balloonlab.config import DEFAULT_BUDGET, Settings, load_settings

ENV_KEYS = ("BALLOONLAB_BUDGET", "BALLOONLAB_THREADS", "BALLOONLAB_LARGE_N", "BALLOONLAB_LOG_LEVEL")


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for key in ENV_KEYS:
        monkeypatch.delenv(key, raising=False)


def test_defaults(tmp_path):
    settings = load_settings(str(tmp_path / "missing.env"))
    assert settings == Settings()
    assert settings.budget == DEFAULT_BUDGET


def test_reads_environment(monkeypatch, tmp_path):
    monkeypatch.setenv("BALLOONLAB_THREADS", "4")
    monkeypatch.setenv("BALLOONLAB_LOG_LEVEL", "debug")
    settings = load_settings(str(tmp_path / "missing.env"))
    assert settings.threads == 4
    assert settings.log_level == "DEBUG"


def test_invalid_value_falls_back_per_key(monkeypatch, tmp_path):
    monkeypatch.setenv("BALLOONLAB_BUDGET", "-5")
    monkeypatch.setenv("BALLOONLAB_LARGE_N", "40")
    settings = load_settings(str(tmp_path / "missing.env"))
    assert settings.budget == DEFAULT_BUDGET
    assert settings.large_n == 40


def test_unknown_log_level(monkeypatch, tmp_path):
    monkeypatch.setenv("BALLOONLAB_LOG_LEVEL", "chatty")
    assert load_settings(str(tmp_path / "missing.env")).log_level == "INFO"


def test_env_file(monkeypatch, tmp_path):
    # registers the variable so the value loaded from the file is removed afterwards
    monkeypatch.setenv("BALLOONLAB_THREADS", "1")
    monkeypatch.delenv("BALLOONLAB_THREADS")
    env_file = tmp_path / ".env"
    env_file.write_text("BALLOONLAB_THREADS=3\n", encoding="utf-8")
    assert load_settings(str(env_file)).threads == 3
