"""
Tests for configuration loading and logging setup.
"""

import logging

import pytest

from src.settings import CONFIG_ENV, DEFAULTS, LOG_LEVEL_ENV, configure_logging, load_config


@pytest.fixture(autouse=True)
def clean_env(monkeypatch, tmp_path):
    monkeypatch.delenv(CONFIG_ENV, raising=False)
    monkeypatch.delenv(LOG_LEVEL_ENV, raising=False)
    monkeypatch.chdir(tmp_path)


def test_defaults_without_file():
    config = load_config()
    assert config['oracle']['max_degree'] == 8
    assert config['repair']['m_max'] == 6


def test_partial_file_is_merged(tmp_path):
    path = tmp_path / "custom.yaml"
    path.write_text("repair:\n  m_max: 2\noutput:\n  decimal_digits: 4\n")
    config = load_config(str(path))
    assert config['repair']['m_max'] == 2
    assert config['output']['decimal_digits'] == 4
    assert config['output']['default_format'] == 'oneline'
    assert DEFAULTS['repair']['m_max'] == 6


def test_env_names_config_file(tmp_path, monkeypatch):
    path = tmp_path / "env.yaml"
    path.write_text("oracle:\n  max_degree: 6\n")
    monkeypatch.setenv(CONFIG_ENV, str(path))
    assert load_config()['oracle']['max_degree'] == 6


def test_dotenv_file_is_read(tmp_path, monkeypatch):
    (tmp_path / ".env.local").write_text(f"{LOG_LEVEL_ENV}=DEBUG\n")
    monkeypatch.setenv(LOG_LEVEL_ENV, "unset")
    monkeypatch.delenv(LOG_LEVEL_ENV)
    assert load_config()['logging']['level'] == 'DEBUG'


def test_missing_explicit_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_config(str(tmp_path / "absent.yaml"))


def test_non_mapping_yaml(tmp_path):
    path = tmp_path / "list.yaml"
    path.write_text("- 1\n- 2\n")
    with pytest.raises(ValueError):
        load_config(str(path))


def test_configure_logging_levels():
    configure_logging(DEFAULTS, 'debug')
    assert logging.getLogger().level == logging.DEBUG
    configure_logging(DEFAULTS)
    assert logging.getLogger().level == logging.WARNING
    with pytest.raises(ValueError):
        configure_logging(DEFAULTS, 'chatty')
