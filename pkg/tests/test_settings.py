"""Test the :mod:`quadsemi.settings` module."""
import logging

import pytest
from pytest_mock import MockerFixture

from quadsemi import settings


def test_report_storage_defaults(monkeypatch: pytest.MonkeyPatch) -> None:
    """Without overrides reports go to ./reports as JSON lines."""
    monkeypatch.delenv('QUADSEMI_REPORT_BACKEND', raising=False)
    monkeypatch.delenv('QUADSEMI_REPORT_DIR', raising=False)
    assert settings.get_report_storage_config() == {
        'backend': 'jsonl',
        'config': {'root_dir': './reports'},
    }


def test_report_storage_from_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    """The backend and directory come from the environment."""
    monkeypatch.setenv('QUADSEMI_REPORT_DIR', '/tmp/sweeps')
    monkeypatch.setenv('QUADSEMI_REPORT_BACKEND', 'jsonl')
    assert settings.get_report_storage_config()['config'] == {'root_dir': '/tmp/sweeps'}

    monkeypatch.setenv('QUADSEMI_REPORT_BACKEND', 'dict')
    assert settings.get_report_storage_config() == {'backend': 'dict', 'config': {}}


@pytest.mark.parametrize('raw, expected', [('9', 9), ('1', 1), ('0', 4), ('x', 4)])
def test_radius(monkeypatch: pytest.MonkeyPatch, raw: str, expected: int) -> None:
    """Invalid values fall back to the default."""
    monkeypatch.setenv('QUADSEMI_RADIUS', raw)
    assert settings.get_radius() == expected


def test_invalid_value_is_logged(monkeypatch: pytest.MonkeyPatch,
                                 caplog: pytest.LogCaptureFixture) -> None:
    """A rejected value produces a warning naming the variable."""
    monkeypatch.setenv('QUADSEMI_REPETITIONS', '1')
    with caplog.at_level(logging.WARNING, logger='quadsemi.settings'):
        assert settings.get_repetitions() == 3
    assert 'QUADSEMI_REPETITIONS' in caplog.text


def test_escalations_may_be_zero(monkeypatch: pytest.MonkeyPatch) -> None:
    """Zero escalations means a single attempt."""
    monkeypatch.setenv('QUADSEMI_MAX_ESCALATIONS', '0')
    assert settings.get_max_escalations() == 0


def test_jobs_default_to_cpu_count(monkeypatch: pytest.MonkeyPatch,
                                   mocker: MockerFixture) -> None:
    """Without QUADSEMI_JOBS the sweep uses one worker per CPU."""
    monkeypatch.delenv('QUADSEMI_JOBS', raising=False)
    mocker.patch('quadsemi.settings.multiprocessing.cpu_count', return_value=6)
    assert settings.get_jobs() == 6
