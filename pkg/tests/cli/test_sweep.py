"""Test the `sweep` and `reports` commands."""
import json
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import pytest
from pytest_mock import MockerFixture
from typer.testing import CliRunner

from quadsemi.cli import app
from quadsemi.cli.common import EXIT_CHECK_FAILED, EXIT_USAGE
from quadsemi.cli.sweep import sweep_one

runner = CliRunner()

FAST = ['--max-ef', '4', '--max-i', '3']


@pytest.fixture
def report_dir(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    """Store reports as JSON lines under a temporary directory."""
    monkeypatch.setenv('QUADSEMI_REPORT_BACKEND', 'jsonl')
    monkeypatch.setenv('QUADSEMI_REPORT_DIR', str(tmp_path / 'reports'))
    return tmp_path / 'reports'


@pytest.fixture
def memory_reports(monkeypatch: pytest.MonkeyPatch) -> None:
    """Keep reports in memory for the duration of one invocation."""
    monkeypatch.setenv('QUADSEMI_REPORT_BACKEND', 'dict')


def run_sweep(*args: str) -> dict:
    """Run a JSON-mode sweep with one job and return the summary."""
    result = runner.invoke(app, ['--json', '--no-timings', 'sweep', '--jobs', '1', *FAST, *args])
    assert result.exit_code == 0, result.output
    return json.loads(result.stdout)


class TestSweepOne:
    """Test :func:`quadsemi.cli.sweep.sweep_one`."""

    def test_record(self) -> None:
        """A record carries the period, the counts and the check results."""
        record = sweep_one(3, max_ef=4, max_i=3, timings=False)
        assert record == {
            'D': 3,
            's': 2,
            'u': [2, 1],
            'epsilon': {'a': 2, 'b': 1, 'text': '2+√3'},
            'epsilon_plus': {'a': 2, 'b': 1, 'text': '2+√3'},
            'ud_count': 11,
            'ud_count_verified': True,
            'bound_audit': 'pass',
            'recovered': 3,
            'reconstruct': 'pass',
            'ok': True,
        }

    def test_timings(self) -> None:
        """Each stage is timed in whole milliseconds."""
        record = sweep_one(2, max_ef=4, max_i=3)
        assert set(record['timings_ms']) == {'cf', 'count_ud', 'norm_audit', 'reconstruct'}

    def test_error_is_captured(self, mocker: MockerFixture) -> None:
        """A library error ends up in the record instead of propagating."""
        from quadsemi.errors import ChainTopologyError
        mocker.patch('quadsemi.cli.sweep.reconstruction_data',
                     side_effect=ChainTopologyError('not a path'))
        record = sweep_one(2, max_ef=4, max_i=3, timings=False)
        assert not record['ok']
        assert record['error'] == 'ChainTopologyError: not a path'

    def test_unexpected_error_is_captured(self, mocker: MockerFixture) -> None:
        """Errors from outside the library are recorded the same way."""
        mocker.patch('quadsemi.cli.sweep.reconstruction_data',
                     side_effect=ZeroDivisionError('division by zero'))
        record = sweep_one(2, max_ef=4, max_i=3, timings=False)
        assert not record['ok']
        assert record['error'] == 'ZeroDivisionError: division by zero'


@pytest.mark.usefixtures('memory_reports')
class TestSweep:
    """Test the `sweep` command."""

    def test_small_range(self) -> None:
        """Squarefree D are swept and the others are skipped."""
        data = run_sweep('--from', '2', '--to', '5')
        assert data['records'] == 3
        assert data['skipped'] == [4]
        assert data['failed'] == []
        assert data['ok']

    def test_nothing_squarefree(self) -> None:
        """A range without squarefree D gives an empty report."""
        data = run_sweep('--from', '48', '--to', '50')
        assert data['records'] == 0
        assert data['skipped'] == [48, 49, 50]
        assert data['ok']

    @pytest.mark.parametrize('bounds', [['--from', '5', '--to', '3'], ['--from', '1']])
    def test_bad_range(self, bounds: list) -> None:
        """The range must start at 2 or later and not be empty."""
        result = runner.invoke(app, ['--json', 'sweep', '--jobs', '1', *bounds])
        assert result.exit_code == EXIT_USAGE

    def test_out_file(self, tmp_path: Path) -> None:
        """--out writes one record per line in increasing D."""
        out = tmp_path / 'sweep.jsonl'
        run_sweep('--from', '2', '--to', '5', '--out', str(out))
        records = [json.loads(line) for line in out.read_text(encoding='utf-8').splitlines()]
        assert [record['D'] for record in records] == [2, 3, 5]
        assert all(record['ok'] for record in records)

    def test_parallel(self, mocker: MockerFixture) -> None:
        """With several jobs the records go through the executor and keep their order."""
        mocker.patch('quadsemi.cli.sweep.ProcessPoolExecutor', ThreadPoolExecutor)
        data = run_sweep('--from', '2', '--to', '7', '--jobs', '3')
        assert data['records'] == 5
        assert data['ok']

    def test_failed_record_sets_exit_code(self, mocker: MockerFixture) -> None:
        """A failing field makes the whole sweep exit with code 1."""
        mocker.patch('quadsemi.cli.sweep.sweep_one',
                     side_effect=lambda D, *args: {'D': D, 'ok': D != 3})
        result = runner.invoke(app, ['--json', 'sweep', '--jobs', '1', '--from', '2',
                                     '--to', '3'])
        assert result.exit_code == EXIT_CHECK_FAILED
        assert '"failed": [3]' in result.stdout

    def test_worker_error_does_not_abort(self, mocker: MockerFixture) -> None:
        """A field whose checks raise is reported as failed and the rest still run."""
        mocker.patch('quadsemi.cli.sweep.ProcessPoolExecutor', ThreadPoolExecutor)
        mocker.patch('quadsemi.cli.sweep.reconstruction_data',
                     side_effect=RuntimeError('worker crashed'))
        result = runner.invoke(app, ['--json', '--no-timings', 'sweep', '--jobs', '2', *FAST,
                                     '--from', '2', '--to', '3'])
        assert result.exit_code == EXIT_CHECK_FAILED
        assert '"records": 2' in result.stdout
        assert '"failed": [2, 3]' in result.stdout

    def test_output_is_reproducible(self) -> None:
        """Two identical sweeps print identical JSON."""
        args = ['--json', '--no-timings', 'sweep', '--jobs', '1', *FAST, '--from', '2',
                '--to', '3', '--seed', '5']
        first = runner.invoke(app, args)
        second = runner.invoke(app, args)
        assert first.exit_code == second.exit_code == 0
        assert first.stdout == second.stdout
        assert json.loads(first.stdout)['report'] == 'sweep-2-3-seed5-ef4-i3'

    @pytest.mark.slow
    def test_default_range(self) -> None:
        """The default range holds 30 squarefree fields and all of them pass."""
        result = runner.invoke(app, ['--json', '--no-timings', 'sweep', '--jobs', '1'])
        assert result.exit_code == 0, result.output
        data = json.loads(result.stdout)
        assert data['records'] == 30
        assert data['ok']


class TestReports:
    """Test the `reports` commands against a JSON-lines store."""

    @pytest.fixture
    def report_id(self, report_dir: Path) -> str:
        """Run a short sweep and return the ID of its report."""
        return run_sweep('--from', '2', '--to', '3')['report']

    def test_list(self, report_id: str) -> None:
        """The report is listed with its record count."""
        result = runner.invoke(app, ['reports', 'list'])
        assert result.exit_code == 0
        assert 'REPORT ID' in result.stdout
        assert report_id in result.stdout
        assert 'seconds ago' in result.stdout

    def test_show_latest(self, report_id: str) -> None:
        """Without an argument the latest report is shown."""
        result = runner.invoke(app, ['reports', 'show'])
        assert result.exit_code == 0
        assert f'REPORT ID: {report_id}' in result.stdout
        assert 'RECONSTRUCT' in result.stdout

    def test_describe(self, report_id: str) -> None:
        """The full record of one field is printed as JSON."""
        result = runner.invoke(app, ['reports', 'describe', report_id, '2'])
        assert result.exit_code == 0
        assert '"ud_count": 8' in result.stdout

    def test_describe_missing(self, report_id: str) -> None:
        """Fields outside the report are an error."""
        result = runner.invoke(app, ['reports', 'describe', report_id, '4'])
        assert result.exit_code == EXIT_CHECK_FAILED

    def test_rerun_replaces_report(self, report_id: str) -> None:
        """Sweeping the same arguments again keeps a single report."""
        assert run_sweep('--from', '2', '--to', '3')['report'] == report_id
        result = runner.invoke(app, ['reports', 'list'])
        assert result.stdout.count(report_id) == 1

    def test_delete_records(self, report_id: str) -> None:
        """Deleting some D keeps the rest of the report."""
        result = runner.invoke(app, ['reports', 'delete', report_id, '2', '--yes'])
        assert result.exit_code == 0, result.output
        result = runner.invoke(app, ['reports', 'describe', report_id, '2'])
        assert result.exit_code == EXIT_CHECK_FAILED
        result = runner.invoke(app, ['reports', 'describe', report_id, '3'])
        assert result.exit_code == 0

    def test_delete_missing_record(self, report_id: str) -> None:
        """Fields outside the report cannot be deleted."""
        result = runner.invoke(app, ['reports', 'delete', report_id, '7', '--yes'])
        assert result.exit_code == EXIT_CHECK_FAILED

    def test_delete_report(self, report_id: str) -> None:
        """After confirmation the report is gone."""
        result = runner.invoke(app, ['reports', 'delete', report_id], input='y\n')
        assert result.exit_code == 0, result.output
        assert f'Deleted report {report_id}.' in result.stdout
        result = runner.invoke(app, ['reports', 'show', report_id])
        assert result.exit_code == EXIT_CHECK_FAILED

    def test_delete_declined(self, report_id: str) -> None:
        """Declining the prompt keeps the report."""
        result = runner.invoke(app, ['reports', 'delete', report_id], input='n\n')
        assert result.exit_code == 1
        result = runner.invoke(app, ['reports', 'show', report_id])
        assert result.exit_code == 0

    def test_clear(self, report_id: str) -> None:
        """Every report is deleted."""
        run_sweep('--from', '5', '--to', '5')
        result = runner.invoke(app, ['reports', 'clear', '--yes'])
        assert result.exit_code == 0
        assert 'Deleted 2 reports.' in result.stdout
        result = runner.invoke(app, ['reports', 'list'])
        assert report_id not in result.stdout

    @pytest.mark.usefixtures('report_dir')
    def test_show_without_reports(self) -> None:
        """An empty store has no latest report."""
        result = runner.invoke(app, ['reports', 'show'])
        assert result.exit_code == EXIT_CHECK_FAILED
