"""Browsing and deleting stored sweep reports."""
import json
import textwrap
from datetime import datetime
from typing import List, Optional

import typer
from tabulate import tabulate

from quadsemi import settings
from quadsemi.cli.common import EXIT_CHECK_FAILED, fail
from quadsemi.storage import BaseReportStorage, make_storage

app = typer.Typer()


def _storage() -> BaseReportStorage:
    config = settings.get_report_storage_config()
    return make_storage(config['backend'], config['config'])


def _latest_report(storage: BaseReportStorage) -> str:
    buckets = storage.metadata['buckets']
    if not buckets:
        fail('no reports found', EXIT_CHECK_FAILED)
    return max(buckets, key=lambda k: buckets[k]['created_at'])


@app.command('list')
def list_reports() -> None:
    """List the stored sweep reports, newest first."""
    storage = _storage()
    metadata = storage.metadata['buckets']
    rows = sorted(((bucket_id, metadata[bucket_id]['created_at'], storage.num_records(bucket_id))
                   for bucket_id in storage.get_buckets()),
                  key=lambda row: row[1], reverse=True)
    typer.echo(tabulate([(b, _age_timestamp_to_str(t), n) for b, t, n in rows],
                        headers=['REPORT ID', 'CREATED', 'RECORDS'],
                        tablefmt='plain'))


@app.command('show')
def show_report(report_id: Optional[str] = typer.Argument(
        None, help='The report to show (default: the latest).')) -> None:
    """Show one row per field of a sweep report."""
    storage = _storage()
    report_id = report_id or _latest_report(storage)
    if not storage.bucket_exists(report_id):
        fail(f'report {report_id} does not exist', EXIT_CHECK_FAILED)

    rows = []
    for record in storage.get_records(report_id).values():
        rows.append((record['D'], record.get('s', '-'), record.get('ud_count', '-'),
                     record.get('bound_audit', '-'), record.get('reconstruct', '-'),
                     'ok' if record['ok'] else 'FAILED'))
    typer.echo(f'REPORT ID: {report_id}')
    typer.echo(tabulate(rows, headers=['D', 'S', 'UD', 'BOUNDS', 'RECONSTRUCT', 'STATUS'],
                        tablefmt='plain'))


@app.command('describe')
def describe_record(report_id: str, d: int) -> None:
    """Print the full record of one field in a report."""
    D = d  # click lowercases argument names
    storage = _storage()
    if not storage.bucket_exists(report_id) or not storage.record_exists(report_id, str(D)):
        fail(f'no record for D={D} in report {report_id}', EXIT_CHECK_FAILED)

    typer.echo(f'REPORT ID: {report_id}\nD: {D}\nDATA:')
    typer.echo(textwrap.indent(json.dumps(storage.get_record(report_id, str(D)), indent=4), '  '))


@app.command('delete')
def delete_report(report_id: str,
                  fields: Optional[List[int]] = typer.Argument(
                      None, help='Delete only the records of these D.'),
                  yes: bool = typer.Option(False, '--yes', '-y',
                                           help='Skip the confirmation prompt.')) -> None:
    """Delete a sweep report, or some of its records."""
    storage = _storage()
    if not storage.bucket_exists(report_id):
        fail(f'report {report_id} does not exist', EXIT_CHECK_FAILED)
    missing = [D for D in fields or [] if not storage.record_exists(report_id, str(D))]
    if missing:
        fail(f'no record for D={" ".join(map(str, missing))} in report {report_id}',
             EXIT_CHECK_FAILED)

    target = f'{len(fields)} records of report {report_id}' if fields else f'report {report_id}'
    if not yes and not typer.confirm(f'Delete {target}?'):
        raise typer.Exit(1)

    if fields:
        for D in fields:
            storage.delete_record(report_id, str(D))
    else:
        storage.delete_bucket(report_id)
    typer.echo(f'Deleted {target}.')


@app.command('clear')
def clear_reports(yes: bool = typer.Option(False, '--yes', '-y',
                                           help='Skip the confirmation prompt.')) -> None:
    """Delete every stored sweep report."""
    storage = _storage()
    count = len(storage.get_buckets())
    if count and not yes and not typer.confirm(f'Delete all {count} reports?'):
        raise typer.Exit(1)
    storage.delete_all_buckets()
    typer.echo(f'Deleted {count} reports.')


def _age_timestamp_to_str(timestamp: float, now: Optional[float] = None) -> str:
    """Describe how long ago timestamp was.

    Within a day this is 'X seconds ago', 'X minutes ago' or 'X hours ago';
    older timestamps are shown as 'YYYY-MM-DD'.

    Examples:
        >>> _age_timestamp_to_str(1000, now=1030)
        '30 seconds ago'
        >>> _age_timestamp_to_str(0, now=7200)
        '2 hours ago'
    """
    now = datetime.now().timestamp() if now is None else now
    seconds = int(now - timestamp)
    if seconds >= 86400:
        return datetime.fromtimestamp(timestamp).strftime('%Y-%m-%d')
    if seconds < 60:
        return f'{seconds} seconds ago'
    if seconds < 3600:
        return f'{seconds // 60} minutes ago'
    return f'{seconds // 3600} hours ago'
