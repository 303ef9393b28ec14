"""Batch runs of every check over a range of fields."""
import logging
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from pathlib import Path
from typing import Optional

import typer
from tqdm import tqdm
from tqdm.contrib.logging import logging_redirect_tqdm

from quadsemi import settings
from quadsemi.cli.common import EXIT_CHECK_FAILED, EXIT_USAGE, emit, fail, get_options, \
    key_value_table, pass_fail
from quadsemi.cli.fields import field_summary, norm_audit_data
from quadsemi.cli.reconstruct import reconstruction_data
from quadsemi.decomposition import count_ud_mod_units, enumerate_decompositions, \
    ud_representatives
from quadsemi.field import is_squarefree, make_context
from quadsemi.helpers.formatting import to_ms
from quadsemi.storage import make_storage

logger = logging.getLogger(__name__)


def sweep_one(D: int, seed: int = 0, max_ef: int = 10, max_i: int = 9,
              timings: bool = True) -> dict:
    """Run every check for one field and return its report record.

    Any exception is captured in the record rather than raised, so one
    failing field never aborts a sweep.
    """
    record: dict = {'D': D}
    elapsed: dict[str, int] = {}
    try:
        field = make_context(D)

        start = time.perf_counter()
        summary = field_summary(field)
        record.update({key: summary[key] for key in ('s', 'u', 'epsilon', 'epsilon_plus')})
        elapsed['cf'] = to_ms(time.perf_counter() - start)

        start = time.perf_counter()
        record['ud_count'] = count_ud_mod_units(field)
        representatives = ud_representatives(field)
        record['ud_count_verified'] = len(representatives) == record['ud_count'] and all(
            len(enumerate_decompositions(field, x, 2)) == 1 for x in representatives)
        elapsed['count_ud'] = to_ms(time.perf_counter() - start)

        start = time.perf_counter()
        record['bound_audit'] = pass_fail(norm_audit_data(field, max_ef, max_i)['ok'])
        elapsed['norm_audit'] = to_ms(time.perf_counter() - start)

        start = time.perf_counter()
        reconstruction = reconstruction_data(field, seed, timings=False)
        record['recovered'] = reconstruction['recovered']
        record['reconstruct'] = pass_fail(reconstruction['ok'])
        elapsed['reconstruct'] = to_ms(time.perf_counter() - start)
    except Exception as e:  # pylint: disable=broad-except
        logger.error(f'Sweep failed for D={D}: {type(e).__name__}: {e}')
        record['error'] = f'{type(e).__name__}: {e}'

    record['ok'] = 'error' not in record and record['ud_count_verified'] \
        and record['bound_audit'] == 'pass' and record['reconstruct'] == 'pass'
    if timings:
        record['timings_ms'] = elapsed
    return record


def report_id(start: int, stop: int, seed: int, max_ef: int, max_i: int) -> str:
    """Return the report ID of a sweep; equal arguments give equal IDs.

    Examples:
        >>> report_id(2, 50, 0, 10, 9)
        'sweep-2-50-seed0-ef10-i9'
    """
    return f'sweep-{start}-{stop}-seed{seed}-ef{max_ef}-i{max_i}'


def _run_all(fields: list[int], jobs: int, seed: int, max_ef: int, max_i: int,
             timings: bool, quiet: bool) -> dict[int, dict]:
    """Run sweep_one for every D, across jobs worker processes when jobs > 1."""
    records = {}
    with logging_redirect_tqdm(), \
            tqdm(total=len(fields), desc='Sweeping', ncols=80, disable=quiet) as pbar:
        if jobs <= 1:
            for D in fields:
                records[D] = sweep_one(D, seed, max_ef, max_i, timings)
                pbar.update(1)
        else:
            with ProcessPoolExecutor(max_workers=jobs) as executor:
                futures = {executor.submit(sweep_one, D, seed, max_ef, max_i, timings): D
                           for D in fields}
                for future in as_completed(futures):
                    records[futures[future]] = future.result()
                    pbar.update(1)
    return records


def sweep(ctx: typer.Context,
          start: int = typer.Option(2, '--from', help='The first D of the range.'),
          stop: int = typer.Option(50, '--to', help='The last D of the range (inclusive).'),
          jobs: Optional[int] = typer.Option(None, '--jobs', '-j',
                                             help='Worker processes (default: QUADSEMI_JOBS '
                                                  'or the CPU count).'),
          out: Optional[Path] = typer.Option(None, '--out', '-o',
                                             help='Also write the records to this '
                                                  'JSON-lines file.'),
          seed: int = typer.Option(0, '--seed', help='Seed for the reconstruction oracles.'),
          max_ef: int = typer.Option(10, '--max-ef', help='Bound on e + f in the norm audit.'),
          max_i: int = typer.Option(9, '--max-i', help='Largest block index in the norm audit.')
          ) -> None:
    """Run cf, count-ud, norm-audit and reconstruct for every squarefree D in a range."""
    options = get_options(ctx)
    if not 2 <= start <= stop:
        fail(f'need 2 <= --from <= --to, got {start} and {stop}', EXIT_USAGE)
    if max_ef < 1 or max_i < 1:
        fail('--max-ef and --max-i must be positive', EXIT_USAGE)
    jobs = settings.get_jobs() if jobs is None else max(1, jobs)

    fields = [D for D in range(start, stop + 1) if is_squarefree(D)]
    skipped = [D for D in range(start, stop + 1) if not is_squarefree(D)]
    logger.info(f'Sweeping {len(fields)} fields in [{start}, {stop}] with {jobs} jobs')

    records = _run_all(fields, jobs, seed, max_ef, max_i, options.timings, quiet=options.json)

    config = settings.get_report_storage_config()
    storage = make_storage(config['backend'], config['config'])
    bucket_id = report_id(start, stop, seed, max_ef, max_i)
    if storage.bucket_exists(bucket_id):
        logger.info(f'Replacing report {bucket_id}')
        storage.delete_bucket(bucket_id)
    storage.create_bucket(bucket_id)
    for D in fields:
        storage.set_record(bucket_id, str(D), records[D])
    if out is not None:
        storage.export_jsonl(bucket_id, out)

    failed = [D for D in fields if not records[D]['ok']]
    data = {
        'from': start,
        'to': stop,
        'report': bucket_id,
        'records': len(fields),
        'skipped': skipped,
        'failed': failed,
        'ok': not failed,
    }
    logger.info(f'Sweep finished: {len(fields)} records, {len(failed)} failed')

    emit(options, data, lambda d: key_value_table([
        ('report', d['report']),
        ('records', d['records']),
        ('skipped', ' '.join(str(D) for D in d['skipped']) or '-'),
        ('failed', ' '.join(str(D) for D in d['failed']) or '-'),
    ]))
    if failed:
        raise typer.Exit(EXIT_CHECK_FAILED)
