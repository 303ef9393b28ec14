"""Recovering a field from a scrambled copy of its semigroup."""
import time

import typer
from yaspin import Spinner, yaspin

from quadsemi.cli.common import (
    EXIT_CHECK_FAILED,
    emit,
    exit_codes,
    fail,
    get_options,
    key_value_table,
    load_field,
)
from quadsemi.field import FieldContext
from quadsemi.helpers.formatting import format_labels, to_ms
from quadsemi.reconstruction import run_reconstruction, scrambled_oracle


def reconstruction_data(field: FieldContext, seed: int, timings: bool = True) -> dict:
    """Hide field behind a scrambled oracle and recover D from it.

    Raises:
        ReconstructionError: If no period could be read off the chain.
        InvalidPeriodError: If the period does not belong to any field.
    """
    oracle = scrambled_oracle(field, seed)
    start = time.perf_counter()
    result = run_reconstruction(oracle)
    data = {
        'D': field.D,
        'seed': seed,
        'recovered': result.D,
        'period': list(result.period),
        'labels': result.chain.excerpt(),
        'radius': result.radius,
        'attempts': result.attempts,
        'oracle_calls': oracle.stats.as_dict(),
        'ok': result.D == field.D,
    }
    if timings:
        data['timings_ms'] = {'reconstruct': to_ms(time.perf_counter() - start)}
    return data


def reconstruct(ctx: typer.Context,
                d: int = typer.Argument(..., help='A squarefree integer >= 2.'),
                seed: int = typer.Option(0, '--seed', '-s',
                                         help='Seed for the handle numbering.')) -> None:
    """Recover D using nothing but the additive structure of its semigroup."""
    D = d  # click lowercases argument names
    options = get_options(ctx)
    field = load_field(D)

    with exit_codes():
        if options.json:
            data = reconstruction_data(field, seed, options.timings)
        else:
            with yaspin(Spinner('-\\|/', 150), timer=options.timings,
                        text=f'Reconstructing D={D} (seed {seed})...') as spinner:
                try:
                    data = reconstruction_data(field, seed, options.timings)
                except Exception:
                    spinner.fail('❌')
                    raise
                spinner.text = f"Recovered D = {data['recovered']}"
                if data['ok']:
                    spinner.ok('✅')
                else:
                    spinner.fail('❌')

    def render(d: dict) -> str:
        calls = ', '.join(f'{k}={v}' for k, v in d['oracle_calls'].items())
        return key_value_table([
            ('recovered', d['recovered']),
            ('period', ' '.join(str(u) for u in d['period'])),
            ('labels', format_labels(d['labels'])),
            ('radius', d['radius']),
            ('oracle calls', calls),
        ])

    emit(options, data, render)
    if not data['ok']:
        fail(f"recovered D={data['recovered']}, expected {D}", EXIT_CHECK_FAILED)
