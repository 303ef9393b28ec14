"""Options, output and exit codes shared by every command."""
import json
import logging
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

import typer
from tabulate import tabulate

from quadsemi.errors import (
    EngineInvariantError,
    IndexRangeError,
    InvalidFieldError,
    InvalidPeriodError,
    NotTotallyPositiveError,
    ReconstructionError,
)
from quadsemi.field import FieldContext, make_context

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NOT_TOTALLY_POSITIVE = 3


@dataclass
class CliOptions:
    """Global flags, stored on the click context by the main callback.

    Instance Attributes:
        json: Print one JSON document instead of text.
        timings: Include wall-clock timings in the output.
    """

    json: bool = False
    timings: bool = True


def get_options(ctx: Optional[typer.Context]) -> CliOptions:
    """Return the global options, or the defaults outside of a CLI run."""
    if ctx is not None and isinstance(ctx.obj, CliOptions):
        return ctx.obj
    return CliOptions()


def fail(message: str, code: int) -> None:
    """Print message to stderr and exit with code."""
    typer.echo(f'Error: {message}', err=True)
    raise typer.Exit(code)


@contextmanager
def exit_codes() -> Iterator[None]:
    """Translate library errors raised inside the block into exit codes."""
    try:
        yield
    except (InvalidFieldError, IndexRangeError, InvalidPeriodError) as e:
        fail(str(e), EXIT_USAGE)
    except NotTotallyPositiveError as e:
        fail(str(e), EXIT_NOT_TOTALLY_POSITIVE)
    except (EngineInvariantError, ReconstructionError) as e:
        logger.error(f'{type(e).__name__}: {e}')
        fail(str(e), EXIT_CHECK_FAILED)


def load_field(D: int) -> FieldContext:
    """Return the context for D, exiting with a usage error if D is invalid."""
    with exit_codes():
        return make_context(D)


def emit(options: CliOptions, data: dict, render: Callable[[dict], str]) -> None:
    """Print data as sorted JSON, or as the text produced by render."""
    if options.json:
        typer.echo(json.dumps(data, sort_keys=True))
    else:
        typer.echo(render(data))


def key_value_table(rows: list[tuple[str, object]]) -> str:
    """Render (key, value) pairs as a borderless two-column table."""
    return tabulate([(key.upper(), value) for key, value in rows], tablefmt='plain')


def pass_fail(ok: bool) -> str:
    """Return 'pass' or 'fail'."""
    return 'pass' if ok else 'fail'
