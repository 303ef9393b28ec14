"""Settings read from the environment (and from a .env file, if present)."""
import logging
import multiprocessing
import os

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

load_dotenv()


def _get_int(name: str, default: int, minimum: int = 1) -> int:
    """Return the integer environment variable `name`, or default if unset or invalid.

    Examples:
        >>> _get_int('QUADSEMI_SURELY_UNSET_VARIABLE', 4)
        4
    """
    raw = os.getenv(name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f'Ignoring {name}={raw!r}: not an integer. Using {default}.')
        return default
    if value < minimum:
        logger.warning(f'Ignoring {name}={value}: must be at least {minimum}. '
                       f'Using {default}.')
        return default
    return value


def get_report_storage_config(default_backend: str = 'jsonl') -> dict:
    """Return the sweep report storage configuration.

    The backend is chosen by the `QUADSEMI_REPORT_BACKEND` environment
    variable, falling back to the given default. It should be one of the
    keys of :var:`quadsemi.storage.BACKENDS`. The `jsonl` backend writes to
    the directory named by `QUADSEMI_REPORT_DIR` (default `./reports`); the
    `dict` backend takes no options.

    Returns:
        A dictionary with two keys: 'backend', the name of the backend, and
        'config', the keyword arguments for its constructor.
    """
    backend = os.getenv('QUADSEMI_REPORT_BACKEND', default_backend)
    config = {}
    if backend == 'jsonl':
        config['root_dir'] = os.getenv('QUADSEMI_REPORT_DIR', './reports')

    return {'backend': backend, 'config': config}


def get_jobs() -> int:
    """Return the default number of sweep workers (`QUADSEMI_JOBS`, else the CPU count)."""
    return _get_int('QUADSEMI_JOBS', multiprocessing.cpu_count())


def get_radius() -> int:
    """Return the initial chain radius for reconstruction (`QUADSEMI_RADIUS`)."""
    return _get_int('QUADSEMI_RADIUS', 4)


def get_max_escalations() -> int:
    """Return how often reconstruction may double its radius (`QUADSEMI_MAX_ESCALATIONS`)."""
    return _get_int('QUADSEMI_MAX_ESCALATIONS', 6, minimum=0)


def get_repetitions() -> int:
    """Return how often a period must repeat to be accepted (`QUADSEMI_REPETITIONS`)."""
    return _get_int('QUADSEMI_REPETITIONS', 3, minimum=2)
