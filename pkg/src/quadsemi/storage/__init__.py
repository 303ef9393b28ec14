"""Sweep report storage backends."""
import logging

from quadsemi.storage.base import BaseReportStorage
from quadsemi.storage.disk import JsonLinesReportStorage
from quadsemi.storage.in_memory import DictReportStorage

logger = logging.getLogger(__name__)

__all__ = [
    'BACKENDS',
    'BaseReportStorage',
    'DictReportStorage',
    'JsonLinesReportStorage',
    'make_storage',
]


BACKENDS = {
    'dict': DictReportStorage,
    'jsonl': JsonLinesReportStorage,
}


def make_storage(backend: str, config: dict) -> BaseReportStorage:
    """Instantiate the named backend with the given constructor options.

    An unknown backend name falls back to the in-memory `dict` backend.
    """
    if backend not in BACKENDS:
        logger.warning(f'Unknown report storage backend: {backend!r}. Falling back to "dict".')
        return DictReportStorage()

    storage = BACKENDS[backend](**config)
    logger.info(f'Initialized report storage backend: {backend}')
    return storage
