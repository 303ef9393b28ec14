"""In-memory report storage."""
from typing import Iterator

from quadsemi.storage.base import BaseReportStorage, BucketNotFoundError


class DictReportStorage(BaseReportStorage):
    """Reports kept in a dictionary of dictionaries, lost when the process exits.

    Python dictionaries preserve insertion order, so records come back in
    the order they were written.
    """

    # Private Instance Attributes:
    #     _buckets: Maps bucket IDs to their records, keyed by record ID.
    _buckets: dict[str, dict[str, dict]]

    def __init__(self) -> None:
        self._buckets = {}
        super().__init__()

    def get_buckets(self) -> set[str]:
        return set(self._buckets) - self._reserved_bucket_ids

    def num_records(self, bucket_id: str) -> int:
        if not self.bucket_exists(bucket_id):
            raise BucketNotFoundError(bucket_id)
        return len(self._buckets[bucket_id])

    def bucket_exists(self, bucket_id: str) -> bool:
        return bucket_id in self._buckets

    def record_exists(self, bucket_id: str, record_id: str) -> bool:
        return record_id in self._buckets.get(bucket_id, {})

    def _bucket_create(self, bucket_id: str) -> None:
        self._buckets[bucket_id] = {}

    def _bucket_delete(self, bucket_id: str) -> None:
        del self._buckets[bucket_id]

    def _record_get(self, bucket_id: str, record_id: str) -> dict:
        return self._buckets[bucket_id][record_id]

    def _records_iter(self, bucket_id: str) -> Iterator[tuple[str, dict]]:
        yield from list(self._buckets[bucket_id].items())

    def _record_set(self, bucket_id: str, record_id: str, record: dict,
                    overwrite: bool = False) -> None:
        if overwrite or record_id not in self._buckets[bucket_id]:
            self._buckets[bucket_id][record_id] = record

    def _record_delete(self, bucket_id: str, record_id: str) -> None:
        del self._buckets[bucket_id][record_id]
