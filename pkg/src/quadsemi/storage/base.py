"""Base interface for sweep report storage backends.

A report is organized in buckets, one per sweep run, each holding one JSON
object per field keyed by `str(D)`.
"""
import json
import time
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Iterator, Optional, Union


class RecordNotFoundError(KeyError):
    """Raised when a report record is missing from its bucket."""

    def __init__(self, bucket_id: str, record_id: str) -> None:
        super().__init__(f'Record {record_id} not found in report {bucket_id}')


class BucketNotFoundError(KeyError):
    """Raised when a report bucket does not exist."""

    def __init__(self, bucket_id: str) -> None:
        super().__init__(f'Report {bucket_id} not found')


class BucketExistsError(ValueError):
    """Raised when creating a report bucket that already exists."""

    def __init__(self, bucket_id: str) -> None:
        super().__init__(f'Report {bucket_id} already exists')


class BucketReservedError(ValueError):
    """Raised when an operation targets the reserved metadata bucket.

    The operation name is shown in upper case, e.g. "Cannot DELETE ...".
    """

    def __init__(self, bucket_id: str, operation: str) -> None:
        super().__init__(f'Cannot {operation.upper()} reserved report {bucket_id}')


class RecordExistsError(ValueError):
    """Raised when writing a record that exists without asking to overwrite it."""

    def __init__(self, bucket_id: str, record_id: str) -> None:
        super().__init__(f'Record {record_id} already exists in report {bucket_id}')


class BaseReportStorage(ABC):
    """The base class for all sweep report storage backends.

    Subclasses implement the public queries `get_buckets`, `num_records`,
    `bucket_exists` and `record_exists`, and the protected primitives
    `_bucket_create`, `_bucket_delete`, `_record_get`, `_records_iter`,
    `_record_set` and `_record_delete`. The primitives may
    assume that every existence check has already been made; the public
    methods of this class make them and raise the typed errors above.

    Records must be JSON-serializable dictionaries. `_records_iter` yields
    records in insertion order.
    """

    # Private Class Attributes:
    #   - _METADATA_BUCKET_ID: The reserved bucket holding the creation time
    #       of every other bucket. It is never exposed through the public
    #       bucket operations.
    _METADATA_BUCKET_ID = '__metadata__'

    _reserved_bucket_ids = {_METADATA_BUCKET_ID}

    def __init__(self) -> None:
        """Initialize the backend, creating the metadata bucket if needed."""
        super().__init__()
        if not self.bucket_exists(self._METADATA_BUCKET_ID):
            self._bucket_create(self._METADATA_BUCKET_ID)
            self._record_set(self._METADATA_BUCKET_ID, 'buckets', {})

    def _check_bucket(self, bucket_id: str, operation: str) -> None:
        if bucket_id in self._reserved_bucket_ids:
            raise BucketReservedError(bucket_id, operation)
        if not self.bucket_exists(bucket_id):
            raise BucketNotFoundError(bucket_id)

    def _update_bucket_metadata(self, bucket_id: str, entry: Optional[dict]) -> None:
        buckets = dict(self._record_get(self._METADATA_BUCKET_ID, 'buckets'))
        if entry is None:
            buckets.pop(bucket_id, None)
        else:
            buckets[bucket_id] = entry
        self._record_set(self._METADATA_BUCKET_ID, 'buckets', buckets, overwrite=True)

    def create_bucket(self, bucket_id: str) -> str:
        """Create an empty report bucket and return its ID.

        Raises:
            BucketReservedError: If the ID is reserved.
            BucketExistsError: If the bucket already exists.
        """
        if bucket_id in self._reserved_bucket_ids:
            raise BucketReservedError(bucket_id, 'create')
        if self.bucket_exists(bucket_id):
            raise BucketExistsError(bucket_id)

        self._bucket_create(bucket_id)
        self._update_bucket_metadata(bucket_id, {'id': bucket_id, 'created_at': time.time()})
        return bucket_id

    def delete_bucket(self, bucket_id: str) -> None:
        """Delete a report bucket and all of its records.

        Raises:
            BucketReservedError: If the bucket is reserved.
            BucketNotFoundError: If the bucket does not exist.
        """
        self._check_bucket(bucket_id, 'delete')
        self._bucket_delete(bucket_id)
        self._update_bucket_metadata(bucket_id, None)

    def delete_all_buckets(self) -> None:
        """Delete every report bucket."""
        for bucket_id in self.get_buckets():
            self.delete_bucket(bucket_id)

    def get_record(self, bucket_id: str, record_id: str) -> dict:
        """Return one record.

        Raises:
            BucketReservedError: If the bucket is reserved.
            BucketNotFoundError: If the bucket does not exist.
            RecordNotFoundError: If the record does not exist.
        """
        self._check_bucket(bucket_id, 'get')
        if not self.record_exists(bucket_id, record_id):
            raise RecordNotFoundError(bucket_id, record_id)
        return self._record_get(bucket_id, record_id)

    def records_iter(self, bucket_id: str) -> Iterator[tuple[str, dict]]:
        """Yield (record_id, record) pairs in insertion order."""
        self._check_bucket(bucket_id, 'iterate')
        yield from self._records_iter(bucket_id)

    def get_records(self, bucket_id: str) -> dict[str, dict]:
        """Return all records of a bucket keyed by record ID, in insertion order."""
        return dict(self.records_iter(bucket_id))

    def set_record(self, bucket_id: str, record_id: str, record: dict,
                   overwrite: bool = False, auto_create: bool = False) -> None:
        """Store a record.

        Args:
            bucket_id: The report bucket.
            record_id: The record key, `str(D)` for sweep records.
            record: A JSON-serializable dictionary.
            overwrite: Whether to replace an existing record.
            auto_create: Whether to create the bucket if it does not exist.

        Raises:
            BucketReservedError: If the bucket is reserved.
            BucketNotFoundError: If the bucket does not exist and
                `auto_create` is False.
            RecordExistsError: If the record exists and `overwrite` is False.
        """
        if bucket_id in self._reserved_bucket_ids:
            raise BucketReservedError(bucket_id, 'set')
        if not self.bucket_exists(bucket_id):
            if not auto_create:
                raise BucketNotFoundError(bucket_id)
            self.create_bucket(bucket_id)

        if self.record_exists(bucket_id, record_id) and not overwrite:
            raise RecordExistsError(bucket_id, record_id)
        self._record_set(bucket_id, record_id, record, overwrite)

    def delete_record(self, bucket_id: str, record_id: str) -> None:
        """Delete one record.

        Raises:
            BucketReservedError: If the bucket is reserved.
            BucketNotFoundError: If the bucket does not exist.
            RecordNotFoundError: If the record does not exist.
        """
        self._check_bucket(bucket_id, 'delete')
        if not self.record_exists(bucket_id, record_id):
            raise RecordNotFoundError(bucket_id, record_id)
        self._record_delete(bucket_id, record_id)

    def export_jsonl(self, bucket_id: str, path: Union[str, Path]) -> Path:
        """Write the records of a bucket to path, one JSON object per line.

        Returns:
            The path written to.
        """
        path = Path(path)
        if path.parent != Path('.'):
            path.parent.mkdir(parents=True, exist_ok=True)
        with path.open('w', encoding='utf-8') as f:
            for _, record in self.records_iter(bucket_id):
                f.write(json.dumps(record, sort_keys=True) + '\n')
        return path

    @property
    def metadata(self) -> dict:
        """The bucket metadata and the reserved bucket IDs."""
        return {
            'buckets': self._record_get(self._METADATA_BUCKET_ID, 'buckets'),
            'reserved_bucket_ids': self._reserved_bucket_ids,
        }

    @abstractmethod
    def get_buckets(self) -> set[str]:
        """Return the IDs of all non-reserved buckets."""
        raise NotImplementedError

    @abstractmethod
    def num_records(self, bucket_id: str) -> int:
        """Return the number of records in a bucket.

        Raises:
            BucketNotFoundError: If the bucket does not exist.
        """
        raise NotImplementedError

    @abstractmethod
    def bucket_exists(self, bucket_id: str) -> bool:
        """Return whether a bucket exists."""
        raise NotImplementedError

    @abstractmethod
    def record_exists(self, bucket_id: str, record_id: str) -> bool:
        """Return whether a record exists."""
        raise NotImplementedError

    @abstractmethod
    def _bucket_create(self, bucket_id: str) -> None:
        raise NotImplementedError

    @abstractmethod
    def _bucket_delete(self, bucket_id: str) -> None:
        raise NotImplementedError

    @abstractmethod
    def _record_get(self, bucket_id: str, record_id: str) -> dict:
        raise NotImplementedError

    @abstractmethod
    def _records_iter(self, bucket_id: str) -> Iterator[tuple[str, dict]]:
        raise NotImplementedError

    @abstractmethod
    def _record_set(self, bucket_id: str, record_id: str, record: dict,
                    overwrite: bool = False) -> None:
        """Store a record; an existing record is kept unless overwrite is True."""
        raise NotImplementedError

    @abstractmethod
    def _record_delete(self, bucket_id: str, record_id: str) -> None:
        raise NotImplementedError
