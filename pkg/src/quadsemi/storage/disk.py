"""JSON-lines report storage on disk."""
import json
import re
from pathlib import Path
from typing import Iterator, Union

from quadsemi.storage.base import BaseReportStorage, BucketNotFoundError


class JsonLinesReportStorage(BaseReportStorage):
    """Each bucket is a file `<bucket>.jsonl` in the root directory.

    Every line is a JSON object `{"id": record_id, "record": {...}}`. New
    records are appended, so lines stay in insertion order; overwriting or
    deleting a record rewrites the file.

    Not safe for concurrent writers: the sweep writes from the parent process
    only.
    """

    # Private Instance Attributes:
    #     _root_dir: The directory holding the bucket files.
    _root_dir: Path

    _SUFFIX = '.jsonl'

    def __init__(self, root_dir: Union[str, Path]) -> None:
        self._root_dir = Path(root_dir)
        self._root_dir.mkdir(parents=True, exist_ok=True)
        super().__init__()

    def get_buckets(self) -> set[str]:
        stems = {p.stem for p in self._root_dir.glob(f'*{self._SUFFIX}')}
        return stems - self._reserved_bucket_ids

    def num_records(self, bucket_id: str) -> int:
        if not self.bucket_exists(bucket_id):
            raise BucketNotFoundError(bucket_id)
        return sum(1 for _ in self._read_lines(bucket_id))

    def bucket_exists(self, bucket_id: str) -> bool:
        return self.bucket_path(bucket_id).exists()

    def record_exists(self, bucket_id: str, record_id: str) -> bool:
        if not self.bucket_exists(bucket_id):
            return False
        return any(rid == record_id for rid, _ in self._read_lines(bucket_id))

    def bucket_path(self, bucket_id: str) -> Path:
        """Return the file backing the given bucket."""
        return self._root_dir / (self._safe_filename(bucket_id) + self._SUFFIX)

    def _bucket_create(self, bucket_id: str) -> None:
        self.bucket_path(bucket_id).touch()

    def _bucket_delete(self, bucket_id: str) -> None:
        self.bucket_path(bucket_id).unlink()

    def _record_get(self, bucket_id: str, record_id: str) -> dict:
        for rid, record in self._read_lines(bucket_id):
            if rid == record_id:
                return record
        raise KeyError(record_id)

    def _records_iter(self, bucket_id: str) -> Iterator[tuple[str, dict]]:
        yield from self._read_lines(bucket_id)

    def _record_set(self, bucket_id: str, record_id: str, record: dict,
                    overwrite: bool = False) -> None:
        lines = list(self._read_lines(bucket_id))
        if not any(rid == record_id for rid, _ in lines):
            with self.bucket_path(bucket_id).open('a', encoding='utf-8') as f:
                f.write(self._dump(record_id, record))
        elif overwrite:
            self._write_lines(bucket_id, [(rid, record if rid == record_id else r)
                                          for rid, r in lines])

    def _record_delete(self, bucket_id: str, record_id: str) -> None:
        self._write_lines(bucket_id, [(rid, r) for rid, r in self._read_lines(bucket_id)
                                      if rid != record_id])

    def _read_lines(self, bucket_id: str) -> Iterator[tuple[str, dict]]:
        with self.bucket_path(bucket_id).open(encoding='utf-8') as f:
            for line in f:
                if line.strip():
                    entry = json.loads(line)
                    yield entry['id'], entry['record']

    def _write_lines(self, bucket_id: str, lines: list[tuple[str, dict]]) -> None:
        with self.bucket_path(bucket_id).open('w', encoding='utf-8') as f:
            for rid, record in lines:
                f.write(self._dump(rid, record))

    @staticmethod
    def _dump(record_id: str, record: dict) -> str:
        return json.dumps({'id': record_id, 'record': record}, sort_keys=True) + '\n'

    @staticmethod
    def _safe_filename(fn: str) -> str:
        """Replace every character other than letters, digits, '_', '.' and '-' by '_'."""
        return re.sub(r'[^a-zA-Z0-9_.-]', '_', fn)
