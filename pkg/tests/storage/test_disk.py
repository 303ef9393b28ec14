"""Test JSON-lines report storage."""
import json

import pytest
from pyfakefs.fake_filesystem import FakeFilesystem

from quadsemi.storage import BACKENDS, DictReportStorage, JsonLinesReportStorage, make_storage
from tests.storage.base_test import RECORD_2, RECORD_3, BaseReportStorageTestSuite


class TestJsonLinesReportStorage(BaseReportStorageTestSuite[JsonLinesReportStorage]):
    """Test the JSON-lines report storage backend."""
    _ROOT_DIR: str = './reports/'

    @pytest.fixture
    def storage(self, fs: FakeFilesystem) -> JsonLinesReportStorage:
        """Fixture to create a new storage instance."""
        fs.create_dir(self._ROOT_DIR)
        return JsonLinesReportStorage(self._ROOT_DIR)

    def test_safe_filename(self, storage: JsonLinesReportStorage) -> None:
        """Non-alphanumeric characters other than '-', '_' and '.' become underscores."""
        assert storage._safe_filename('sweep 2..50/x') == 'sweep_2..50_x'

    @pytest.mark.usefixtures('storage_with_record')
    def test_one_line_per_record(self, storage: JsonLinesReportStorage) -> None:
        """The bucket file holds one JSON object per record, in insertion order."""
        storage.set_record('sweep-1', '3', RECORD_3)

        lines = storage.bucket_path('sweep-1').read_text(encoding='utf-8').splitlines()
        assert [json.loads(line) for line in lines] == [
            {'id': '2', 'record': RECORD_2},
            {'id': '3', 'record': RECORD_3},
        ]

    def test_records_survive_reopening(self, storage: JsonLinesReportStorage) -> None:
        """A second instance over the same directory sees the same reports."""
        storage.set_record('sweep-1', '2', RECORD_2, auto_create=True)

        reopened = JsonLinesReportStorage(self._ROOT_DIR)
        assert reopened.get_buckets() == {'sweep-1'}
        assert reopened.get_record('sweep-1', '2') == RECORD_2
        assert 'sweep-1' in reopened.metadata['buckets']


def test_make_storage_known_backend(fs: FakeFilesystem) -> None:
    """The jsonl backend is built with its root directory."""
    storage = make_storage('jsonl', {'root_dir': '/data/reports'})
    assert isinstance(storage, JsonLinesReportStorage)
    assert fs.exists('/data/reports/__metadata__.jsonl')


def test_make_storage_unknown_backend_falls_back() -> None:
    """An unknown backend name falls back to the in-memory backend."""
    assert isinstance(make_storage('mongo', {}), DictReportStorage)
    assert set(BACKENDS) == {'dict', 'jsonl'}
