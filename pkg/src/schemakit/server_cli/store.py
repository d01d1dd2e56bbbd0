"""File-backed schema library store with optimistic versioning.

One schema document per file under <root>/schemas/, plus a manifest for fast
listing. Writes are atomic (temp file + rename) and serialized behind a lock;
a missing or stale manifest is rebuilt by scanning the files.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
from dataclasses import dataclass
from pathlib import Path

from ..schema_model import Schema, deserialize, serialize


class UnknownSchemaError(KeyError):
    pass


class VersionConflictError(Exception):
    def __init__(self, schema_id: str, expected, actual: int):
        self.schema_id = schema_id
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"schema {schema_id!r}: version {expected!r} does not match current {actual}"
        )


@dataclass
class ManifestEntry:
    file: str
    version: int
    provenance: str


class LibraryStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.schemas_dir = self.root / "schemas"
        self.manifest_path = self.root / "manifest.json"
        self.schemas_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._manifest: dict[str, ManifestEntry] = {}
        self._load_or_rebuild_manifest()

    def _load_or_rebuild_manifest(self) -> None:
        if self.manifest_path.exists():
            try:
                raw = json.loads(self.manifest_path.read_text())
                self._manifest = {
                    sid: ManifestEntry(**entry) for sid, entry in raw["schemas"].items()
                }
                # Drop entries whose files vanished; pick up strays below.
                self._manifest = {
                    sid: e for sid, e in self._manifest.items()
                    if (self.root / e.file).exists()
                }
            except (json.JSONDecodeError, KeyError, TypeError):
                self._manifest = {}
        known_files = {e.file for e in self._manifest.values()}
        for path in sorted(self.schemas_dir.glob("*.json")):
            rel = str(path.relative_to(self.root))
            if rel in known_files:
                continue
            schema = deserialize(path.read_bytes())
            self._manifest[schema.id] = ManifestEntry(
                file=rel, version=1, provenance=schema.provenance.kind)
        self._write_manifest()

    def _write_manifest(self) -> None:
        doc = {
            "schemas": {
                sid: {"file": e.file, "version": e.version, "provenance": e.provenance}
                for sid, e in sorted(self._manifest.items())
            }
        }
        self._atomic_write(self.manifest_path, json.dumps(doc, indent=2, sort_keys=True) + "\n")

    @staticmethod
    def _atomic_write(path: Path, text: str | bytes) -> None:
        data = text.encode("utf-8") if isinstance(text, str) else text
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=path.suffix)
        try:
            with os.fdopen(fd, "wb") as handle:
                handle.write(data)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def list(self) -> list[dict]:
        with self._lock:
            return [
                {"id": sid, "version": e.version, "provenance": e.provenance}
                for sid, e in sorted(self._manifest.items())
            ]

    def ids(self) -> list[str]:
        with self._lock:
            return sorted(self._manifest)

    def get(self, schema_id: str) -> tuple[Schema, int]:
        with self._lock:
            entry = self._manifest.get(schema_id)
            if entry is None:
                raise UnknownSchemaError(schema_id)
            schema = deserialize((self.root / entry.file).read_bytes())
            return schema, entry.version

    def all_schemas(self) -> list[Schema]:
        return [self.get(sid)[0] for sid in self.ids()]

    def put(self, schema: Schema, expected_version: int | None = None) -> int:
        """Create (expected_version None) or update (expected_version must
        match) a schema. Returns the new version."""
        with self._lock:
            entry = self._manifest.get(schema.id)
            if entry is None:
                if expected_version is not None:
                    raise VersionConflictError(schema.id, expected_version, 0)
                version = 1
            else:
                if expected_version != entry.version:
                    raise VersionConflictError(schema.id, expected_version, entry.version)
                version = entry.version + 1
            rel = f"schemas/{schema.id}.json"
            self._atomic_write(self.root / rel, serialize(schema))
            self._manifest[schema.id] = ManifestEntry(
                file=rel, version=version, provenance=schema.provenance.kind)
            self._write_manifest()
            return version

    def delete(self, schema_id: str) -> None:
        with self._lock:
            entry = self._manifest.pop(schema_id, None)
            if entry is None:
                raise UnknownSchemaError(schema_id)
            path = self.root / entry.file
            if path.exists():
                path.unlink()
            self._write_manifest()
