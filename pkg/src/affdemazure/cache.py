"""Content-addressed on-disk cache of computed characters (one JSON file each)."""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from platformdirs import user_data_dir

from .affring import CharElement


def default_cache_dir() -> Path:
    return Path(user_data_dir("affdemazure"))


class DiskCache:
    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)

    def _path(self, key: str) -> Path:
        digest = hashlib.sha256(key.encode()).hexdigest()
        return self.directory / f"{digest}.json"

    def get(self, key: str) -> CharElement | None:
        path = self._path(key)
        try:
            with open(path) as fh:
                payload = json.load(fh)
        except (OSError, ValueError):
            return None
        if payload.get("key") != key:
            return None
        return CharElement.from_json_obj(payload["char"])

    def put(self, key: str, char: CharElement) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self._path(key)
        # write-then-rename keeps concurrent readers from seeing partial files
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump({"key": key, "char": char.to_json_obj()}, fh)
        os.replace(tmp, path)
