"""Memo and disk cache for computed series.

All cached objects are pure functions of their key (map identity, kind,
parameters, truncation), so entries never invalidate. The disk layer is an
optimization only: results must be bit-identical with and without it, which
holds because series serialize through exact rational strings.

Concurrent use is read-mostly; a racing recomputation publishes an
identical value, so plain dict assignment is sufficient.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from .laurent import INF, LaurentSeries

ENV_CACHE_DIR = "SPLAB_CACHE_DIR"


class SeriesCache:
    def __init__(self, directory=None):
        self._mem: dict = {}
        self.directory = Path(directory) if directory else None

    def set_directory(self, directory) -> None:
        # switching the backing store resets memoization so results always
        # flow through (and into) the configured directory
        self.directory = Path(directory) if directory else None
        self._mem.clear()

    def _disk_path(self, key: tuple) -> Path:
        digest = hashlib.sha256(repr(key).encode()).hexdigest()[:32]
        return self.directory / f"{digest}.json"

    def get_or_compute(self, key: tuple, compute) -> LaurentSeries:
        hit = self._mem.get(key)
        if hit is not None:
            return hit
        if self.directory is not None:
            path = self._disk_path(key)
            if path.is_file():
                with open(path, "r", encoding="utf-8") as fh:
                    value = LaurentSeries.from_json(json.load(fh))
                self._mem[key] = value
                return value
        value = compute()
        self._mem[key] = value
        if self.directory is not None and value.trunc != INF:
            self.directory.mkdir(parents=True, exist_ok=True)
            path = self._disk_path(key)
            tmp = path.with_suffix(".tmp")
            with open(tmp, "w", encoding="utf-8") as fh:
                json.dump(value.to_json(), fh, sort_keys=True)
            os.replace(tmp, path)
        return value


CACHE = SeriesCache()


def set_cache_dir(directory) -> None:
    """Point the process-wide disk cache at ``directory`` (None disables)."""
    CACHE.set_directory(directory)
