"""On-disk series cache: one JSON document per (kind, order).

Writes go through a temp file plus rename so a crashed high-order run never
corrupts completed orders, and a directory-level lock keeps concurrent
writers out of each other's way.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from filelock import FileLock

from .render import parse_word_document, series_document, document_json
from .words import WordSeries

LOCK_NAME = ".lock"


class SeriesStore:
    """Directory of cached orders, one file per kind and order."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._lock = FileLock(str(self.root / LOCK_NAME))

    def path_for(self, kind: str, order: int) -> Path:
        return self.root / f"{kind}-{order}.json"

    def save(self, kind: str, order: int, series: WordSeries) -> Path:
        doc = series_document(series, kind, order, "words")
        payload = document_json(doc)
        target = self.path_for(kind, order)
        with self._lock:
            fd, tmp = tempfile.mkstemp(dir=self.root, prefix=f".{kind}-{order}.")
            try:
                with os.fdopen(fd, "w") as handle:
                    handle.write(payload)
                os.replace(tmp, target)
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise
        return target

    def load(self, kind: str, order: int) -> WordSeries | None:
        """Series for (kind, order), or None when not cached.

        Raises ValueError on a malformed or mislabelled document.
        """
        path = self.path_for(kind, order)
        if not path.exists():
            return None
        with path.open() as handle:
            doc = json.load(handle)
        found_kind, found_order, series = parse_word_document(doc)
        if found_kind != kind or found_order != order:
            raise ValueError(
                f"{path} is labelled ({found_kind}, {found_order}), "
                f"expected ({kind}, {order})"
            )
        return series

    def load_range(self, kind: str, max_order: int) -> dict[int, WordSeries]:
        """All cached orders 2..max_order for the kind (gaps allowed)."""
        out: dict[int, WordSeries] = {}
        for order in range(2, max_order + 1):
            series = self.load(kind, order)
            if series is not None:
                out[order] = series
        return out
