"""Optional on-disk memoization of series, enabled by ``MIRRORLAB_CACHE``."""

from __future__ import annotations

import hashlib
import os
import tempfile
from pathlib import Path
from typing import Callable

from .series import Series


def cache_dir() -> Path | None:
    root = os.environ.get("MIRRORLAB_CACHE")
    return Path(root) if root else None


def cached_series(kind: str, params, order: int, compute: Callable[[], Series]) -> Series:
    root = cache_dir()
    if root is None:
        return compute()
    key = f"{kind}|{params}|{order}"
    path = root / (hashlib.sha256(key.encode()).hexdigest()[:24] + ".json")
    if path.exists():
        return Series.from_json(path.read_text())
    s = compute()
    root.mkdir(parents=True, exist_ok=True)
    # write-then-rename so concurrent workers never read a partial file
    fd, tmp = tempfile.mkstemp(dir=root, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write(s.to_json())
    os.replace(tmp, path)
    return s
