"""On-disk cache of computed tangent cones.

One JSON file per (rank, one-line permutation, pipeline version).  Writes go
to a temporary file in the target directory followed by ``os.replace``.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from pathlib import Path

log = logging.getLogger(__name__)

# bump whenever the pipeline's output for a permutation can change
PIPELINE_VERSION = 1

CACHE_ENV = "TANGENTCONES_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "tangentcones"


class ConeCache:
    def __init__(self, root: str | os.PathLike, version: int = PIPELINE_VERSION):
        self.root = Path(root)
        self.version = version

    def path(self, rank: int, one_line: tuple[int, ...]) -> Path:
        return self.root / f"v{self.version}" / f"rank{rank}" / ("-".join(map(str, one_line)) + ".json")

    def get(self, rank: int, one_line: tuple[int, ...]) -> dict | None:
        p = self.path(rank, one_line)
        try:
            text = p.read_text()
        except FileNotFoundError:
            return None
        try:
            entry = json.loads(text)
            ok = (
                entry["version"] == self.version
                and entry["rank"] == rank
                and tuple(entry["one_line"]) == tuple(one_line)
                and isinstance(entry["generators"], list)
                and isinstance(entry["dimension"], int)
            )
        except (ValueError, KeyError, TypeError):
            ok = False
        if not ok:
            log.warning("corrupt cache entry %s; recomputing", p)
            return None
        return entry

    def put(self, rank: int, one_line: tuple[int, ...], entry: dict) -> None:
        p = self.path(rank, one_line)
        p.parent.mkdir(parents=True, exist_ok=True)
        payload = dict(entry, version=self.version, rank=rank, one_line=list(one_line))
        fd, tmp = tempfile.mkstemp(dir=p.parent, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(payload, fh, sort_keys=True)
            os.replace(tmp, p)
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise
