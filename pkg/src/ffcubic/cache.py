"""Persistent JSON-lines cache for prime tables and moment checkpoints.

Each entry is one file: a header line with the key, the package version and
a SHA-256 of the payload lines, followed by one JSON object per line.
Entries whose hash or version does not match are ignored and rebuilt.
Writes go to a temporary file that is renamed into place under a lock.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import re
import tempfile
from pathlib import Path

from filelock import FileLock

from . import __version__

__all__ = ["Cache", "default_cache_dir"]

log = logging.getLogger(__name__)


def default_cache_dir() -> Path:
    env = os.environ.get("FFCUBIC_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "ffcubic"


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


class Cache:
    def __init__(self, directory=None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()
        self.memory = {}
        self.persistent = True
        self.hits = self.misses = self.rebuilds = 0
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            probe = tempfile.NamedTemporaryFile(dir=self.directory, delete=True)
            probe.close()
        except OSError as exc:
            log.warning("cache directory %s is not writable (%s); using memory only", self.directory, exc)
            self.persistent = False

    def path(self, key: dict) -> Path:
        name = "-".join(f"{k}{key[k]}" for k in sorted(key))
        name = re.sub(r"[^A-Za-z0-9_.=-]", "_", name)
        return self.directory / f"{name}.jsonl"

    def load(self, key: dict):
        ck = _canonical(key)
        if ck in self.memory:
            self.hits += 1
            return self.memory[ck]
        if not self.persistent:
            self.misses += 1
            return None
        path = self.path(key)
        if not path.exists():
            self.misses += 1
            return None
        try:
            with FileLock(str(path) + ".lock"):
                lines = path.read_text().splitlines()
            header = json.loads(lines[0])
            payload = lines[1:]
            digest = hashlib.sha256("\n".join(payload).encode()).hexdigest()
            if header.get("key") != key or header.get("version") != __version__:
                raise ValueError("key or version mismatch")
            if header.get("sha256") != digest or header.get("count") != len(payload):
                raise ValueError("content hash mismatch")
            rows = [json.loads(line) for line in payload]
        except (OSError, ValueError, IndexError, KeyError) as exc:
            log.warning("discarding cache entry %s: %s", path.name, exc)
            self.rebuilds += 1
            return None
        self.hits += 1
        self.memory[ck] = rows
        return rows

    def store(self, key: dict, rows) -> None:
        rows = list(rows)
        self.memory[_canonical(key)] = rows
        if not self.persistent:
            return
        payload = [_canonical(r) for r in rows]
        header = {
            "key": key,
            "version": __version__,
            "sha256": hashlib.sha256("\n".join(payload).encode()).hexdigest(),
            "count": len(payload),
        }
        path = self.path(key)
        try:
            with FileLock(str(path) + ".lock"):
                fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
                with os.fdopen(fd, "w") as fh:
                    fh.write(_canonical(header) + "\n")
                    fh.write("\n".join(payload))
                os.replace(tmp, path)
        except OSError as exc:
            log.warning("could not write cache entry %s: %s", path.name, exc)

    def drop(self, key: dict) -> None:
        self.memory.pop(_canonical(key), None)
        if self.persistent:
            try:
                self.path(key).unlink()
            except FileNotFoundError:
                pass
