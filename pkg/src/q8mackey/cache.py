"""Content-addressed on-disk cache of coefficient records.

Layout: ``<root>/<engine version>/<key[:2]>/<key>.json``.  Each entry
stores its key and a checksum of the record; anything that fails to
parse or verify is deleted and counted as evicted, never served.
Writes go to a temporary file in the same directory followed by an
atomic rename, so concurrent writers cannot leave a partial entry.
"""
from __future__ import annotations

import hashlib
import json
import os
import shutil
import tempfile
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from . import __version__

CACHE_ENV = "Q8MACKEY_CACHE_DIR"

# Files whose contents determine computed values.
_ENGINE_FILES = ("linalg.py", "chains.py", "groups.py", "modules.py", "builders.py", "cworacle.py",
                 "tables.py", "records.py", "data/tables.json")


@lru_cache(maxsize=1)
def engine_version() -> str:
    h = hashlib.sha256(__version__.encode())
    pkg = resources.files("q8mackey")
    for name in _ENGINE_FILES:
        h.update(name.encode())
        h.update(pkg.joinpath(name).read_bytes())
    return h.hexdigest()[:16]


def default_root() -> Path:
    if os.environ.get(CACHE_ENV):
        return Path(os.environ[CACHE_ENV])
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "q8mackey"


def _canonical(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode()


def record_key(key: dict) -> str:
    return hashlib.sha256(_canonical(key)).hexdigest()


@dataclass
class CacheStats:
    hits: int = 0
    misses: int = 0
    writes: int = 0
    evicted: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"hits": self.hits, "misses": self.misses, "writes": self.writes,
                "evicted": len(self.evicted), "evicted_entries": self.evicted}


class ResultCache:
    def __init__(self, root: Path | str | None = None, version: str | None = None):
        self.root = Path(root) if root is not None else default_root()
        self.version = version or engine_version()
        self.stats = CacheStats()

    @property
    def directory(self) -> Path:
        return self.root / self.version

    def _path(self, digest: str) -> Path:
        return self.directory / digest[:2] / f"{digest}.json"

    def get(self, key: dict) -> dict | None:
        digest = record_key(key)
        path = self._path(digest)
        try:
            raw = path.read_bytes()
        except FileNotFoundError:
            self.stats.misses += 1
            return None
        try:
            entry = json.loads(raw)
            record = entry["record"]
            if entry["key"] != key or entry["checksum"] != hashlib.sha256(_canonical(record)).hexdigest():
                raise ValueError("checksum or key mismatch")
        except (ValueError, KeyError, TypeError):
            self._evict(path)
            self.stats.misses += 1
            return None
        self.stats.hits += 1
        return record

    def _evict(self, path: Path) -> None:
        try:
            path.unlink()
        except FileNotFoundError:
            pass
        self.stats.evicted.append(path.name)

    def put(self, key: dict, record: dict) -> None:
        path = self._path(record_key(key))
        path.parent.mkdir(parents=True, exist_ok=True)
        entry = {"key": key, "record": record, "checksum": hashlib.sha256(_canonical(record)).hexdigest()}
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(_canonical(entry))
            os.replace(tmp, path)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
        self.stats.writes += 1

    def entries(self) -> list[Path]:
        if not self.directory.exists():
            return []
        return sorted(p for p in self.directory.glob("*/*.json") if not p.name.startswith(".tmp-"))

    def stale_versions(self) -> list[str]:
        if not self.root.exists():
            return []
        return sorted(p.name for p in self.root.iterdir() if p.is_dir() and p.name != self.version)

    def prune_stale(self) -> int:
        stale = self.stale_versions()
        for name in stale:
            shutil.rmtree(self.root / name, ignore_errors=True)
        return len(stale)

    def clear(self) -> int:
        n = len(self.entries())
        if self.root.exists():
            for p in self.root.iterdir():
                if p.is_dir():
                    shutil.rmtree(p, ignore_errors=True)
        return n

    def scan(self) -> dict:
        """Check every entry of the current version, evicting corrupt ones."""
        ok = 0
        for path in self.entries():
            try:
                entry = json.loads(path.read_bytes())
                if entry["checksum"] != hashlib.sha256(_canonical(entry["record"])).hexdigest():
                    raise ValueError
                if path.stem != record_key(entry["key"]):
                    raise ValueError
                ok += 1
            except (ValueError, KeyError, TypeError):
                self._evict(path)
        return {"valid": ok, "evicted": list(self.stats.evicted)}

    def summary(self) -> dict:
        files = self.entries()
        return {
            "root": str(self.root),
            "version": self.version,
            "entries": len(files),
            "bytes": sum(p.stat().st_size for p in files),
            "stale_versions": self.stale_versions(),
        }
