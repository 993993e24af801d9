"""Resumable on-disk cache of per-graph invariants.

One TSV file per (n, source digest, field).  Rows are
``graph6<TAB>depth<TAB>reg<TAB>dim<TAB>degh`` keyed by canonical graph6.
"""

from __future__ import annotations

import hashlib
import os
from pathlib import Path

from .oracle import InvariantBundle

ENV_VAR = "CWINV_CACHE"
_MAGIC = "# cwinv-cache"


class CacheMismatch(ValueError):
    pass


def default_cache_dir(explicit: str | os.PathLike | None = None) -> Path | None:
    """The env var wins over the command-line directory."""
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(explicit) if explicit else None


def source_digest(source: str) -> str:
    """Stable digest naming a graph source (file contents for graph6 files)."""
    h = hashlib.sha256()
    if source == "builtin":
        h.update(b"builtin-generator-v1")
    elif source.startswith("graph6:"):
        with open(source[len("graph6:"):], "rb") as fh:
            for chunk in iter(lambda: fh.read(1 << 16), b""):
                h.update(chunk)
    else:
        raise ValueError(f"unknown source {source!r}")
    return h.hexdigest()[:16]


class ResultCache:
    def __init__(self, directory: str | os.PathLike, n: int, digest: str, field: str):
        self.dir = Path(directory)
        self.n = n
        self.digest = digest
        self.field = field
        self.path = self.dir / f"graphs-n{n}-{digest}-{field.replace(':', '_')}.tsv"
        self._header = f"{_MAGIC} n={n} source={digest} field={field}"
        self._fh = None

    def load(self) -> dict[str, InvariantBundle]:
        if not self.path.exists():
            return {}
        out = {}
        with open(self.path, encoding="ascii") as fh:
            header = fh.readline().rstrip("\n")
            if header != self._header:
                raise CacheMismatch(
                    f"{self.path}: header {header!r} does not match {self._header!r}"
                )
            for line in fh:
                parts = line.rstrip("\n").split("\t")
                if not line.endswith("\n") or len(parts) != 5:
                    # a torn final line from an interrupted run is dropped
                    continue
                try:
                    depth, reg, dim, degh = map(int, parts[1:])
                except ValueError:
                    continue
                out[parts[0]] = InvariantBundle(self.n, depth, reg, dim, degh, self.field)
        return out

    def open_writer(self) -> None:
        self.dir.mkdir(parents=True, exist_ok=True)
        if self.path.exists() and self.path.stat().st_size > 0:
            # cut a torn last line so the next record starts on a fresh line
            with open(self.path, "rb+") as fh:
                data = fh.read()
                keep = data.rfind(b"\n") + 1
                if keep < len(data):
                    fh.truncate(keep)
        fresh = not self.path.exists() or self.path.stat().st_size == 0
        self._fh = open(self.path, "a", encoding="ascii")
        if fresh:
            self._fh.write(self._header + "\n")

    def append(self, code: str, b: InvariantBundle) -> None:
        self._fh.write(f"{code}\t{b.depth}\t{b.reg}\t{b.dim}\t{b.degh}\n")

    def flush(self) -> None:
        if self._fh:
            self._fh.flush()

    def close(self) -> None:
        if self._fh:
            self._fh.close()
            self._fh = None
