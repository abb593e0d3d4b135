"""Append-only JSONL result cache for proven extremal values.

Records are keyed on (p, q, canonical pattern grid, allow_transpose) so that
equivalent patterns share entries.  Appends hold an exclusive file lock;
corrupt lines are skipped with a warning, never fatal.
"""

from __future__ import annotations

import fcntl
import json
import logging
import os
from dataclasses import asdict, dataclass
from pathlib import Path

from .graphs import OrderedBipartiteGraph, canonical_form

TOOL_VERSION = "0.1.0"
ENV_VAR = "IMF_CACHE"

log = logging.getLogger(__name__)

_FIELDS = (
    "p",
    "q",
    "pattern",
    "allow_transpose",
    "max_edges",
    "proven",
    "elapsed_ms",
    "tool_version",
)


@dataclass(frozen=True)
class CacheRecord:
    p: int
    q: int
    pattern: str  # canonical grid string
    allow_transpose: bool
    max_edges: int
    proven: bool
    elapsed_ms: int
    tool_version: str = TOOL_VERSION


def pattern_key(H: OrderedBipartiteGraph) -> str:
    canon, _t = canonical_form(H)
    return canon.to_grid()


def resolve_cache_path(explicit: str | None) -> Path | None:
    if explicit:
        return Path(explicit)
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else None


class ResultCache:
    def __init__(self, path: Path | str):
        self.path = Path(path)

    def _iter_records(self):
        if not self.path.exists():
            return
        with open(self.path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    obj = json.loads(line)
                    yield CacheRecord(**{k: obj[k] for k in _FIELDS})
                except (json.JSONDecodeError, KeyError, TypeError):
                    log.warning(
                        "skipping corrupt cache line %d in %s", lineno, self.path
                    )

    def lookup(
        self,
        p: int,
        q: int,
        H: OrderedBipartiteGraph,
        allow_transpose: bool = True,
    ) -> CacheRecord | None:
        key = pattern_key(H)
        for rec in self._iter_records():
            if (
                rec.p == p
                and rec.q == q
                and rec.pattern == key
                and rec.allow_transpose == allow_transpose
                and rec.proven
            ):
                return rec
        return None

    def append(self, record: CacheRecord) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX)
            try:
                fh.write(json.dumps(asdict(record)) + "\n")
                fh.flush()
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)
