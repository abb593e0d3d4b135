"""JSONL result cache: keying, persistence, and corruption tolerance."""

import json

from imfree import CacheRecord, ResultCache, complete
from imfree.cache import pattern_key, resolve_cache_path


def rec(p=3, q=3, pattern=None, **kw):
    pattern = pattern or pattern_key(complete(2, 2))
    defaults = dict(
        p=p,
        q=q,
        pattern=pattern,
        allow_transpose=True,
        max_edges=5,
        proven=True,
        elapsed_ms=12,
    )
    defaults.update(kw)
    return CacheRecord(**defaults)


def test_pattern_key_identifies_equivalent_patterns():
    assert pattern_key(complete(2, 3)) == pattern_key(complete(3, 2))


def test_append_then_lookup(tmp_path):
    cache = ResultCache(tmp_path / "cache.jsonl")
    assert cache.lookup(3, 3, complete(2, 2)) is None
    cache.append(rec())
    hit = cache.lookup(3, 3, complete(2, 2))
    assert hit is not None and hit.max_edges == 5
    # transposed pattern hits the same record
    assert cache.lookup(3, 3, complete(2, 2).transposed()) is not None


def test_lookup_respects_key_fields(tmp_path):
    cache = ResultCache(tmp_path / "cache.jsonl")
    cache.append(rec())
    assert cache.lookup(4, 3, complete(2, 2)) is None
    assert cache.lookup(3, 3, complete(2, 3)) is None
    assert cache.lookup(3, 3, complete(2, 2), allow_transpose=False) is None


def test_unproven_records_are_not_served(tmp_path):
    cache = ResultCache(tmp_path / "cache.jsonl")
    cache.append(rec(proven=False))
    assert cache.lookup(3, 3, complete(2, 2)) is None


def test_corrupt_lines_are_skipped(tmp_path, caplog):
    path = tmp_path / "cache.jsonl"
    cache = ResultCache(path)
    cache.append(rec())
    with open(path, "a", encoding="utf-8") as fh:
        fh.write("this is not json\n")
        fh.write(json.dumps({"p": 1}) + "\n")
        fh.write("\n")
    cache.append(rec(p=4, q=4, max_edges=7))
    with caplog.at_level("WARNING"):
        assert cache.lookup(4, 4, complete(2, 2)).max_edges == 7
    assert any("corrupt" in r.message for r in caplog.records)


def test_append_creates_parent_dirs(tmp_path):
    cache = ResultCache(tmp_path / "deep" / "dir" / "cache.jsonl")
    cache.append(rec())
    assert cache.lookup(3, 3, complete(2, 2)) is not None


def test_resolve_cache_path(monkeypatch, tmp_path):
    assert resolve_cache_path("x.jsonl").name == "x.jsonl"
    monkeypatch.delenv("IMF_CACHE", raising=False)
    assert resolve_cache_path(None) is None
    monkeypatch.setenv("IMF_CACHE", str(tmp_path / "env.jsonl"))
    assert resolve_cache_path(None) == tmp_path / "env.jsonl"
    # explicit path wins over the environment
    assert resolve_cache_path("y.jsonl").name == "y.jsonl"
