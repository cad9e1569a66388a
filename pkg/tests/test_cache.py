import json
import logging
import os

import pytest

from ffcubic.cache import Cache, default_cache_dir
from ffcubic.polyring import _prime_table_mem, prime_table

KEY = {"q": 5, "field": "q", "kind": "primes", "bound": 3}


def test_round_trip(tmp_path):
    c = Cache(tmp_path)
    c.store(KEY, [{"a": 1}, {"b": [1, 2]}])
    fresh = Cache(tmp_path)
    assert fresh.load(KEY) == [{"a": 1}, {"b": [1, 2]}]
    assert fresh.hits == 1


def test_miss(tmp_path):
    c = Cache(tmp_path)
    assert c.load(KEY) is None and c.misses == 1


def test_corrupt_byte_rebuilds(tmp_path, caplog):
    c = Cache(tmp_path)
    c.store(KEY, [{"a": 1}, {"a": 2}])
    path = c.path(KEY)
    raw = bytearray(path.read_bytes())
    raw[-2] ^= 1
    path.write_bytes(bytes(raw))
    fresh = Cache(tmp_path)
    with caplog.at_level(logging.WARNING):
        assert fresh.load(KEY) is None
    assert fresh.rebuilds == 1 and "discarding" in caplog.text


def test_version_mismatch(tmp_path):
    c = Cache(tmp_path)
    c.store(KEY, [{"a": 1}])
    path = c.path(KEY)
    lines = path.read_text().split("\n")
    header = json.loads(lines[0])
    header["version"] = "0.0.0"
    path.write_text("\n".join([json.dumps(header)] + lines[1:]))
    assert Cache(tmp_path).load(KEY) is None


def test_truncated_file(tmp_path):
    c = Cache(tmp_path)
    c.store(KEY, [{"a": 1}, {"a": 2}])
    path = c.path(KEY)
    path.write_text(path.read_text().split("\n")[0])
    assert Cache(tmp_path).load(KEY) is None


def test_no_temp_files_left(tmp_path):
    c = Cache(tmp_path)
    for i in range(3):
        c.store(KEY, [{"i": i}])
    assert not list(tmp_path.glob("*.tmp"))
    assert Cache(tmp_path).load(KEY) == [{"i": 2}]


@pytest.mark.skipif(os.geteuid() == 0, reason="root ignores directory permissions")
def test_unwritable_falls_back(tmp_path, caplog):
    d = tmp_path / "ro"
    d.mkdir()
    d.chmod(0o500)
    try:
        with caplog.at_level(logging.WARNING):
            c = Cache(d)
        assert not c.persistent
        c.store(KEY, [{"a": 1}])
        assert c.load(KEY) == [{"a": 1}]
    finally:
        d.chmod(0o700)


def test_unusable_path_falls_back(tmp_path, caplog):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with caplog.at_level(logging.WARNING):
        c = Cache(blocker / "sub")
    assert not c.persistent and "memory only" in caplog.text
    c.store(KEY, [{"a": 1}])
    assert c.load(KEY) == [{"a": 1}]


def test_env_override(monkeypatch, tmp_path):
    monkeypatch.setenv("FFCUBIC_CACHE", str(tmp_path))
    assert default_cache_dir() == tmp_path


def test_prime_table_reuse(ctx, tmp_path):
    c = Cache(tmp_path)
    a, da = prime_table(ctx, "q", 3, cache=c)
    fresh = Cache(tmp_path)
    b, db = prime_table(ctx, "q", 3, cache=fresh)
    assert fresh.hits == 1 and fresh.misses == 0
    assert (a == b).all() and (da == db).all()
    m, dm = _prime_table_mem(5, "q", 3)
    assert (m == a).all()
