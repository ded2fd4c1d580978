import logging

import pytest

from gia import build_pattern_set, generate_sparse
from gia import cache
from gia.cache import CacheFormatError, cache_path, dumps, load, load_or_build, loads, store


@pytest.fixture
def k7_set():
    return generate_sparse(7, 45880)


def test_roundtrip_identity(tmp_path, k7_set):
    path = store(k7_set, tmp_path)
    assert path == cache_path(tmp_path, 7, 45880, "sparse")
    loaded = load(tmp_path, 7, 45880, "sparse")
    assert loaded == k7_set
    assert dumps(loaded) == path.read_text()


def test_header_and_records(k7_set):
    lines = dumps(k7_set).splitlines()
    assert lines[0] == "GIA-CACHE v1 7 45880 sparse sorted"
    assert lines[1] == "4 35853 15 3876 5735"
    assert len(lines) == 1 + 470


def test_cache_hit_skips_generation(tmp_path):
    before = cache.stats.generations
    first = load_or_build(5, 3000, "auto", tmp_path)
    assert cache.stats.generations == before + 1
    hits = cache.stats.hits
    second = load_or_build(5, 3000, "auto", tmp_path)
    assert cache.stats.generations == before + 1
    assert cache.stats.hits == hits + 1
    assert first == second == build_pattern_set(5, 3000)


def test_version_bump_invalidates(tmp_path, caplog):
    ps = build_pattern_set(4, 100)
    path = store(ps, tmp_path)
    path.write_text(path.read_text().replace("v1", "v0", 1))
    with caplog.at_level(logging.WARNING):
        assert load(tmp_path, 4, 100, "exhaustive") is None
    assert "version" in caplog.text
    before = cache.stats.generations
    assert load_or_build(4, 100, "exhaustive", tmp_path) == ps
    assert cache.stats.generations == before + 1
    assert load(tmp_path, 4, 100, "exhaustive") == ps


def test_corrupt_file_regenerates(tmp_path):
    ps = build_pattern_set(4, 100)
    path = store(ps, tmp_path)
    path.write_text(path.read_text() + "garbage here\n")
    assert load(tmp_path, 4, 100, "exhaustive") is None
    assert load_or_build(4, 100, "exhaustive", tmp_path) == ps


@pytest.mark.parametrize("text", ["", "NOPE v1 1 2 x y\n", "GIA-CACHE v1 4 x exhaustive sorted\n",
                                  "GIA-CACHE v1 4 10 exhaustive sorted\n3 3 0 1 0\n"])
def test_loads_rejects(text):
    with pytest.raises(CacheFormatError):
        loads(text)


def test_atomic_write_leaves_no_temp(tmp_path):
    store(build_pattern_set(4, 50), tmp_path)
    assert [p.name for p in tmp_path.iterdir()] == ["gia-K4-M50-exhaustive-v1.txt"]
