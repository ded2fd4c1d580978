"""Line-oriented on-disk cache of pattern sets.

File layout::

    GIA-CACHE v1 K M mode stage
    k m n_star v_num v_den
    ...

One file per (K, M, mode, format version). A file that fails to parse or
carries another version is ignored with a warning and regenerated.
"""
from __future__ import annotations

import logging
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from .ia_math import GIAError
from .patterns import EXHAUSTIVE_LIMIT, GroupPattern, PatternSet, build_pattern_set

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
MAGIC = "GIA-CACHE"
ENV_VAR = "GIA_CACHE_DIR"


class CacheFormatError(GIAError):
    """A cache file is corrupt or was written by another format version."""


@dataclass
class CacheStats:
    hits: int = 0
    misses: int = 0
    generations: int = 0


stats = CacheStats()


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "gia"


def cache_path(cache_dir: Union[str, Path], K: int, M: int, mode: str,
               version: int = FORMAT_VERSION) -> Path:
    return Path(cache_dir) / f"gia-K{K}-M{M}-{mode}-v{version}.txt"


def dumps(ps: PatternSet, version: int = FORMAT_VERSION) -> str:
    lines = [f"{MAGIC} v{version} {ps.K} {ps.M} {ps.mode} {ps.stage}"]
    for e in ps.entries:
        lines.append(f"{e.k} {e.m} {e.n_star} {e.v.numerator} {e.v.denominator}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> PatternSet:
    lines = text.splitlines()
    if not lines:
        raise CacheFormatError("empty cache file")
    header = lines[0].split()
    if len(header) != 6 or header[0] != MAGIC:
        raise CacheFormatError(f"bad header {lines[0]!r}")
    if header[1] != f"v{FORMAT_VERSION}":
        raise CacheFormatError(f"cache version {header[1]} != v{FORMAT_VERSION}")
    try:
        K, M = int(header[2]), int(header[3])
        entries = []
        for line in lines[1:]:
            k, m, n_star, num, den = (int(f) for f in line.split())
            v = Fraction(num, den)
            entries.append(GroupPattern(k, m, n_star, v, v / m))
    except (ValueError, ZeroDivisionError) as exc:
        raise CacheFormatError(f"corrupt record: {exc}") from exc
    return PatternSet(K, M, tuple(entries), mode=header[4], stage=header[5])


def store(ps: PatternSet, cache_dir: Union[str, Path]) -> Path:
    """Write ``ps`` atomically (temp file + rename); returns the final path."""
    path = cache_path(cache_dir, ps.K, ps.M, ps.mode)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".txt")
    try:
        with os.fdopen(fd, "w", encoding="ascii", newline="\n") as fh:
            fh.write(dumps(ps))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def load(cache_dir: Union[str, Path], K: int, M: int, mode: str) -> Optional[PatternSet]:
    path = cache_path(cache_dir, K, M, mode)
    if not path.exists():
        return None
    try:
        ps = loads(path.read_text(encoding="ascii"))
    except (CacheFormatError, UnicodeDecodeError) as exc:
        logger.warning("ignoring cache file %s: %s", path, exc)
        return None
    if (ps.K, ps.M, ps.mode) != (K, M, mode):
        logger.warning("ignoring cache file %s: key mismatch", path)
        return None
    return ps


def resolve_mode(M: int, mode: str, exhaustive_limit: int = EXHAUSTIVE_LIMIT) -> str:
    if mode == "auto":
        return "exhaustive" if M <= exhaustive_limit else "sparse"
    return mode


def load_or_build(K: int, M: int, mode: str = "auto",
                  cache_dir: Optional[Union[str, Path]] = None,
                  exhaustive_limit: int = EXHAUSTIVE_LIMIT) -> PatternSet:
    """Sorted pattern set for (K, M), read from ``cache_dir`` when possible."""
    mode = resolve_mode(M, mode, exhaustive_limit)
    if cache_dir is not None:
        ps = load(cache_dir, K, M, mode)
        if ps is not None and ps.stage == "sorted":
            stats.hits += 1
            return ps
        stats.misses += 1
    ps = build_pattern_set(K, M, mode, exhaustive_limit)
    stats.generations += 1
    if cache_dir is not None:
        store(ps, cache_dir)
    return ps
