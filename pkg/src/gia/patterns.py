"""Group-pattern universe: generation, dominance pruning and efficiency order."""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Iterator, List, Tuple

from .ia_math import GIAError, DomainError, iter_ladder, mg_bf

EXHAUSTIVE_LIMIT = 2**24
SPARSE_ENTRY_LIMIT = 5_000_000

MODES = ("exhaustive", "sparse")
STAGES = ("raw", "pruned", "sorted")


class LimitError(GIAError):
    """A configured size limit would be exceeded."""


class StageError(GIAError, ValueError):
    """A pattern set is not at the stage an operation expects."""


@dataclass(frozen=True)
class GroupPattern:
    """Schedule ``k`` users on ``m`` dimensions, worth ``v`` (``rho`` per dimension)."""

    k: int
    m: int
    n_star: int
    v: Fraction
    rho: Fraction

    @classmethod
    def from_gain(cls, k: int, m: int, n_star: int, gain: Fraction, M: int) -> "GroupPattern":
        v = Fraction(gain) / M
        return cls(k, m, n_star, v, v / m)

    def gain(self, M: int) -> Fraction:
        """Value scaled back to dimension units, ``v * M``."""
        return self.v * M


@dataclass(frozen=True)
class PatternSet:
    K: int
    M: int
    entries: Tuple[GroupPattern, ...]
    mode: str = "exhaustive"
    stage: str = "raw"

    @property
    def W(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[GroupPattern]:
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def restrict(self, M: int) -> "PatternSet":
        """The same set for a smaller budget ``M``.

        Dominators always have smaller or equal dimension, so restricting a
        pruned (or sorted) set gives exactly the pruned (or sorted) set that
        direct generation at ``M`` would give. Ratios between values are
        unchanged, so the order is kept.
        """
        if M > self.M:
            raise DomainError(f"cannot restrict a set built for M={self.M} to M={M}")
        scale = Fraction(self.M, M)
        entries = tuple(
            GroupPattern(e.k, e.m, e.n_star, e.v * scale, e.rho * scale)
            for e in self.entries
            if e.m <= M
        )
        return replace(self, M=M, entries=entries)


def _ladder_patterns(k: int, M: int) -> Iterator[GroupPattern]:
    for entry in iter_ladder(k, M):
        gain = entry.m * (mg_bf(k, entry.n_star) - 1)
        yield GroupPattern.from_gain(k, entry.m, entry.n_star, gain, M)


def _k3_pattern(m: int, M: int) -> GroupPattern:
    # k=3: m = 2n+3 and the gain collapses to n+1
    n_star = (m - 3) // 2
    v = Fraction(n_star + 1, M)
    return GroupPattern(3, m, n_star, v, Fraction(n_star + 1, m * M))


def _check(K: int, M: int) -> None:
    if K < 1:
        raise DomainError(f"user count must be positive, got {K}")
    if M < 1:
        raise DomainError(f"M must be positive, got {M}")


def generate(K: int, M: int, mode: str = "exhaustive",
             exhaustive_limit: int = EXHAUSTIVE_LIMIT) -> PatternSet:
    """Every ``{k, m}`` with ``3 <= k <= K`` and ladder dimension ``m <= M``.

    Groups of fewer than three users carry no value and are left out.
    """
    _check(K, M)
    if mode != "exhaustive":
        raise DomainError("raw generation is exhaustive; use generate_sparse for sparse mode")
    if M > exhaustive_limit:
        raise LimitError(
            f"M={M} exceeds the exhaustive limit {exhaustive_limit}; use sparse mode"
        )
    entries: List[GroupPattern] = []
    if K >= 3:
        entries.extend(_k3_pattern(m, M) for m in range(3, M + 1, 2))
    for k in range(4, K + 1):
        entries.extend(_ladder_patterns(k, M))
    return PatternSet(K, M, tuple(entries), mode="exhaustive", stage="raw")


def _prune_entries(entries: Iterable[GroupPattern]) -> List[GroupPattern]:
    # A pattern goes when another one uses no more dimensions and is worth
    # strictly more, or has the same (m, v) and fewer users.
    ordered = sorted(entries, key=lambda e: (e.m, -e.v, e.k))
    kept: List[GroupPattern] = []
    best = None
    for e in ordered:
        if best is not None and e.v < best:
            continue
        if kept and kept[-1].m == e.m and kept[-1].v == e.v:
            continue
        kept.append(e)
        best = e.v
    return kept


def prune(raw: PatternSet) -> PatternSet:
    if raw.stage != "raw":
        raise StageError(f"prune expects a raw set, got stage={raw.stage}")
    return replace(raw, entries=tuple(_prune_entries(raw.entries)), stage="pruned")


def _efficiency_key(e: GroupPattern):
    return (-e.rho, e.m, e.k)


def sort_by_efficiency(pruned: PatternSet) -> PatternSet:
    if pruned.stage != "pruned":
        raise StageError(f"sort_by_efficiency expects a pruned set, got stage={pruned.stage}")
    entries = tuple(sorted(pruned.entries, key=_efficiency_key))
    return replace(pruned, entries=entries, stage="sorted")


def _k3_survivors(kept_high: List[GroupPattern], M: int) -> Iterator[int]:
    """Odd dimensions whose k=3 pattern is not beaten by a kept k>=4 pattern.

    The k=3 gain at ``m`` is ``(m-1)/2``; it survives when it reaches the
    best k>=4 gain at or below ``m``. Kept gains are non-decreasing in m, so
    each gap between consecutive kept dimensions is one arithmetic range.
    """
    bounds = [e.m for e in kept_high] + [M + 1]
    gains = [Fraction(0)] + [e.gain(M) for e in kept_high]
    start = 3
    for end, threshold in zip(bounds, gains):
        lo = max(start, 3, -(-(2 * threshold + 1) // 1))
        if lo % 2 == 0:
            lo += 1
        hi = min(end - 1, M)
        yield from range(lo, hi + 1, 2)
        start = end


def generate_sparse(K: int, M: int, entry_limit: int = SPARSE_ENTRY_LIMIT) -> PatternSet:
    """Sorted pattern set built without walking the dense k=3 ladder.

    Produces the same entries as ``sort_by_efficiency(prune(generate(...)))``.
    """
    _check(K, M)
    high: List[GroupPattern] = []
    for k in range(4, K + 1):
        high.extend(_ladder_patterns(k, M))
    kept_high = _prune_entries(high)
    merged = list(kept_high)
    if K >= 3:
        for count, m in enumerate(_k3_survivors(kept_high, M)):
            if count >= entry_limit:
                raise LimitError(f"more than {entry_limit} k=3 patterns survive at M={M}")
            merged.append(_k3_pattern(m, M))
    entries = tuple(sorted(_prune_entries(merged), key=_efficiency_key))
    return PatternSet(K, M, entries, mode="sparse", stage="sorted")


def build_pattern_set(K: int, M: int, mode: str = "auto",
                      exhaustive_limit: int = EXHAUSTIVE_LIMIT) -> PatternSet:
    """Solver-ready (sorted) pattern set; ``auto`` goes exhaustive iff ``M <= exhaustive_limit``."""
    if mode == "auto":
        mode = "exhaustive" if M <= exhaustive_limit else "sparse"
    if mode == "sparse":
        return generate_sparse(K, M)
    if mode == "exhaustive":
        return sort_by_efficiency(prune(generate(K, M, "exhaustive", exhaustive_limit)))
    raise DomainError(f"unknown mode {mode!r}")
