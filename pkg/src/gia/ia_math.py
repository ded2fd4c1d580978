"""Exact multiplexing-gain arithmetic for interference alignment.

Every quantity is an exact :class:`fractions.Fraction`; floats only appear
when a value is rendered for display (see :func:`to_decimal`).
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction
from math import comb
from typing import Iterator, List, Optional, Union

Rational = Fraction


class GIAError(Exception):
    """Base class for all planner errors."""


class DomainError(GIAError, ValueError):
    """An argument lies outside the domain of a formula."""


class NotALadderDimension(DomainError):
    """Raised when ``m`` is not a feasible extended-channel dimension for ``k`` users."""


@dataclass(frozen=True)
class LadderEntry:
    k: int
    n_star: int
    m: int


@dataclass(frozen=True)
class Instance:
    """A planning instance: ``K`` users with ``T`` antennas each over ``M`` dimensions."""

    K: int
    T: int
    M: int

    def __post_init__(self):
        if self.K < 1 or self.T < 1 or self.M < 1:
            raise DomainError(f"invalid instance K={self.K} T={self.T} M={self.M}")

    @property
    def effective_users(self) -> int:
        return virtual_users(self.K, self.T)


@dataclass(frozen=True)
class OrthogonalRange:
    """Every integer ``1..m_max``; the feasible dimensions when ``k < 3``.

    Never materialized; iterate or test membership lazily.
    """

    m_max: int

    def __contains__(self, m: object) -> bool:
        return isinstance(m, int) and 1 <= m <= self.m_max

    def __iter__(self) -> Iterator[int]:
        return iter(range(1, self.m_max + 1))

    def __len__(self) -> int:
        return self.m_max


def binomial(a: int, b: int) -> int:
    """C(a, b) for nonnegative integers, 0 when ``b > a``."""
    if a < 0 or b < 0:
        raise DomainError("binomial arguments must be nonnegative")
    return comb(a, b)


def interference_index(k: int) -> int:
    """N = (k-1)(k-2) - 1, the exponent governing the alignment ladder."""
    if k < 3:
        raise DomainError(f"interference index needs k >= 3, got {k}")
    return (k - 1) * (k - 2) - 1


def _ladder_m(k: int, n_star: int) -> int:
    n = interference_index(k)
    return binomial(n_star + n + 1, n) + binomial(n_star + n, n)


def ladder_dim(k: int, n_star: int) -> LadderEntry:
    if n_star < 0:
        raise DomainError(f"n_star must be nonnegative, got {n_star}")
    return LadderEntry(k, n_star, _ladder_m(k, n_star))


def iter_ladder(k: int, m_max: int) -> Iterator[LadderEntry]:
    """Yield ladder entries of ``k >= 3`` users with ``m <= m_max`` in increasing m."""
    n_star = 0
    while True:
        entry = ladder_dim(k, n_star)
        if entry.m > m_max:
            return
        yield entry
        n_star += 1


def feasible_dims(k: int, m_max: int) -> Union[List[LadderEntry], OrthogonalRange]:
    """Feasible extended-channel dimensions up to ``m_max``.

    For ``k < 3`` orthogonal multiplexing works on any dimension, so an
    :class:`OrthogonalRange` sentinel is returned instead of a list.
    """
    if k < 1:
        raise DomainError(f"user count must be positive, got {k}")
    if m_max < 1:
        raise DomainError(f"m_max must be positive, got {m_max}")
    if k < 3:
        return OrthogonalRange(m_max)
    return list(iter_ladder(k, m_max))


def invert_dim(k: int, m: int) -> Optional[int]:
    """Return ``n_star`` with ``ladder_dim(k, n_star).m == m``, or None."""
    if m < 1:
        return None
    hi = 1
    while _ladder_m(k, hi) < m:
        hi *= 2
    lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if _ladder_m(k, mid) < m:
            lo = mid + 1
        else:
            hi = mid
    return lo if _ladder_m(k, lo) == m else None


def stream_counts(k: int, n_star: int) -> tuple:
    """Streams (d1, d2) of the first user and of each remaining user."""
    n = interference_index(k)
    return binomial(n_star + n + 1, n), binomial(n_star + n, n)


def mg_bf_from_streams(k: int, n_star: int) -> Fraction:
    """Total BF-IA multiplexing gain computed from the per-user stream counts."""
    d1, d2 = stream_counts(k, n_star)
    return Fraction(d1 + (k - 1) * d2, d1 + d2)


def mg_bf(k: int, n_star: int) -> Fraction:
    """Total BF-IA multiplexing gain, closed form in ``n_star``."""
    n = interference_index(k)
    if n_star < 0:
        raise DomainError(f"n_star must be nonnegative, got {n_star}")
    return Fraction((k - 1) * (n_star + 1) + n_star + n + 1, 2 * n_star + n + 2)


def mg_oia(k: int, n: int) -> tuple:
    """Original IA: returns ``(m, r)`` with ``m = (n+1)^N + n^N`` channel uses."""
    big_n = interference_index(k)
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    a, b = (n + 1) ** big_n, n**big_n
    m = a + b
    return m, Fraction(a + (k - 1) * b, m)


def pattern_gain(k: int, m: int) -> Fraction:
    """Relative MG of a k-user group on m dimensions, times the total M.

    This is ``m * (mg_bf - 1)``; it does not depend on M, which makes it the
    natural integer-like weight for pruning and the DP.
    """
    if k < 3:
        return Fraction(0)
    n_star = invert_dim(k, m)
    if n_star is None:
        raise NotALadderDimension(f"{m} is not a ladder dimension for k={k}")
    return m * (mg_bf(k, n_star) - 1)


def _check_bounds(m: int, M: int) -> None:
    if m < 1 or M < 1:
        raise DomainError("dimensions must be positive")
    if m > M:
        raise DomainError(f"pattern dimension {m} exceeds total {M}")


def pattern_value(k: int, m: int, M: int) -> Fraction:
    """Value v of the group pattern {k, m} when M dimensions are available."""
    _check_bounds(m, M)
    return pattern_gain(k, m) / M


def pattern_efficiency(k: int, m: int, M: int) -> Fraction:
    """Value per dimension, v / m."""
    return pattern_value(k, m, M) / m


def virtual_users(K: int, T: int) -> int:
    """Each antenna acts as a separate user: K' = K * T."""
    if K < 1 or T < 1:
        raise DomainError(f"K and T must be positive, got K={K} T={T}")
    return K * T


def to_decimal(x: Fraction, sig: int = 6) -> Decimal:
    """Correctly rounded decimal with ``sig`` significant digits (half-even)."""
    ctx = Context(prec=sig, rounding=ROUND_HALF_EVEN)
    return ctx.divide(Decimal(x.numerator), Decimal(x.denominator))


def format_decimal(x: Fraction, sig: int = 6) -> str:
    return format(to_decimal(x, sig), "f")
