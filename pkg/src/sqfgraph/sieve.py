"""Squarefree sieving over integer ranges.

Produces squarefree flags, Mobius values, primes, and distinct-prime-factor
data, including a segmented streaming mode whose working memory is bounded by
the segment size plus the prime table up to sqrt(hi).  All tables are
immutable after construction and safe to share.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from math import isqrt
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

DEFAULT_SEGMENT = 1 << 20

# build_squarefree_table refuses ranges longer than this; callers must switch
# to stream_squarefree / factor_windows instead.
MAX_TABLE_SIZE = 1 << 28


class RangeTooLarge(ValueError):
    """The requested range does not fit in one in-memory table."""


class FactorList(NamedTuple):
    """An integer together with its distinct prime factors, ascending.

    For a squarefree value the product of ``primes`` equals ``value``.
    """

    value: int
    primes: tuple[int, ...]


def primes_up_to(n: int) -> np.ndarray:
    """All primes <= n as an int64 array."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    composite = np.zeros(n + 1, dtype=bool)
    composite[:2] = True
    for p in range(2, isqrt(n) + 1):
        if not composite[p]:
            composite[p * p :: p] = True
    return np.flatnonzero(~composite).astype(np.int64)


@dataclass(frozen=True)
class MobiusTable:
    """Mobius values for 1..limit; values[d] is 0, -1 or +1 (values[0] = 0)."""

    limit: int
    values: np.ndarray  # int8, length limit + 1


def mobius_table(limit: int) -> MobiusTable:
    """Sieve Mobius values up to ``limit`` inclusive."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    for p in primes_up_to(limit).tolist():
        mu[p::p] *= -1
        mu[p * p :: p * p] = 0
    mu.setflags(write=False)
    return MobiusTable(limit, mu)


_MOBIUS_CACHE: MobiusTable | None = None
_PRIMES_CACHE: np.ndarray = np.empty(0, dtype=np.int64)
_PRIMES_CACHE_LIMIT = 1


def shared_mobius(limit: int) -> MobiusTable:
    """A cached MobiusTable covering at least ``limit``."""
    global _MOBIUS_CACHE
    if _MOBIUS_CACHE is None or _MOBIUS_CACHE.limit < limit:
        _MOBIUS_CACHE = mobius_table(max(limit, 1024))
    return _MOBIUS_CACHE


def shared_primes(limit: int) -> np.ndarray:
    """A cached ascending prime array covering at least ``limit``."""
    global _PRIMES_CACHE, _PRIMES_CACHE_LIMIT
    if _PRIMES_CACHE_LIMIT < limit:
        _PRIMES_CACHE = primes_up_to(max(limit, 1024))
        _PRIMES_CACHE_LIMIT = max(limit, 1024)
    return _PRIMES_CACHE


@dataclass(frozen=True)
class SquarefreeTable:
    """Bit-indexed squarefree flags over the inclusive range [lo, hi]."""

    lo: int
    hi: int
    flags: np.ndarray  # bool, flags[m - lo] is True iff m is squarefree

    def is_squarefree(self, m: int) -> bool:
        if not self.lo <= m <= self.hi:
            raise IndexError(f"{m} outside [{self.lo}, {self.hi}]")
        return bool(self.flags[m - self.lo])

    def count(self) -> int:
        return int(np.count_nonzero(self.flags))

    def values(self) -> np.ndarray:
        """Ascending squarefree values in the range."""
        return np.flatnonzero(self.flags).astype(np.int64) + self.lo

    def to_bytes(self) -> bytes:
        """Little-endian (lo, hi) header, then the flag bits padded to bytes."""
        bits = np.packbits(self.flags, bitorder="little").tobytes()
        return struct.pack("<QQ", self.lo, self.hi) + bits

    @classmethod
    def from_bytes(cls, data: bytes) -> "SquarefreeTable":
        lo, hi = struct.unpack_from("<QQ", data)
        size = hi - lo + 1
        payload = data[16:]
        if len(payload) != (size + 7) // 8:
            raise ValueError("payload length does not match header range")
        flags = np.unpackbits(
            np.frombuffer(payload, dtype=np.uint8), count=size, bitorder="little"
        ).astype(bool)
        flags.setflags(write=False)
        return cls(lo, hi, flags)


def build_squarefree_table(
    lo: int, hi: int, max_size: int = MAX_TABLE_SIZE
) -> SquarefreeTable:
    """Squarefree flags for [lo, hi] by striking multiples of p^2, p <= sqrt(hi).

    Raises RangeTooLarge when the range exceeds ``max_size``; use the
    streaming interface for such ranges.
    """
    if not 1 <= lo <= hi:
        raise ValueError("need 1 <= lo <= hi")
    size = hi - lo + 1
    if size > max_size:
        raise RangeTooLarge(
            f"range of {size} values exceeds table limit {max_size}; "
            "use stream_squarefree instead"
        )
    flags = np.ones(size, dtype=bool)
    for p in primes_up_to(isqrt(hi)).tolist():
        q = p * p
        start = -(-lo // q) * q
        if start <= hi:
            flags[start - lo :: q] = False
    flags.setflags(write=False)
    return SquarefreeTable(lo, hi, flags)


def factor_distinct(m: int, primes: Sequence[int] | np.ndarray) -> FactorList:
    """Distinct prime factors of m, ascending.

    ``primes`` must include every prime <= sqrt(m); any cofactor remaining
    after trial division is itself prime and is appended.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    out: list[int] = []
    rem = m
    for p in primes:
        p = int(p)
        if p * p > rem:
            break
        if rem % p == 0:
            out.append(p)
            while rem % p == 0:
                rem //= p
    if rem > 1:
        out.append(rem)
    return FactorList(m, tuple(out))


def factored(m: int) -> FactorList:
    """factor_distinct with a cached prime table sized for m."""
    return factor_distinct(m, shared_primes(isqrt(m) + 1))


def is_squarefree(m: int) -> bool:
    """True iff no prime square divides m (m >= 1)."""
    fl = factored(m)
    prod = 1
    for p in fl.primes:
        prod *= p
    return prod == m


def count_squarefree(n: int, mobius: MobiusTable | None = None) -> int:
    """Exact number of squarefree integers in [1, n].

    Evaluates the Mobius inclusion-exclusion sum of mu(d) * floor(n / d^2),
    truncated at d <= sqrt(n) where the floor vanishes; O(sqrt(n)) given a
    Mobius table to sqrt(n).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    B = isqrt(n)
    if B == 0:
        return 0
    tab = mobius if mobius is not None and mobius.limit >= B else shared_mobius(B)
    mu = tab.values[1 : B + 1].astype(np.int64)
    d = np.arange(1, B + 1, dtype=np.int64)
    return int(np.sum(mu * (n // (d * d))))


class FactorWindow(NamedTuple):
    """One sieved segment: squarefree values plus factor structure.

    ``prime_hits`` lists, for each sieved prime p, the positions (into
    ``values``) it divides.  ``leftover`` holds the cofactor of each value
    after dividing out all sieved primes; it is either 1 or a single prime
    larger than sqrt of the window end.
    """

    values: np.ndarray  # int64, ascending squarefree values
    prime_hits: list[tuple[int, np.ndarray]]
    leftover: np.ndarray  # int64, parallel to values


def factor_windows(
    lo: int, hi: int, segment: int = DEFAULT_SEGMENT
) -> Iterator[FactorWindow]:
    """Segmented squarefree sieve with factor data, ascending windows.

    Working memory is O(segment + sqrt(hi)).  Output is independent of the
    segment size.
    """
    if lo < 1:
        raise ValueError("lo must be >= 1")
    if segment < 1:
        raise ValueError("segment must be >= 1")
    if hi < lo:
        return
    primes = primes_up_to(isqrt(hi)).tolist()
    for a in range(lo, hi + 1, segment):
        b = min(a + segment - 1, hi)
        length = b - a + 1
        flags = np.ones(length, dtype=bool)
        for p in primes:
            q = p * p
            if q > b:
                break
            start = -(-a // q) * q
            if start <= b:
                flags[start - a :: q] = False
        values = np.arange(a, b + 1, dtype=np.int64)[flags]
        rank = np.cumsum(flags, dtype=np.int64) - 1
        leftover = values.copy()
        hits: list[tuple[int, np.ndarray]] = []
        for p in primes:
            if p * p > b:
                break
            start = -(-a // p) * p
            if start > b:
                continue
            pos = np.arange(start - a, length, p, dtype=np.int64)
            pos = pos[flags[pos]]
            if pos.size:
                idx = rank[pos]
                leftover[idx] //= p
                hits.append((p, idx))
        yield FactorWindow(values, hits, leftover)


def stream_squarefree(
    lo: int, hi: int, segment: int = DEFAULT_SEGMENT
) -> Iterator[FactorList]:
    """Yield every squarefree integer in [lo, hi] ascending, with factors."""
    for window in factor_windows(lo, hi, segment):
        facs: list[list[int]] = [[] for _ in range(window.values.size)]
        for p, idx in window.prime_hits:
            for i in idx.tolist():
                facs[i].append(p)
        for v, extra, fl in zip(
            window.values.tolist(), window.leftover.tolist(), facs
        ):
            if extra > 1:
                fl.append(extra)
            yield FactorList(v, tuple(fl))
