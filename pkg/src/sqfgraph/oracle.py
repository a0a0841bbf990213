"""Ground-truth brute force at small n.

The complement of the coprimality graph joins two squarefree values when they
share a prime factor; independent sets on one side are cliques on the other.
This module computes exact maximum independent sets by branch-and-bound
maximum clique over the share-a-factor graph (bitset adjacency, greedy
coloring bound), enumerates all maximum witnesses for uniqueness questions,
and evaluates the empirical distribution of the density factor.

The vertex 1 shares no factor with anything, including itself; it is treated
as self-looped and never participates in an independent set.  For n >= 2 this
does not change the independence number.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from . import sieve
from .sieve import DEFAULT_SEGMENT


class ResourceLimitExceeded(RuntimeError):
    """The request exceeds the configured exact-computation limit."""


@dataclass(frozen=True)
class ShareFactorGraph:
    """Bitset adjacency over the squarefree values <= n; edges share a prime."""

    n: int
    vertices: tuple[int, ...]
    adj: tuple[int, ...]


def build_share_factor_graph(n: int) -> ShareFactorGraph:
    if n < 2:
        raise ValueError("n must be >= 2")
    members: dict[int, int] = {}
    vertices: list[int] = []
    factor_lists: list[tuple[int, ...]] = []
    for fl in sieve.stream_squarefree(1, n):
        for p in fl.primes:
            members[p] = members.get(p, 0) | (1 << len(vertices))
        vertices.append(fl.value)
        factor_lists.append(fl.primes)
    adj = []
    for i, primes in enumerate(factor_lists):
        mask = 0
        for p in primes:
            mask |= members[p]
        adj.append(mask & ~(1 << i))
    return ShareFactorGraph(n, tuple(vertices), tuple(adj))


def _greedy_clique(adj: Sequence[int], cand: int) -> int:
    """A maximal clique mask grown by repeatedly taking the candidate with the
    most remaining candidate neighbours."""
    clique = 0
    while cand:
        best_v = -1
        best_deg = -1
        scan = cand
        while scan:
            bit = scan & -scan
            v = bit.bit_length() - 1
            deg = (adj[v] & cand).bit_count()
            if deg > best_deg:
                best_deg = deg
                best_v = v
            scan ^= bit
        clique |= 1 << best_v
        cand &= adj[best_v]
    return clique


def _max_clique(adj: Sequence[int], cand: int) -> tuple[int, int]:
    """Exact maximum clique (size, mask) by branch-and-bound with a greedy
    coloring bound, candidates processed in reverse color order."""
    best_mask = _greedy_clique(adj, cand)
    best_size = best_mask.bit_count()

    def expand(rsize: int, rmask: int, pool: int) -> None:
        nonlocal best_size, best_mask
        if not pool:
            if rsize > best_size:
                best_size = rsize
                best_mask = rmask
            return
        order: list[int] = []
        colors: list[int] = []
        q = pool
        color = 0
        while q:
            color += 1
            avail = q
            while avail:
                bit = avail & -avail
                v = bit.bit_length() - 1
                order.append(v)
                colors.append(color)
                avail &= ~adj[v] & ~bit
                q ^= bit
        for i in range(len(order) - 1, -1, -1):
            if rsize + colors[i] <= best_size:
                return
            v = order[i]
            bit = 1 << v
            expand(rsize + 1, rmask | bit, pool & adj[v])
            pool &= ~bit

    expand(0, 0, cand)
    return best_size, best_mask


def _candidate_mask(graph: ShareFactorGraph) -> int:
    cand = (1 << len(graph.vertices)) - 1
    if graph.vertices and graph.vertices[0] == 1:
        cand &= ~1  # vertex 1 is self-looped by convention
    return cand


def max_independent_set_exact(
    n: int, limit: int = 2000
) -> tuple[int, list[int]]:
    """Exact independence number of the coprimality graph with one witness.

    Equivalently the maximum clique of the share-a-factor graph.  Refuses n
    beyond ``limit`` rather than risk an unverified answer.
    """
    if n > limit:
        raise ResourceLimitExceeded(
            f"exact independent set limited to n <= {limit}, got {n}"
        )
    graph = build_share_factor_graph(n)
    size, mask = _max_clique(graph.adj, _candidate_mask(graph))
    witness = [graph.vertices[i] for i in range(len(graph.vertices)) if mask >> i & 1]
    return size, sorted(witness)


def _maximal_cliques(adj: Sequence[int], cand: int) -> list[int]:
    """All maximal cliques (as masks) by pivoted Bron-Kerbosch."""
    out: list[int] = []

    def extend(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(r)
            return
        pivot_pool = p | x
        pivot = -1
        pivot_deg = -1
        scan = pivot_pool
        while scan:
            bit = scan & -scan
            v = bit.bit_length() - 1
            deg = (adj[v] & p).bit_count()
            if deg > pivot_deg:
                pivot_deg = deg
                pivot = v
            scan ^= bit
        scan = p & ~adj[pivot]
        while scan:
            bit = scan & -scan
            v = bit.bit_length() - 1
            extend(r | bit, p & adj[v], x & adj[v])
            p ^= bit
            x |= bit
            scan ^= bit

    extend(0, cand, 0)
    return out


@dataclass
class WitnessReport:
    """All maximum independent sets at one n."""

    n: int
    size: int
    even_vertices: tuple[int, ...]
    unique: bool
    families: tuple[tuple[int, ...], ...]
    alternatives: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "size": self.size,
            "even_vertices": list(self.even_vertices),
            "unique": self.unique,
            "family_count": len(self.families),
            "alternatives": [list(a) for a in self.alternatives],
        }


def maximum_witness_report(n: int, limit: int = 120) -> WitnessReport:
    """Enumerate every maximum independent set and compare against the even
    vertices.  Exhaustive; refuses n beyond ``limit``."""
    if n > limit:
        raise ResourceLimitExceeded(
            f"witness enumeration limited to n <= {limit}, got {n}"
        )
    graph = build_share_factor_graph(n)
    cliques = _maximal_cliques(graph.adj, _candidate_mask(graph))
    size = max(c.bit_count() for c in cliques)
    families = sorted(
        tuple(
            graph.vertices[i]
            for i in range(len(graph.vertices))
            if mask >> i & 1
        )
        for mask in cliques
        if mask.bit_count() == size
    )
    evens = tuple(v for v in graph.vertices if v % 2 == 0)
    alternatives = tuple(f for f in families if f != evens)
    return WitnessReport(
        n=n,
        size=size,
        even_vertices=evens,
        unique=len(families) == 1 and families[0] == evens,
        families=tuple(families),
        alternatives=alternatives,
    )


def density_factor_cdf(
    n: int,
    grid: Sequence[Fraction | int],
    segment: int = DEFAULT_SEGMENT,
) -> list[tuple[Fraction, Fraction]]:
    """Empirical distribution of the density factor over odd vertices <= n.

    For each grid threshold t, the exact fraction of odd squarefree values
    whose density factor is at most t.  Thresholds are rationals and every
    comparison is exact: the density factor of a value v is v / prod(p+1), so
    v * denom <= numer * prod(p+1) decides each point in integers.
    """
    if n < 3:
        raise ValueError("n must be >= 3")
    ts = [Fraction(t) for t in grid]
    if not ts:
        raise ValueError("grid must be nonempty")
    if any(t <= 0 or t > 1 for t in ts):
        raise ValueError("grid thresholds must lie in (0, 1]")
    if any(b >= a for a, b in zip(ts[1:], ts)):
        raise ValueError("grid must be strictly ascending")
    common = 1
    for t in ts:
        common = lcm(common, t.denominator)
    if common > 10**8 or n * common > 2**62:
        return _cdf_exact_slow(n, ts, segment)
    numers = np.asarray([t.numerator * (common // t.denominator) for t in ts])
    hist = np.zeros(common + 2, dtype=np.int64)
    total = 0
    for window in sieve.factor_windows(1, n, segment):
        values = window.values
        plus = np.ones(values.size, dtype=np.int64)
        for p, idx in window.prime_hits:
            plus[idx] *= p + 1
        big = window.leftover > 1
        plus[big] *= window.leftover[big] + 1
        odd = (values & 1) == 1
        v = values[odd]
        pl = plus[odd]
        total += int(v.size)
        # smallest integer a with v/plus <= a/common
        a_min = (v * common + pl - 1) // pl
        np.add.at(hist, np.minimum(a_min, common + 1), 1)
    cum = np.cumsum(hist)
    return [
        (t, Fraction(int(cum[a]), total)) for t, a in zip(ts, numers.tolist())
    ]


def _cdf_exact_slow(
    n: int, ts: list[Fraction], segment: int
) -> list[tuple[Fraction, Fraction]]:
    counts = [0] * len(ts)
    total = 0
    for fl in sieve.stream_squarefree(1, n, segment):
        if not fl.value & 1:
            continue
        total += 1
        plus = 1
        for p in fl.primes:
            plus *= p + 1
        f = Fraction(fl.value, plus)
        for i, t in enumerate(ts):
            if f <= t:
                counts[i] += 1
    return [(t, Fraction(c, total)) for t, c in zip(ts, counts)]
