"""Clique covers of the coprimality graph on squarefree integers.

Vertices are the squarefree integers up to n; a part of the cover is a
pairwise-coprime set containing exactly one even vertex, which names the part.
Three assignment strategies place the odd vertices:

* greedy -- ascending odd vertices, each to the smallest admissible even key;
* capped greedy -- as greedy, but a key stops accepting once it holds a fixed
  number of odd members, which keeps the set of open parts (and therefore
  memory) small enough to stream over very large n;
* most-constrained-first -- odd vertices ordered by ascending number of
  coprime even vertices (ties by vertex), each to the least admissible key.

Admissibility is tracked by a per-part set of used primes: a vertex may join
iff none of its primes is already present.  When a strategy cannot place a
vertex the run continues in audit mode and returns a failure record listing
every unplaced vertex.
"""

from __future__ import annotations

import csv
import json
from array import array
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import arith, sieve
from .lemma import VerificationReport
from .sieve import DEFAULT_SEGMENT, FactorList

GREEDY = "greedy"
CAPPED_GREEDY = "capped_greedy"
MOST_CONSTRAINED_FIRST = "most_constrained_first"


@dataclass(frozen=True)
class StrategyConfig:
    kind: str
    cap: int | None = None
    tie_break: str = "ascending-vertex"

    def __post_init__(self) -> None:
        if self.kind not in (GREEDY, CAPPED_GREEDY, MOST_CONSTRAINED_FIRST):
            raise ValueError(f"unknown strategy {self.kind!r}")
        if self.kind == CAPPED_GREEDY and (self.cap is None or self.cap < 1):
            raise ValueError("capped greedy needs cap >= 1")


@dataclass
class CliqueCover:
    """A partition of the squarefree vertices into pairwise-coprime parts.

    Odd vertices and their assigned even keys are parallel ascending arrays;
    every even vertex keys its own part.
    """

    n: int
    strategy: StrategyConfig
    odd_vertices: np.ndarray  # int64 ascending
    assigned_to: np.ndarray  # int64, even key per odd vertex
    even_vertices: np.ndarray  # int64 ascending

    def part_count(self) -> int:
        return int(self.even_vertices.size)

    def vertex_count(self) -> int:
        return int(self.odd_vertices.size + self.even_vertices.size)

    def assignment(self) -> dict[int, int]:
        """Odd vertex -> even key, as a plain dict."""
        return dict(
            zip(self.odd_vertices.tolist(), self.assigned_to.tolist())
        )

    def parts(self) -> dict[int, list[int]]:
        """Even key -> sorted members (key included)."""
        out: dict[int, list[int]] = {int(m): [int(m)] for m in self.even_vertices}
        for ell, key in zip(self.odd_vertices.tolist(), self.assigned_to.tolist()):
            out[key].append(ell)
        for members in out.values():
            members.sort()
        return out

    def members(self, key: int) -> list[int]:
        sel = self.assigned_to == key
        return sorted([key] + self.odd_vertices[sel].tolist())


@dataclass
class CoverFailure:
    """Audit record for a strategy run that could not place every vertex."""

    n: int
    strategy: StrategyConfig
    unassigned: list[int]
    assigned_count: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "strategy": self.strategy.kind,
            "cap": self.strategy.cap,
            "unassigned": list(self.unassigned),
            "assigned_count": self.assigned_count,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _odd_stream(n: int, segment: int) -> Iterator[FactorList]:
    for fl in sieve.stream_squarefree(1, n, segment):
        if fl.value & 1:
            yield fl


def _even_stream(n: int, segment: int) -> Iterator[FactorList]:
    for fl in sieve.stream_squarefree(2, n, segment):
        if not fl.value & 1:
            yield fl


def _greedy_engine(
    n: int, config: StrategyConfig, segment: int
) -> CliqueCover | CoverFailure:
    if n < 2:
        raise ValueError("n must be >= 2")
    cap = config.cap if config.kind == CAPPED_GREEDY else None
    evens = _even_stream(n, segment)
    even_keys = array("q")
    open_parts: dict[int, tuple[set[int], list[int]]] = {}
    out_odd = array("q")
    out_key = array("q")
    unassigned: list[int] = []

    def admit(key: int, state: tuple[set[int], list[int]], fl: FactorList) -> None:
        used, count = state
        used.update(fl.primes)
        count[0] += 1
        out_odd.append(fl.value)
        out_key.append(key)
        if cap is not None and count[0] >= cap:
            del open_parts[key]

    for fl in _odd_stream(n, segment):
        placed = False
        for key, state in open_parts.items():
            if state[0].isdisjoint(fl.primes):
                admit(key, state, fl)
                placed = True
                break
        while not placed:
            try:
                ev = next(evens)
            except StopIteration:
                break
            even_keys.append(ev.value)
            state = (set(ev.primes), [0])
            open_parts[ev.value] = state
            if state[0].isdisjoint(fl.primes):
                admit(ev.value, state, fl)
                placed = True
        if not placed:
            unassigned.append(fl.value)
    for ev in evens:  # remaining keys become (possibly singleton) parts
        even_keys.append(ev.value)
    if unassigned:
        return CoverFailure(n, config, unassigned, len(out_odd))
    return CliqueCover(
        n,
        config,
        np.frombuffer(out_odd, dtype=np.int64).copy(),
        np.frombuffer(out_key, dtype=np.int64).copy(),
        np.frombuffer(even_keys, dtype=np.int64).copy(),
    )


def run_greedy(n: int, segment: int = DEFAULT_SEGMENT) -> CliqueCover | CoverFailure:
    """Assign ascending odd vertices to the smallest admissible even key."""
    return _greedy_engine(n, StrategyConfig(GREEDY), segment)


def run_capped_greedy(
    n: int, cap: int = 3, segment: int = DEFAULT_SEGMENT
) -> CliqueCover | CoverFailure:
    """Greedy with at most ``cap`` odd members per part; streams over n with
    memory bounded by the open parts plus one sieve segment."""
    return _greedy_engine(n, StrategyConfig(CAPPED_GREEDY, cap=cap), segment)


def most_constrained_order(n: int, segment: int = DEFAULT_SEGMENT) -> np.ndarray:
    """Odd vertices ordered by ascending coprime-even count, ties by vertex."""
    odds, counts = arith.coprime_even_counts(n, segment)
    order = np.lexsort((odds, counts))
    return odds[order]


def run_mcf(n: int, segment: int = DEFAULT_SEGMENT) -> CliqueCover | CoverFailure:
    """Most-constrained-first assignment.

    Computes the coprime-even count of every odd vertex up front (one shared
    pass), then assigns in ascending count order, each vertex to the least
    admissible even key.  Intended for moderate n; the up-front counting pass
    dominates beyond about 1e5.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    config = StrategyConfig(MOST_CONSTRAINED_FIRST)
    odds, odd_primes, evens, even_primes = arith.squarefree_vertices(n, segment)
    multiples: dict[int, int] = {}
    for primes in even_primes:
        divs = [1]
        for p in primes:
            divs += [d * p for d in divs]
        for d in divs:
            multiples[d] = multiples.get(d, 0) + 1
    counts = np.empty(odds.size, dtype=np.int64)
    for i, primes in enumerate(odd_primes):
        total = 0
        for d, sign in arith._signed_divisors(primes):
            total += sign * multiples.get(d, 0)
        counts[i] = total
    order = np.lexsort((odds, counts))
    used: list[set[int]] = [set(primes) | {2} for primes in even_primes]
    even_list = evens.tolist()
    assigned = np.zeros(odds.size, dtype=np.int64)
    unassigned: list[int] = []
    for i in order.tolist():
        primes = odd_primes[i]
        for j, key in enumerate(even_list):
            if used[j].isdisjoint(primes):
                used[j].update(primes)
                assigned[i] = key
                break
        else:
            unassigned.append(int(odds[i]))
    if unassigned:
        return CoverFailure(n, config, sorted(unassigned), int(odds.size) - len(unassigned))
    return CliqueCover(n, config, odds, assigned, evens)


def validate_cover(
    cover: CliqueCover, segment: int = DEFAULT_SEGMENT
) -> VerificationReport:
    """Exhaustively check the cover invariants.

    Partition: the odd and even vertices must be exactly the squarefree values
    up to n (one streaming sieve pass), and every assigned key must be an even
    vertex.  Pairwise coprimality: no prime may divide two members of a part,
    checked by sorting (prime, part-key) incidence codes and scanning for
    duplicates.  Part structure: keys are even, so each part has exactly one
    even member; the part count must equal the even-vertex count.
    """
    n = cover.n
    violations: list[dict] = []
    codes: list[np.ndarray] = []
    optr = 0
    eptr = 0
    aligned = True
    for window in sieve.factor_windows(1, n, segment):
        values = window.values
        odd_mask = (values & 1) == 1
        n_odd = int(np.count_nonzero(odd_mask))
        n_even = values.size - n_odd
        window_odds = values[odd_mask]
        window_evens = values[~odd_mask]
        if not np.array_equal(window_odds, cover.odd_vertices[optr : optr + n_odd]):
            violations.append(
                {"kind": "partition", "detail": "odd vertex set mismatch"}
            )
            aligned = False
            break
        if not np.array_equal(window_evens, cover.even_vertices[eptr : eptr + n_even]):
            violations.append(
                {"kind": "partition", "detail": "even vertex set mismatch"}
            )
            aligned = False
            break
        keys = np.empty(values.size, dtype=np.int64)
        keys[~odd_mask] = window_evens
        keys[odd_mask] = cover.assigned_to[optr : optr + n_odd]
        optr += n_odd
        eptr += n_even
        for p, idx in window.prime_hits:
            codes.append((p << 32) | keys[idx])
        big = window.leftover > 1
        if big.any():
            codes.append((window.leftover[big] << 32) | keys[big])
    if aligned and (
        optr != cover.odd_vertices.size or eptr != cover.even_vertices.size
    ):
        violations.append({"kind": "partition", "detail": "extra vertices in cover"})
    if aligned:
        pos = np.searchsorted(cover.even_vertices, cover.assigned_to)
        pos = np.clip(pos, 0, cover.even_vertices.size - 1)
        bad = cover.even_vertices[pos] != cover.assigned_to
        if bad.any():
            which = int(np.flatnonzero(bad)[0])
            violations.append(
                {
                    "kind": "invalid-key",
                    "vertex": int(cover.odd_vertices[which]),
                    "key": int(cover.assigned_to[which]),
                }
            )
        joined = np.concatenate(codes) if codes else np.empty(0, dtype=np.int64)
        joined.sort()
        dup = np.flatnonzero(joined[1:] == joined[:-1])
        for d in dup[:8].tolist():
            code = int(joined[d])
            prime = code >> 32
            key = code & 0xFFFFFFFF
            members = [
                v
                for v, k in zip(cover.odd_vertices.tolist(), cover.assigned_to.tolist())
                if k == key and v % prime == 0
            ]
            if key % prime == 0:
                members.append(key)
            violations.append(
                {"kind": "shared-prime", "prime": prime, "part": key,
                 "members": sorted(members)}
            )
    expected_parts = arith.count_coprime_squarefree((2,), n // 2).value
    if aligned and cover.part_count() != expected_parts:
        violations.append(
            {
                "kind": "part-count",
                "parts": cover.part_count(),
                "expected": expected_parts,
            }
        )
    return VerificationReport(
        "cover-validation",
        n,
        measured=float(cover.part_count()),
        bound=float(expected_parts),
        margin=0.0 if not violations else -1.0,
        passed=not violations,
        witnesses=violations,
        details={"strategy": cover.strategy.kind, "cap": cover.strategy.cap},
    )


def write_cover_csv(cover: CliqueCover, path: str) -> None:
    """CSV rows (even_key, member), one per vertex, sorted by key then member."""
    keys = np.concatenate([cover.even_vertices, cover.assigned_to])
    members = np.concatenate([cover.even_vertices, cover.odd_vertices])
    order = np.lexsort((members, keys))
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["even_key", "member"])
        for i in order.tolist():
            writer.writerow([int(keys[i]), int(members[i])])
