"""Search for ell-good sequencings of Mendelsohn systems.

A sequencing is a permutation [x_1 ... x_v] of the points, read
cyclically: position 1 follows position v.  It is ell-good when no
window of ell consecutive positions (wrapping around the end) contains
the three points of any triple of the design so that reading the
window left to right visits them in cyclic order.  Reversed traversals
are allowed; only the forward rotations of a stored triple are
forbidden.  Any permutation is 2-good, since three distinct positions
cannot fit in a window of two.

The search fills positions left to right.  For a window pattern with
positions (q, q+d1, q+d2) mod v, 0 < d1 < d2 < ell, the pattern is
decided as soon as its largest position p is filled: the two earlier
positions hold known points, and because the design covers each
ordered pair at most once there is at most one point that would
complete a forbidden triple.  So every placement reduces to a handful
of successor-table lookups, one per precomputed position pair, and the
forbidden points merge into a bitmask.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterator, List, Optional, Tuple

from .designs import CyclicTriple, MendelsohnTripleSystem

MODES = ("exists", "count", "least", "enumerate")


class Sequencing(tuple):
    """A permutation of the points 0..v-1; positions read left to right."""

    __slots__ = ()

    def __new__(cls, points) -> "Sequencing":
        s = tuple(points)
        if sorted(s) != list(range(len(s))):
            raise ValueError("not a permutation of 0..%d: %r" % (len(s) - 1, s))
        return tuple.__new__(cls, s)

    def __getnewargs__(self) -> tuple:
        return (tuple(self),)

    def digits(self) -> str:
        """Compact rendering: concatenated digits while points fit in one."""
        if len(self) <= 10:
            return "".join(str(p) for p in self)
        return " ".join(str(p) for p in self)

    def __repr__(self) -> str:
        return "[%s]" % " ".join(str(p) for p in self)


@dataclass(frozen=True)
class SearchReport:
    label: Optional[str]
    ell: int
    mode: str
    exists: bool
    count: Optional[int] = None
    least: Optional[Sequencing] = None


@dataclass(frozen=True)
class DeletionReport:
    label: Optional[str]
    ell: int
    rows: tuple   # (omitted CyclicTriple, count, least Sequencing or None)


def _check_ell(ell: int, v: int) -> None:
    if not isinstance(ell, int) or not 2 <= ell <= v:
        raise ValueError("window length must satisfy 2 <= ell <= v, got %r" % (ell,))


def is_ell_good(m: MendelsohnTripleSystem, s, ell: int) -> bool:
    """Direct predicate check; the search must agree with this oracle."""
    _check_ell(ell, m.v)
    s = tuple(s)
    if len(s) != m.v or sorted(s) != list(range(m.v)):
        raise ValueError("sequencing is not a permutation of the design's points")
    v = m.v
    pos = {p: i for i, p in enumerate(s)}
    for t in m.triples:
        x, y, z = t
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            i = pos[a]
            d1 = (pos[b] - i) % v
            d2 = (pos[c] - i) % v
            if 0 < d1 < d2 <= ell - 1:
                return False
    return True


@lru_cache(maxsize=None)
def _window_pairs(v: int, ell: int) -> tuple:
    """For each position p: pairs (u, w) of earlier-filled positions such
    that filling p completes a window pattern whose first two points sit
    at u and w.  The forbidden point at p is then the successor of
    (point at u, point at w)."""
    pre = [set() for _ in range(v)]
    for q in range(v):
        for d2 in range(2, ell):
            for d1 in range(1, d2):
                pat = (q, (q + d1) % v, (q + d2) % v)
                p = max(pat)
                i = pat.index(p)
                pre[p].add((pat[(i + 1) % 3], pat[(i + 2) % 3]))
    return tuple(tuple(sorted(s)) for s in pre)


def _successor_table(m: MendelsohnTripleSystem) -> List[int]:
    v = m.v
    nxt = [v] * (v * v)   # v = sentinel: no triple continues this pair
    for a, b, c in m.triples:
        nxt[a * v + b] = c
        nxt[b * v + c] = a
        nxt[c * v + a] = b
    return nxt


def _count_all(m: MendelsohnTripleSystem, ell: int) -> Tuple[int, Optional[Sequencing]]:
    """Full traversal: number of ell-good sequencings plus the least one."""
    v = m.v
    nxt = _successor_table(m)
    pre = _window_pairs(v, ell)
    bit = [1 << i for i in range(v)] + [0]
    full = (1 << v) - 1
    seq = [0] * v
    last = v - 1
    first: List[Optional[tuple]] = [None]

    def rec(p: int, used: int) -> int:
        forb = 0
        for u, w in pre[p]:
            forb |= bit[nxt[seq[u] * v + seq[w]]]
        avail = full & ~used & ~forb
        if p == last:
            if avail and first[0] is None:
                seq[p] = (avail & -avail).bit_length() - 1
                first[0] = tuple(seq)
            return avail.bit_count()
        n = 0
        while avail:
            b = avail & -avail
            seq[p] = b.bit_length() - 1
            n += rec(p + 1, used | b)
            avail ^= b
        return n

    total = rec(0, 0)
    least = Sequencing(first[0]) if first[0] is not None else None
    return total, least


def _iter_all(m: MendelsohnTripleSystem, ell: int) -> Iterator[Sequencing]:
    """Stream every ell-good sequencing in ascending lexicographic order."""
    v = m.v
    nxt = _successor_table(m)
    pre = _window_pairs(v, ell)
    bit = [1 << i for i in range(v)] + [0]
    full = (1 << v) - 1
    seq = [0] * v
    last = v - 1

    def rec(p: int, used: int) -> Iterator[Sequencing]:
        forb = 0
        for u, w in pre[p]:
            forb |= bit[nxt[seq[u] * v + seq[w]]]
        avail = full & ~used & ~forb
        while avail:
            b = avail & -avail
            seq[p] = b.bit_length() - 1
            if p == last:
                yield Sequencing(seq)
            else:
                yield from rec(p + 1, used | b)
            avail ^= b

    return rec(0, 0)


def enumerate_sequencings(m: MendelsohnTripleSystem, ell: int) -> Iterator[Sequencing]:
    """Lazy stream of all ell-good sequencings, lexicographically ascending."""
    _check_ell(ell, m.v)
    if ell == 2:
        return (Sequencing(p) for p in permutations(range(m.v)))
    return _iter_all(m, ell)


def search(m: MendelsohnTripleSystem, ell: int, mode: str = "count",
           label: Optional[str] = None) -> SearchReport:
    """Run the pruned backtracking search.

    mode="exists" stops at the first solution; mode="least" returns it
    (candidates are tried in ascending order, so the first solution is
    the lexicographic minimum); mode="count" walks the whole tree and
    reports the exact count together with the least solution.  For the
    full stream use enumerate_sequencings.
    """
    if mode not in MODES or mode == "enumerate":
        raise ValueError("mode must be one of exists, count or least; "
                         "use enumerate_sequencings for the stream")
    _check_ell(ell, m.v)
    if label is None:
        label = m.label

    if ell == 2:
        # three distinct positions never fit in a window of two
        count = math.factorial(m.v) if mode == "count" else None
        least = None
        if mode in ("count", "least"):
            least = Sequencing(range(m.v))
        return SearchReport(label, ell, mode, True, count, least)

    if mode == "count":
        count, least = _count_all(m, ell)
        return SearchReport(label, ell, mode, count > 0, count, least)

    first = next(_iter_all(m, ell), None)
    if mode == "exists":
        return SearchReport(label, ell, mode, first is not None)
    return SearchReport(label, ell, mode, first is not None, None, first)


def max_good_ell(m: MendelsohnTripleSystem) -> int:
    """Largest ell admitting an ell-good sequencing; 2 when only the
    trivial window works.

    Probes downward from floor((v-1)/2), so everything above the
    returned value has been checked empty up to that ceiling.
    """
    ceiling = (m.v - 1) // 2
    for ell in range(ceiling, 2, -1):
        if search(m, ell, mode="exists").exists:
            return ell
    return 2


def deletion_experiment(m: MendelsohnTripleSystem, ell: int) -> DeletionReport:
    """Count sequencings of every one-triple-deleted partial system.

    Rows follow the stored triple order of m.  Removing a triple only
    removes constraints, so every row's count is at least the count of
    the full system.
    """
    _check_ell(ell, m.v)
    rows = []
    for t in m.triples:
        rest = tuple(x for x in m.triples if x != t)
        sub = MendelsohnTripleSystem(m.v, rest, label=m.label, partial=True)
        rep = search(sub, ell, mode="count")
        rows.append((t, rep.count, rep.least))
    return DeletionReport(m.label, ell, tuple(rows))
