"""Exhaustive generation of small systems, one per isomorphism class.

Blocks are added in lexicographically nondecreasing order.  At every
step the next block is forced to contain the least pair that still
needs coverage: any block covering that pair later in sorted order
would have to contain a lexicographically smaller deficient pair,
contradicting minimality.  The third point always exceeds both pair
points for the same reason.  So each valid complete sorted block list
is built exactly once, and a prefix-canonicity cut (every prefix of a
lex-least list is itself lex-least) discards relabeled duplicates long
before completion.  Survivors equal their own canonical form.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, List, Optional

from .designs import TwofoldTripleSystem, MendelsohnTripleSystem, block_count
from .iso import _is_lex_min, dedupe
from .orient import orient_distinct

MAX_ORDER = 10


def _check_order(v: int) -> None:
    if not isinstance(v, int) or v % 3 not in (0, 1):
        raise ValueError(
            "no twofold triple systems of order %r: need v ≡ 0 or 1 (mod 3)"
            % (v,))
    if not 3 <= v <= MAX_ORDER:
        raise ValueError("supported orders are 3..%d, got %r" % (MAX_ORDER, v))


def _generate(v: int, progress: Optional[Callable[[int], None]] = None) -> List[tuple]:
    pairs_left = [[2] * v for _ in range(v)]
    blocks: List[tuple] = []
    found: List[tuple] = []

    def least_deficient():
        for a in range(v):
            row = pairs_left[a]
            for b in range(a + 1, v):
                if row[b]:
                    return a, b
        return None

    def rec() -> None:
        pair = least_deficient()
        if pair is None:
            found.append(tuple(blocks))
            if progress is not None:
                progress(len(found))
            return
        a, b = pair
        last = blocks[-1] if blocks else None
        row_a, row_b = pairs_left[a], pairs_left[b]
        for c in range(b + 1, v):
            if not (row_a[c] and row_b[c]):
                continue
            blk = (a, b, c)
            if last is not None and blk < last:
                continue
            row_a[b] -= 1
            row_a[c] -= 1
            row_b[c] -= 1
            blocks.append(blk)
            if _is_lex_min(blocks, "tts"):
                rec()
            blocks.pop()
            row_a[b] += 1
            row_a[c] += 1
            row_b[c] += 1

    rec()
    return found


@lru_cache(maxsize=None)
def _enumerate_tts_cached(v: int) -> tuple:
    return tuple(
        TwofoldTripleSystem(v, rows) for rows in _generate(v))


def enumerate_tts(v: int,
                  progress: Optional[Callable[[int], None]] = None,
                  ) -> List[TwofoldTripleSystem]:
    """All twofold triple systems of order v, one per isomorphism class.

    Output is in lexicographic order of block lists; every design's
    block list is its own canonical form.  Orders above 9 take a long
    time (v=10 has 960 classes); results are cached per process.
    """
    _check_order(v)
    if progress is not None:
        return [TwofoldTripleSystem(v, rows) for rows in _generate(v, progress)]
    return list(_enumerate_tts_cached(v))


@lru_cache(maxsize=None)
def _pipeline_mts_cached(v: int) -> tuple:
    oriented: List[MendelsohnTripleSystem] = []
    for t in _enumerate_tts_cached(v):
        oriented.extend(orient_distinct(t))
    return tuple(dedupe(oriented))


def pipeline_mts(v: int) -> List[MendelsohnTripleSystem]:
    """All Mendelsohn triple systems of order v, one per isomorphism class.

    Built by orienting each generated twofold system and deduplicating
    globally.  Order 6 yields an empty list: the unique TTS(6) is not
    orientable.
    """
    _check_order(v)
    return list(_pipeline_mts_cached(v))
