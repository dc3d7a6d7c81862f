"""Orienting the blocks of a twofold system into directed 3-cycles.

Each unordered pair lies in exactly two blocks, and a valid orientation
must produce both ordered versions of the pair, so the two blocks
sharing a pair are forced to induce opposite directions on it.  That
makes orientation a parity-constraint problem on the block graph: once
one block in a connected component is fixed, the whole component
follows.  A component with contradictory parity kills every assignment;
otherwise there are exactly 2^(number of components) valid assignments.
"""

from __future__ import annotations

from itertools import product
from typing import Dict, List, Optional, Tuple

from .designs import (
    CyclicTriple,
    InternalInconsistency,
    MalformedDesign,
    MendelsohnTripleSystem,
    TwofoldTripleSystem,
    validate_mts,
    validate_tts,
)
from .iso import canonical_form, dedupe

# forward cycle of a sorted block (a,b,c) is (a,b,c): it walks pairs
# {a,b} and {b,c} ascending and pair {a,c} descending
_PAIR_BITS = ((0, 1, 0), (1, 2, 0), (0, 2, 1))


def _parity_components(t: TwofoldTripleSystem):
    """Group blocks into parity-linked components.

    Returns (comp, par, ncomps) where block i must take orientation
    root_choice[comp[i]] XOR par[i], or None when parity is contradictory
    (the system is not orientable).
    """
    blocks = t.blocks
    partners: Dict[tuple, List[Tuple[int, int]]] = {}
    for i, blk in enumerate(blocks):
        for x, y, dbit in _PAIR_BITS:
            partners.setdefault((blk[x], blk[y]), []).append((i, dbit))

    comp = [-1] * len(blocks)
    par = [0] * len(blocks)
    ncomps = 0
    for start in range(len(blocks)):
        if comp[start] >= 0:
            continue
        comp[start] = ncomps
        par[start] = 0
        stack = [start]
        while stack:
            i = stack.pop()
            blk = blocks[i]
            for x, y, dbit in _PAIR_BITS:
                for j, dj in partners[(blk[x], blk[y])]:
                    if j == i:
                        continue
                    # opposite induced directions: o_i XOR o_j = d_i XOR d_j XOR 1
                    want = par[i] ^ dbit ^ dj ^ 1
                    if comp[j] == -1:
                        comp[j] = ncomps
                        par[j] = want
                        stack.append(j)
                    elif par[j] != want:
                        return None
        ncomps += 1
    return comp, par, ncomps


def _require_valid(t: TwofoldTripleSystem) -> None:
    if not validate_tts(t).valid:
        raise MalformedDesign("not a valid twofold triple system")


def _materialize(t: TwofoldTripleSystem, vec: tuple) -> MendelsohnTripleSystem:
    triples = tuple(
        CyclicTriple(a, b, c) if o == 0 else CyclicTriple(a, c, b)
        for (a, b, c), o in zip(t.blocks, vec))
    m = MendelsohnTripleSystem(t.v, triples)
    if not validate_mts(m).valid:
        raise InternalInconsistency("parity-consistent assignment produced "
                                    "an invalid directed system")
    return m


def enumerate_orientations(t: TwofoldTripleSystem) -> List[MendelsohnTripleSystem]:
    """Every complete valid assignment, ordered by assignment vector.

    Copies of a repeated block are distinguishable here, so two
    assignments can induce the same set of directed triples; both are
    returned.  The result has even length for any orientable input
    because flipping every block of a valid assignment is again valid.
    """
    _require_valid(t)
    res = _parity_components(t)
    if res is None:
        return []
    comp, par, ncomps = res
    n = len(t.blocks)
    vectors = sorted(
        tuple(bits[comp[i]] ^ par[i] for i in range(n))
        for bits in product((0, 1), repeat=ncomps))
    copies = _repeated_positions(t)
    out = []
    for vec in vectors:
        for i, j in copies:
            if vec[i] == vec[j]:
                raise InternalInconsistency(
                    "copies of a repeated block oriented identically")
        out.append(_materialize(t, vec))
    return out


def _repeated_positions(t: TwofoldTripleSystem) -> List[Tuple[int, int]]:
    pos: Dict[tuple, int] = {}
    pairs = []
    for i, blk in enumerate(t.blocks):
        if blk in pos:
            pairs.append((pos[blk], i))
        pos[blk] = i
    return pairs


def is_orientable(t: TwofoldTripleSystem) -> bool:
    """Early-exit check: parity consistency alone decides."""
    _require_valid(t)
    return _parity_components(t) is not None


def orient_distinct(t: TwofoldTripleSystem) -> List[MendelsohnTripleSystem]:
    """Nonisomorphic orientations, ordered by canonical form."""
    all_orientations = enumerate_orientations(t)
    distinct = list(dict.fromkeys(all_orientations))  # collapse equal triple sets
    return sorted(dedupe(distinct), key=canonical_form)
