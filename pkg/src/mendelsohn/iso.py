"""Canonical forms and isomorphism testing.

Two twofold systems are isomorphic when some relabeling of the points
maps one block multiset onto the other.  Two directed systems are
isomorphic when some relabeling maps one onto the other or onto the
other's converse: a design and its mirror count as one class, which is
how the reference catalogs number their entries (each Tv.i carries
exactly the Mv.i.j classes, with converse pairs listed once).  The
canonical form is the lexicographically least sorted row list over all
v! relabelings (and, for directed systems, over both mirrors), so
isomorphism reduces to equality.

The search assigns new labels 0,1,2,... to old points one at a time.
Unassigned points are temporarily given the next label to be placed,
which never overstates any row: the resulting sorted row list is a
componentwise lower bound for every completion, and a componentwise
lower bound on sorted lists is also a lexicographic one.  Branches
whose bound already exceeds the best complete labeling are cut.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

from .designs import (
    CyclicTriple,
    MendelsohnTripleSystem,
    TwofoldTripleSystem,
    UnorderedTriple,
)

Design = Union[TwofoldTripleSystem, MendelsohnTripleSystem]


@dataclass(frozen=True, order=True)
class CanonicalForm:
    kind: str
    v: int
    rows: tuple


def _sorted_row(r: tuple, lab: dict, nxt: int) -> tuple:
    a = lab.get(r[0], nxt)
    b = lab.get(r[1], nxt)
    c = lab.get(r[2], nxt)
    if b < a:
        a, b = b, a
    if c < b:
        b, c = c, b
        if b < a:
            a, b = b, a
    return (a, b, c)


def _cycle_row(r: tuple, lab: dict, nxt: int) -> tuple:
    a = lab.get(r[0], nxt)
    b = lab.get(r[1], nxt)
    c = lab.get(r[2], nxt)
    if b < a and b < c:
        return (b, c, a)
    if c < a and c < b:
        return (c, a, b)
    return (a, b, c)


def _min_rows(rows: Sequence[tuple], relabel_row, best: Optional[list],
              stop_below: bool) -> Optional[list]:
    """Lex-least sorted row list over relabelings.

    With stop_below=True, returns as soon as any labeling strictly
    below `best` is found (canonicity refutation); otherwise returns
    the global minimum, seeded by `best` when given.
    """
    points = sorted({p for r in rows for p in r})
    found: List[Optional[list]] = [best]
    hit = [False]

    def bound(lab: dict, nxt: int) -> list:
        return sorted(relabel_row(r, lab, nxt) for r in rows)

    def rec(lab: dict, k: int, left: tuple) -> None:
        if hit[0] and stop_below:
            return
        if not left:
            final = bound(lab, len(points))
            if found[0] is None or final < found[0]:
                found[0] = final
                hit[0] = True
            return
        cands = []
        for p in left:
            lab[p] = k
            lb = bound(lab, k + 1)
            del lab[p]
            if found[0] is None or lb <= found[0]:
                cands.append((lb, p))
        cands.sort(key=lambda t: t[0])
        for lb, p in cands:
            if hit[0] and stop_below:
                return
            if found[0] is not None and lb > found[0]:
                break
            lab[p] = k
            rec(lab, k + 1, tuple(q for q in left if q != p))
            del lab[p]

    rec({}, 0, tuple(points))
    if stop_below:
        return found[0] if hit[0] else None
    return found[0]


def _rev_row(r: tuple) -> tuple:
    a, b, c = r
    return _cycle_row((a, c, b), {a: a, b: b, c: c}, 0)


def _min_sorted_rows(rows: Sequence[tuple], kind: str) -> tuple:
    relabel = _cycle_row if kind == "mts" else _sorted_row
    best = _min_rows(list(rows), relabel, None, stop_below=False)
    if kind == "mts":
        mirror = sorted(_rev_row(r) for r in rows)
        best = _min_rows(mirror, relabel, best, stop_below=False)
    return tuple(best or [])


def _is_lex_min(rows: Sequence[tuple], kind: str) -> bool:
    """True iff the given sorted row list is its own canonical form."""
    relabel = _cycle_row if kind == "mts" else _sorted_row
    if _min_rows(list(rows), relabel, list(rows), stop_below=True) is not None:
        return False
    if kind == "mts":
        mirror = sorted(_rev_row(r) for r in rows)
        return _min_rows(mirror, relabel, list(rows), stop_below=True) is None
    return True


def _kind_of(d: Design) -> str:
    if isinstance(d, TwofoldTripleSystem):
        return "tts"
    if isinstance(d, MendelsohnTripleSystem):
        return "mts"
    raise TypeError("not a triple system: %r" % (d,))


def _rows_of(d: Design) -> list:
    if isinstance(d, TwofoldTripleSystem):
        return sorted(tuple(b) for b in d.blocks)
    return sorted(tuple(t) for t in d.triples)


def canonical_form(d: Design) -> CanonicalForm:
    """Deterministic relabeling-invariant fingerprint of a design."""
    kind = _kind_of(d)
    return CanonicalForm(kind, d.v, _min_sorted_rows(_rows_of(d), kind))


def relabel(d: Design, perm: Sequence[int]) -> Design:
    """Apply a point permutation: new point perm[p] replaces p."""
    if sorted(perm) != list(range(d.v)):
        raise ValueError("not a permutation of 0..%d" % (d.v - 1))
    if isinstance(d, TwofoldTripleSystem):
        blocks = tuple(UnorderedTriple(perm[a], perm[b], perm[c])
                       for a, b, c in d.blocks)
        return TwofoldTripleSystem(d.v, blocks, label=d.label)
    triples = tuple(CyclicTriple(perm[a], perm[b], perm[c])
                    for a, b, c in d.triples)
    return MendelsohnTripleSystem(d.v, triples, label=d.label, partial=d.partial)


def are_isomorphic(a: Design, b: Design) -> bool:
    if _kind_of(a) != _kind_of(b) or a.v != b.v:
        raise ValueError("cannot compare designs of different kind or order")
    return canonical_form(a) == canonical_form(b)


def dedupe(designs: Sequence[Design]) -> List[Design]:
    """One representative per isomorphism class, in first-appearance order."""
    kinds = {_kind_of(d) for d in designs}
    orders = {d.v for d in designs}
    if len(kinds) > 1 or len(orders) > 1:
        raise ValueError("mixed kinds or orders in dedupe input")
    seen = set()
    out: List[Design] = []
    for d in designs:
        c = canonical_form(d)
        if c not in seen:
            seen.add(c)
            out.append(d)
    return out
