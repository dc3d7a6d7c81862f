"""Core types for twofold and Mendelsohn triple systems.

Points are contiguous integers 0..v-1.  A twofold triple system of
order v is a multiset of v(v-1)/3 unordered triples covering every
pair of distinct points exactly twice.  A Mendelsohn triple system is
a set of v(v-1)/3 directed 3-cycles covering every ordered pair of
distinct points exactly once.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence, Union

Point = int


class MalformedDesign(ValueError):
    """Structural defect: wrong arity, repeated point, out-of-range point."""


class DegenerateTriple(MalformedDesign):
    """A triple was given fewer than three distinct points."""


class InternalInconsistency(RuntimeError):
    """A derived object failed a check that should hold by construction."""


def block_count(v: int) -> int:
    """Number of triples in a full system of order v."""
    return v * (v - 1) // 3


class UnorderedTriple(tuple):
    """A 3-element point set, stored sorted ascending."""

    __slots__ = ()

    def __new__(cls, a: Point, b: Point, c: Point) -> "UnorderedTriple":
        if a == b or b == c or a == c:
            raise DegenerateTriple("repeated point in {%r,%r,%r}" % (a, b, c))
        return tuple.__new__(cls, sorted((a, b, c)))

    def __getnewargs__(self) -> tuple:
        return tuple(self)

    def __repr__(self) -> str:
        return "{%d,%d,%d}" % self


class CyclicTriple(tuple):
    """A directed 3-cycle (a,b,c) with edges a->b, b->c and c->a.

    The three rotations (a,b,c), (b,c,a), (c,a,b) denote the same cycle;
    construction rotates the minimum point to the front so equal cycles
    compare equal.  The reverse cycle (a,c,b) is a distinct value.
    """

    __slots__ = ()

    def __new__(cls, a: Point, b: Point, c: Point) -> "CyclicTriple":
        if a == b or b == c or a == c:
            raise DegenerateTriple("repeated point in (%r,%r,%r)" % (a, b, c))
        if b < a and b < c:
            a, b, c = b, c, a
        elif c < a and c < b:
            a, b, c = c, a, b
        return tuple.__new__(cls, (a, b, c))

    def __getnewargs__(self) -> tuple:
        return tuple(self)

    def support(self) -> UnorderedTriple:
        return UnorderedTriple(*self)

    def reverse(self) -> "CyclicTriple":
        a, b, c = self
        return CyclicTriple(a, c, b)

    def ordered_pairs(self) -> tuple:
        a, b, c = self
        return ((a, b), (b, c), (c, a))

    def __repr__(self) -> str:
        return "(%d,%d,%d)" % self


def canonical_rotation(a: Point, b: Point, c: Point) -> CyclicTriple:
    """Rotate (a,b,c) so the smallest point comes first.

    Raises DegenerateTriple if the points are not pairwise distinct.
    """
    return CyclicTriple(a, b, c)


def _check_range(points: Iterable[Point], v: int) -> None:
    for p in points:
        if not isinstance(p, int) or isinstance(p, bool) or not 0 <= p < v:
            raise MalformedDesign("point %r out of range for order %d" % (p, v))


@dataclass(frozen=True)
class TwofoldTripleSystem:
    """Order v plus a multiset of unordered triples, kept sorted."""

    v: int
    blocks: tuple
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.v < 3:
            raise MalformedDesign("order must be at least 3, got %r" % (self.v,))
        try:
            blocks = tuple(sorted(
                b if isinstance(b, UnorderedTriple) else UnorderedTriple(*b)
                for b in self.blocks))
        except TypeError as exc:
            raise MalformedDesign("every block needs exactly 3 points") from exc
        for b in blocks:
            _check_range(b, self.v)
        object.__setattr__(self, "blocks", blocks)


@dataclass(frozen=True, eq=False)
class MendelsohnTripleSystem:
    """Order v plus directed 3-cycles, kept in construction order.

    Equality treats the triples as a set, so two systems listing the
    same cycles in different orders are equal.  A partial system is one
    with exactly one triple deleted from a full system.
    """

    v: int
    triples: tuple
    label: Optional[str] = None
    partial: bool = False

    def __post_init__(self) -> None:
        if self.v < 3:
            raise MalformedDesign("order must be at least 3, got %r" % (self.v,))
        try:
            triples = tuple(
                t if isinstance(t, CyclicTriple) else CyclicTriple(*t)
                for t in self.triples)
        except TypeError as exc:
            raise MalformedDesign("every triple needs exactly 3 points") from exc
        for t in triples:
            _check_range(t, self.v)
        object.__setattr__(self, "triples", triples)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MendelsohnTripleSystem):
            return NotImplemented
        return (self.v == other.v and self.partial == other.partial
                and frozenset(self.triples) == frozenset(other.triples))

    def __hash__(self) -> int:
        return hash((self.v, self.partial, frozenset(self.triples)))


class Violation(NamedTuple):
    pair: tuple        # (a, b): a < b for unordered coverage, any order for directed
    observed: int
    expected: int


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple = ()

    def __post_init__(self) -> None:
        if self.valid != (not self.violations):
            raise InternalInconsistency("valid flag contradicts violations")

    @classmethod
    def from_violations(cls, violations: Sequence[Violation]) -> "ValidationReport":
        vs = tuple(violations)
        return cls(valid=not vs, violations=vs)


def validate_tts(d: TwofoldTripleSystem) -> ValidationReport:
    """Check that every unordered pair is covered exactly twice.

    The block count is implied: 3|blocks| equals the total pair
    coverage, so all pairs at coverage 2 forces |blocks| = v(v-1)/3.
    """
    cover: Counter = Counter()
    for a, b, c in d.blocks:
        cover[(a, b)] += 1
        cover[(a, c)] += 1
        cover[(b, c)] += 1
    violations = []
    for a in range(d.v):
        for b in range(a + 1, d.v):
            n = cover.get((a, b), 0)
            if n != 2:
                violations.append(Violation((a, b), n, 2))
    return ValidationReport.from_violations(violations)


def validate_mts(m: MendelsohnTripleSystem) -> ValidationReport:
    """Check ordered-pair coverage.

    A full system must cover each of the v(v-1) ordered pairs exactly
    once.  A partial system must cover no pair twice and leave exactly
    3 pairs uncovered (the pairs of the deleted triple).
    """
    cover: Counter = Counter()
    for t in m.triples:
        for p in t.ordered_pairs():
            cover[p] += 1
    violations = []
    uncovered = []
    for a in range(m.v):
        for b in range(m.v):
            if a == b:
                continue
            n = cover.get((a, b), 0)
            if n > 1:
                violations.append(Violation((a, b), n, 1))
            elif n == 0:
                uncovered.append((a, b))
    if m.partial:
        if len(uncovered) != 3:
            violations.extend(Violation(p, 0, 1) for p in uncovered)
    else:
        violations.extend(Violation(p, 0, 1) for p in uncovered)
    violations.sort()
    return ValidationReport.from_violations(violations)


def underlying_tts(m: MendelsohnTripleSystem,
                   label: Optional[str] = None) -> TwofoldTripleSystem:
    """Forget orientations: map each cycle to its 3-point support.

    Only full systems have a twofold underlying system.  The result is
    re-validated; a failure means the input was not a valid full system.
    """
    if m.partial:
        raise MalformedDesign("a partial system has no underlying twofold system")
    t = TwofoldTripleSystem(m.v, tuple(x.support() for x in m.triples), label=label)
    report = validate_tts(t)
    if not report.valid:
        raise InternalInconsistency(
            "underlying blocks of %s do not form a twofold system; "
            "first violation: %r" % (m.label or "input", report.violations[0]))
    return t


def converse(m: MendelsohnTripleSystem) -> MendelsohnTripleSystem:
    """Reverse every cycle.  An involution: converse(converse(m)) == m."""
    return MendelsohnTripleSystem(
        m.v, tuple(t.reverse() for t in m.triples),
        label=m.label, partial=m.partial)
