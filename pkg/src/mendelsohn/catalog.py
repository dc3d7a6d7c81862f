"""Text catalog format, packaged fixtures, and the table linter.

Catalog grammar (one file holds many designs):

    # comment lines start with '#', blank lines are ignored
    mts 7 M7.1.1
    0 1 2
    ...
    tts 10 T10.1 [(1)]
    1 2 3
    ...

A header is ``kind v label`` with an optional bracketed external
reference; kind is ``tts`` or ``mts``.  Every following row gives the
three points of one triple.  For mts entries the written row order is
the cyclic order; the parser canonicalizes rotations when a design is
materialized, never in the entry itself, so parsing and serializing
round-trips the text exactly.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib.resources import files
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .designs import (
    MalformedDesign,
    MendelsohnTripleSystem,
    TwofoldTripleSystem,
    UnorderedTriple,
    underlying_tts,
    validate_mts,
    validate_tts,
)

FIXTURE_ENV = "MENDELSOHN_FIXTURES"
MTS_FIXTURES = "mts_catalog.txt"
TTS_FIXTURES = "tts_catalog.txt"
TTS_PRINTED = "tts_printed.txt"

_HEADER = re.compile(r"^(tts|mts)\s+(\d+)\s+(\S+)(?:\s+\[(.*)\])?\s*$")
_ROW = re.compile(r"^(\d+)\s+(\d+)\s+(\d+)\s*$")


class CatalogError(ValueError):
    """Syntax or consistency error in catalog text."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)


@dataclass(frozen=True)
class CatalogEntry:
    kind: str
    v: int
    label: str
    rows: tuple
    extref: Optional[str] = None

    def to_design(self) -> Union[TwofoldTripleSystem, MendelsohnTripleSystem]:
        if self.kind == "tts":
            return TwofoldTripleSystem(self.v, self.rows, label=self.label)
        return MendelsohnTripleSystem(self.v, self.rows, label=self.label)


@dataclass(frozen=True)
class LintFinding:
    label: str
    severity: str            # "error" | "warning"
    description: str
    repair: Optional[tuple] = None   # replacement block list, when known


def parse_catalog(text: str) -> List[CatalogEntry]:
    """Parse catalog text; designs are not validated here (lint does that)."""
    entries: List[CatalogEntry] = []
    seen: Dict[str, int] = {}
    header = None
    rows: List[Tuple[int, int, int]] = []

    def flush() -> None:
        nonlocal header, rows
        if header is None:
            return
        kind, v, label, extref, line = header
        entries.append(CatalogEntry(kind, v, label, tuple(rows), extref))
        header = None
        rows = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _HEADER.match(line)
        if m:
            flush()
            kind, v, label, extref = m.group(1), int(m.group(2)), m.group(3), m.group(4)
            if label in seen:
                raise CatalogError(
                    "duplicate label %r (first seen at line %d)" % (label, seen[label]),
                    lineno)
            seen[label] = lineno
            header = (kind, v, label, extref, lineno)
            continue
        m = _ROW.match(line)
        if m:
            if header is None:
                raise CatalogError("triple row before any design header", lineno)
            rows.append((int(m.group(1)), int(m.group(2)), int(m.group(3))))
            continue
        raise CatalogError("unrecognized line %r" % raw, lineno)
    flush()
    return entries


def serialize_catalog(entries: Sequence[CatalogEntry]) -> str:
    """Deterministic text: entries and rows in input order, LF endings."""
    out: List[str] = []
    for e in entries:
        head = "%s %d %s" % (e.kind, e.v, e.label)
        if e.extref is not None:
            head += " [%s]" % e.extref
        out.append(head)
        for r in e.rows:
            out.append("%d %d %d" % r)
    return "\n".join(out) + ("\n" if out else "")


_T_LABEL = re.compile(r"^T(\d+)\.(\d+)$")


def lint_catalog(entries: Sequence[CatalogEntry],
                 reference: Optional[Sequence[MendelsohnTripleSystem]] = None,
                 ) -> List[LintFinding]:
    """Validate each entry and cross-check tts tables against mts siblings.

    A tts entry labeled Tv.i is compared, as a block multiset, with the
    underlying blocks of the reference system labeled Mv.i.1 (packaged
    fixtures by default).  Each differing block yields a finding whose
    suggested repair is the full reference-derived block list.
    """
    if reference is None:
        reference = fixture_systems()
    by_label = {m.label: m for m in reference if m.label}

    findings: List[LintFinding] = []
    for e in entries:
        try:
            design = e.to_design()
        except MalformedDesign as exc:
            findings.append(LintFinding(e.label, "error", str(exc)))
            continue
        if e.kind == "tts":
            report = validate_tts(design)
            for (a, b), n, want in report.violations:
                findings.append(LintFinding(
                    e.label, "error",
                    "pair {%d,%d} covered %d times, expected %d" % (a, b, n, want)))
        else:
            report = validate_mts(design)
            for (a, b), n, want in report.violations:
                findings.append(LintFinding(
                    e.label, "error",
                    "ordered pair (%d,%d) covered %d times, expected %d"
                    % (a, b, n, want)))

        if e.kind != "tts":
            continue
        m = _T_LABEL.match(e.label)
        if not m:
            continue
        sibling = by_label.get("M%s.%s.1" % (m.group(1), m.group(2)))
        if sibling is None or sibling.v != e.v:
            continue
        derived = underlying_tts(sibling)
        got = _block_counter(design.blocks)
        want = _block_counter(derived.blocks)
        if got == want:
            continue
        severity = "error" if not report.valid else "warning"
        repair = derived.blocks
        for blk in sorted(set(got) | set(want)):
            g, w = got.get(blk, 0), want.get(blk, 0)
            if g > w:
                findings.append(LintFinding(
                    e.label, severity,
                    "block %r printed %d times, expected %d" % (blk, g, w),
                    repair))
            elif g < w:
                findings.append(LintFinding(
                    e.label, severity,
                    "block %r missing (printed %d times, expected %d)" % (blk, g, w),
                    repair))
    return findings


def _block_counter(blocks: Sequence[UnorderedTriple]) -> Dict[UnorderedTriple, int]:
    out: Dict[UnorderedTriple, int] = {}
    for b in blocks:
        out[b] = out.get(b, 0) + 1
    return out


# ---------------------------------------------------------------------------
# Packaged fixtures

def fixture_dir() -> Path:
    """Directory holding fixture catalogs; override with $MENDELSOHN_FIXTURES."""
    override = os.environ.get(FIXTURE_ENV)
    if override:
        return Path(override)
    return Path(str(files("mendelsohn").joinpath("data")))


def fixture_path(name: str = MTS_FIXTURES) -> Path:
    return fixture_dir() / name


def load_catalog(path: Union[str, Path]) -> List[CatalogEntry]:
    return parse_catalog(Path(path).read_text(encoding="utf-8"))


def fixture_entries(name: str = MTS_FIXTURES) -> List[CatalogEntry]:
    return list(_fixture_entries_cached(str(fixture_path(name))))


def fixture_systems(v: Optional[int] = None) -> List[MendelsohnTripleSystem]:
    """All packaged reference systems, optionally filtered by order."""
    systems = _fixture_systems_cached(str(fixture_path(MTS_FIXTURES)))
    return [m for m in systems if v is None or m.v == v]


def fixture_system(label: str) -> MendelsohnTripleSystem:
    for m in _fixture_systems_cached(str(fixture_path(MTS_FIXTURES))):
        if m.label == label:
            return m
    raise KeyError("no fixture labeled %r" % label)


@lru_cache(maxsize=None)
def _fixture_entries_cached(path: str) -> tuple:
    return tuple(load_catalog(path))


@lru_cache(maxsize=None)
def _fixture_systems_cached(path: str) -> tuple:
    return tuple(e.to_design() for e in _fixture_entries_cached(path))
