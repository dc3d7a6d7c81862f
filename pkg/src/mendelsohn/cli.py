"""Command-line front end.

Exit codes: 0 on success, 1 when validation or lint problems were found
(or an input file fails to parse), 2 on usage errors such as an unknown
label or a missing required flag.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from multiprocessing import Pool
from typing import List, Optional, Sequence

from . import catalog as cat
from .designs import (
    MalformedDesign,
    MendelsohnTripleSystem,
    TwofoldTripleSystem,
    validate_mts,
    validate_tts,
)
from .gen import enumerate_tts, pipeline_mts
from .iso import canonical_form
from .orient import enumerate_orientations, is_orientable, orient_distinct
from .seq import (
    DeletionReport,
    SearchReport,
    deletion_experiment,
    enumerate_sequencings,
    search,
)

REPORT_ELLS = (3, 4, 5)


@dataclass(frozen=True)
class TableOneRow:
    """One summary row: class counts and how many systems admit an
    ell-good sequencing for ell in 3..5."""
    v: int
    nonisomorphic_tts: Optional[int]   # None when the stage was skipped
    orientable_tts: int
    nonisomorphic_mts: int
    good3: int
    good4: int
    good5: int


class _UsageError(Exception):
    pass


class _DataError(Exception):
    pass


# ---------------------------------------------------------------------------
# shared plumbing

def _load_entries(path: str) -> List[cat.CatalogEntry]:
    try:
        return cat.load_catalog(path)
    except FileNotFoundError:
        raise _UsageError("no such file: %s" % path)
    except cat.CatalogError as exc:
        raise _DataError(str(exc))


def _find_entry(entries: Sequence[cat.CatalogEntry], label: str) -> cat.CatalogEntry:
    for e in entries:
        if e.label == label:
            return e
    raise _UsageError("label %r not found in catalog" % label)


def _materialize(entry: cat.CatalogEntry):
    try:
        return entry.to_design()
    except MalformedDesign as exc:
        raise _DataError("%s: %s" % (entry.label, exc))


def _need_valid_mts(entry: cat.CatalogEntry) -> MendelsohnTripleSystem:
    design = _materialize(entry)
    if not isinstance(design, MendelsohnTripleSystem):
        raise _UsageError("label %r is not an mts entry" % entry.label)
    if not validate_mts(design).valid:
        raise _DataError("%s is not a valid system; run the lint command"
                         % entry.label)
    return design


def _need_valid_tts(entry: cat.CatalogEntry) -> TwofoldTripleSystem:
    design = _materialize(entry)
    if not isinstance(design, TwofoldTripleSystem):
        raise _UsageError("label %r is not a tts entry" % entry.label)
    if not validate_tts(design).valid:
        raise _DataError("%s is not a valid system; run the lint command"
                         % entry.label)
    return design


def _render_search(rep: SearchReport) -> str:
    parts = ["%s ell=%d" % (rep.label or "-", rep.ell),
             "exists=%s" % ("true" if rep.exists else "false")]
    if rep.count is not None:
        parts.append("count=%d" % rep.count)
    if rep.least is not None:
        parts.append("least=%s" % rep.least.digits())
    return " ".join(parts)


def _search_json(rep: SearchReport) -> dict:
    return {
        "label": rep.label,
        "ell": rep.ell,
        "exists": rep.exists,
        "count": rep.count,
        "least": rep.least.digits() if rep.least is not None else None,
    }


# ---------------------------------------------------------------------------
# commands

def cmd_validate(args: argparse.Namespace) -> int:
    entries = _load_entries(args.file)
    bad = 0
    for e in entries:
        try:
            design = e.to_design()
        except MalformedDesign as exc:
            print("%s: MALFORMED (%s)" % (e.label, exc))
            bad += 1
            continue
        report = (validate_tts(design) if e.kind == "tts"
                  else validate_mts(design))
        if report.valid:
            print("%s: valid" % e.label)
        else:
            bad += 1
            print("%s: INVALID (%d violations)" % (e.label, len(report.violations)))
            for pair, n, want in report.violations[:8]:
                kind = "ordered pair (%d,%d)" if e.kind == "mts" else "pair {%d,%d}"
                print("  %s covered %d times, expected %d"
                      % (kind % pair, n, want))
    return 1 if bad else 0


def cmd_lint(args: argparse.Namespace) -> int:
    entries = _load_entries(args.file)
    findings = cat.lint_catalog(entries)
    for f in findings:
        print("%s %s: %s" % (f.severity, f.label, f.description))
    if args.repair:
        printed = set()
        for f in findings:
            if f.repair is None or f.label in printed:
                continue
            printed.add(f.label)
            entry = _find_entry(entries, f.label)
            fixed = cat.CatalogEntry(
                "tts", entry.v, entry.label,
                tuple(tuple(b) for b in f.repair), entry.extref)
            sys.stdout.write(cat.serialize_catalog([fixed]))
    return 1 if any(f.severity == "error" for f in findings) else 0


def cmd_orient(args: argparse.Namespace) -> int:
    entries = _load_entries(args.file)
    design = _need_valid_tts(_find_entry(entries, args.label))
    if args.all:
        oriented = enumerate_orientations(design)
        tag = "a"
    else:
        oriented = orient_distinct(design)
        tag = "o"
    print("# %d %s" % (len(oriented),
                       "orientation assignments" if args.all
                       else "distinct orientations"))
    out = [cat.CatalogEntry("mts", m.v, "%s.%s%d" % (args.label, tag, i + 1),
                            tuple(tuple(t) for t in m.triples))
           for i, m in enumerate(oriented)]
    sys.stdout.write(cat.serialize_catalog(out))
    return 0


def cmd_canon(args: argparse.Namespace) -> int:
    entries = _load_entries(args.file)
    entry = _find_entry(entries, args.label)
    design = _materialize(entry)
    report = (validate_tts(design) if entry.kind == "tts"
              else validate_mts(design))
    if not report.valid:
        raise _DataError("%s is not a valid system; run the lint command"
                         % entry.label)
    form = canonical_form(design)
    out = cat.CatalogEntry(form.kind, form.v, "%s.canon" % entry.label, form.rows)
    sys.stdout.write(cat.serialize_catalog([out]))
    return 0


def cmd_enumerate(args: argparse.Namespace) -> int:
    if args.v == 10 and not args.long_run:
        raise _UsageError("order 10 enumeration is a long run; pass --long-run")

    def progress(n: int) -> None:
        if n % 50 == 0:
            print("designs found: %d" % n, file=sys.stderr)

    hook = progress if args.long_run else None
    try:
        if args.kind == "tts":
            designs = enumerate_tts(args.v, progress=hook)
            rows = [tuple(tuple(b) for b in d.blocks) for d in designs]
            labels = ["T%d.g%d" % (args.v, i + 1) for i in range(len(designs))]
            out = [cat.CatalogEntry("tts", args.v, lab, r)
                   for lab, r in zip(labels, rows)]
        else:
            designs = pipeline_mts(args.v)
            out = [cat.CatalogEntry("mts", args.v, "M%d.g%d" % (args.v, i + 1),
                                    tuple(tuple(t) for t in m.triples))
                   for i, m in enumerate(designs)]
    except ValueError as exc:
        raise _UsageError(str(exc))
    sys.stdout.write(cat.serialize_catalog(out))
    return 0


def cmd_sequence(args: argparse.Namespace) -> int:
    entries = _load_entries(args.file)
    design = _need_valid_mts(_find_entry(entries, args.label))
    try:
        if args.mode == "enumerate":
            for s in enumerate_sequencings(design, args.ell):
                print(s.digits())
            return 0
        rep = search(design, args.ell, mode=args.mode)
    except ValueError as exc:
        raise _UsageError(str(exc))
    if args.format == "structured":
        print(json.dumps(_search_json(rep), sort_keys=True))
    else:
        print(_render_search(rep))
    return 0


def cmd_delete_experiment(args: argparse.Namespace) -> int:
    entries = _load_entries(args.file)
    design = _need_valid_mts(_find_entry(entries, args.label))
    try:
        report = deletion_experiment(design, args.ell)
    except ValueError as exc:
        raise _UsageError(str(exc))
    if args.format == "structured":
        print(json.dumps({
            "label": report.label,
            "ell": report.ell,
            "rows": [{"omit": list(t), "count": n,
                      "least": s.digits() if s is not None else None}
                     for t, n, s in report.rows],
        }, sort_keys=True))
    else:
        print("# %s ell=%d: count and least sequencing per omitted triple"
              % (report.label, report.ell))
        for t, n, s in report.rows:
            print("%r %d %s" % (t, n, s.digits() if s is not None else "-"))
    return 0


# ---------------------------------------------------------------------------
# report assembly

def _match_labels(designs: Sequence[MendelsohnTripleSystem], v: int,
                  ) -> List[str]:
    """Name generated systems after isomorphic reference systems."""
    fixtures = cat.fixture_systems(v)
    by_form = {canonical_form(m): m.label for m in fixtures}
    labels = []
    for i, m in enumerate(designs):
        label = by_form.get(canonical_form(m))
        if label is None:
            label = "M%d.g%d" % (v, i + 1)
            if fixtures:
                print("warning: generated system %s matches no fixture"
                      % label, file=sys.stderr)
        labels.append(label)
    return labels


def _one_report(m: MendelsohnTripleSystem, label: str, ell: int,
                counts: bool) -> SearchReport:
    mode = "count" if counts else "exists"
    if ell > m.v:
        # windows longer than the sequence are vacuous for these orders
        return SearchReport(label, ell, mode, False, 0 if counts else None)
    return search(m, ell, mode=mode, label=label)


def _report_task(task) -> List[SearchReport]:
    m, label, ells, counts = task
    return [_one_report(m, label, ell, counts) for ell in ells]


def _sweep(designs: Sequence[MendelsohnTripleSystem], labels: Sequence[str],
           counts: bool, workers: int, progress: bool) -> List[SearchReport]:
    tasks = [(m, lab, REPORT_ELLS, counts) for m, lab in zip(designs, labels)]
    reports: List[SearchReport] = []
    if workers > 1 and len(tasks) > 1:
        with Pool(processes=min(workers, len(tasks))) as pool:
            for i, batch in enumerate(pool.imap(_report_task, tasks)):
                reports.extend(batch)
                if progress:
                    print("swept %s" % labels[i], file=sys.stderr)
    else:
        for i, task in enumerate(tasks):
            reports.extend(_report_task(task))
            if progress:
                print("swept %s" % labels[i], file=sys.stderr)
    return reports


def build_report(v: int, from_fixtures: bool = False, long_run: bool = False,
                 workers: int = 1, progress: bool = False):
    """Assemble the summary row plus per-design search reports."""
    if v not in (3, 4, 6, 7, 9, 10):
        raise _UsageError("no systems of order %d; valid orders: 3 4 6 7 9 10" % v)

    run_gen = not from_fixtures and (v <= 9 or long_run)
    fixtures = cat.fixture_systems(v)
    if not fixtures and not run_gen:
        run_gen = v <= 9   # small orders have no fixture catalog; generate
        if not run_gen:
            raise _UsageError("no fixtures available for order %d" % v)

    if run_gen:
        tts = enumerate_tts(v)
        n_tts: Optional[int] = len(tts)
        orientable = sum(1 for t in tts if is_orientable(t))
        designs = pipeline_mts(v)
        labels = _match_labels(designs, v)
    else:
        designs = list(fixtures)
        labels = [m.label or "?" for m in designs]
        n_tts = None
        orientable = len({lab.split(".")[1] for lab in labels})

    counts = v <= 9 or long_run
    reports = _sweep(designs, labels, counts, workers, progress)

    good = {ell: 0 for ell in REPORT_ELLS}
    for rep in reports:
        if rep.exists:
            good[rep.ell] += 1
    row = TableOneRow(v, n_tts, orientable, len(designs),
                      good[3], good[4], good[5])
    return row, reports


def cmd_report(args: argparse.Namespace) -> int:
    row, reports = build_report(
        args.v, from_fixtures=args.from_fixtures, long_run=args.long_run,
        workers=args.workers, progress=args.long_run)
    if args.format == "structured":
        print(json.dumps({
            "v": row.v,
            "nonisomorphic_tts": row.nonisomorphic_tts,
            "orientable_tts": row.orientable_tts,
            "nonisomorphic_mts": row.nonisomorphic_mts,
            "good": {"3": row.good3, "4": row.good4, "5": row.good5},
            "designs": [_search_json(r) for r in reports],
        }, sort_keys=True))
    else:
        tts = "-" if row.nonisomorphic_tts is None else str(row.nonisomorphic_tts)
        print("v=%d tts=%s orientable=%d mts=%d good3=%d good4=%d good5=%d"
              % (row.v, tts, row.orientable_tts, row.nonisomorphic_mts,
                 row.good3, row.good4, row.good5))
        for rep in reports:
            print(_render_search(rep))
    return 0


# ---------------------------------------------------------------------------
# wiring

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mendelsohn",
        description="Construct, validate, orient, canonicalize and sequence "
                    "small twofold and Mendelsohn triple systems.")
    sub = parser.add_subparsers(dest="command", required=True)
    default_file = None  # resolved lazily so $MENDELSOHN_FIXTURES is honored

    def add_file(p: argparse.ArgumentParser, default_name: str) -> None:
        p.add_argument("file", nargs="?", default=default_file,
                       help="catalog file (default: packaged %s)" % default_name)
        p.set_defaults(default_name=default_name)

    p = sub.add_parser("validate", help="validate every design in a catalog")
    add_file(p, cat.MTS_FIXTURES)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("lint", help="validate and cross-check printed tables")
    add_file(p, cat.TTS_PRINTED)
    p.add_argument("--repair", action="store_true",
                   help="also print repaired entries as catalog text")
    p.set_defaults(func=cmd_lint)

    p = sub.add_parser("orient", help="orient a twofold system")
    add_file(p, cat.TTS_FIXTURES)
    p.add_argument("--label", required=True)
    p.add_argument("--all", action="store_true",
                   help="every valid assignment, not one per isomorphism class")
    p.set_defaults(func=cmd_orient)

    p = sub.add_parser("canon", help="print a design's canonical form")
    add_file(p, cat.MTS_FIXTURES)
    p.add_argument("--label", required=True)
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("enumerate", help="generate all systems of an order")
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--kind", choices=("tts", "mts"), required=True)
    p.add_argument("--long-run", action="store_true",
                   help="allow the multi-hour order-10 enumeration")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("sequence", help="search for ell-good sequencings")
    add_file(p, cat.MTS_FIXTURES)
    p.add_argument("--label", required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--mode", choices=("exists", "count", "least", "enumerate"),
                   default="count")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("delete-exp",
                       help="sequencing counts with each triple deleted in turn")
    add_file(p, cat.MTS_FIXTURES)
    p.add_argument("--label", required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.set_defaults(func=cmd_delete_experiment)

    p = sub.add_parser("report", help="summary row plus per-design results")
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--from-fixtures", action="store_true",
                   help="start from the packaged catalogs instead of generating")
    p.add_argument("--long-run", action="store_true",
                   help="include the slow stages (order-10 enumeration and "
                        "full count sweep)")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--workers", type=int, default=1,
                   help="parallel workers for the per-design sweep")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "file", "sentinel") is None:
        args.file = str(cat.fixture_path(args.default_name))
    try:
        return args.func(args)
    except _UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except _DataError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
