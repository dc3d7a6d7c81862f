"""Small twofold and Mendelsohn triple systems: construction,
validation, enumeration, orientation, canonical forms, and the search
for ell-good sequencings."""

from .designs import (
    CyclicTriple,
    DegenerateTriple,
    InternalInconsistency,
    MalformedDesign,
    MendelsohnTripleSystem,
    Point,
    TwofoldTripleSystem,
    UnorderedTriple,
    ValidationReport,
    Violation,
    block_count,
    canonical_rotation,
    converse,
    underlying_tts,
    validate_mts,
    validate_tts,
)
from .catalog import (
    CatalogEntry,
    CatalogError,
    LintFinding,
    fixture_path,
    fixture_system,
    fixture_systems,
    lint_catalog,
    load_catalog,
    parse_catalog,
    serialize_catalog,
)
from .iso import CanonicalForm, are_isomorphic, canonical_form, dedupe, relabel
from .orient import enumerate_orientations, is_orientable, orient_distinct
from .gen import enumerate_tts, pipeline_mts
from .seq import (
    DeletionReport,
    SearchReport,
    Sequencing,
    deletion_experiment,
    enumerate_sequencings,
    is_ell_good,
    max_good_ell,
    search,
)

__version__ = "0.1.0"

__all__ = [
    "CanonicalForm",
    "CatalogEntry",
    "CatalogError",
    "CyclicTriple",
    "DegenerateTriple",
    "DeletionReport",
    "InternalInconsistency",
    "LintFinding",
    "MalformedDesign",
    "MendelsohnTripleSystem",
    "Point",
    "SearchReport",
    "Sequencing",
    "TwofoldTripleSystem",
    "UnorderedTriple",
    "ValidationReport",
    "Violation",
    "are_isomorphic",
    "block_count",
    "canonical_form",
    "canonical_rotation",
    "converse",
    "dedupe",
    "deletion_experiment",
    "enumerate_orientations",
    "enumerate_sequencings",
    "enumerate_tts",
    "fixture_path",
    "fixture_system",
    "fixture_systems",
    "is_ell_good",
    "is_orientable",
    "lint_catalog",
    "load_catalog",
    "max_good_ell",
    "orient_distinct",
    "parse_catalog",
    "pipeline_mts",
    "relabel",
    "search",
    "serialize_catalog",
    "underlying_tts",
    "validate_mts",
    "validate_tts",
]
