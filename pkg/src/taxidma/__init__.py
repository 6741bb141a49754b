"""taxidma: faceted taxonomy engine for identity-related attack classification.

Implements the TaxIdMA framework: an attack-background taxonomy plus three
detail taxonomies (system identities, identity management systems, end-user
identities), composition of the four into per-stage attack records, a golden
corpus of eight classified real-world attacks, and query/coverage analytics.
"""

from .builtin import DEFAULT_SET_VERSION, load_builtin
from .canonical import serialize_record, serialize_taxonomy
from .corpus import Corpus, builtin_corpus, corpus_stage_census, load_corpus_dir
from .errors import (
    DocumentSyntaxError,
    ExtensionError,
    InvalidRecordError,
    PathNotFoundError,
    PredicateError,
    SchemaError,
    SetMismatchError,
    TaxidmaError,
    UnknownVersionError,
)
from .model import (
    CategoryNode,
    Facet,
    ResolvedNode,
    TaxonomyDefinition,
    TaxonomySet,
    ValueNode,
    parse_taxonomy,
    resolve_path,
    validate_taxonomy,
)
from .query import (
    CoverageReport,
    Histogram,
    Predicate,
    Term,
    coverage,
    facet_frequency,
    filter_records,
    parse_predicate,
)
from .records import (
    AttackRecord,
    ClassificationBlock,
    DiffEntry,
    Selection,
    Stage,
    diff_records,
    normalize_record,
    parse_record,
    validate_record,
)
from .render import (
    RenderedReport,
    render_corpus_table,
    render_coverage,
    render_histogram,
    render_record_report,
    render_taxonomy_reference,
)
from .validation import Defect, ValidationReport

__version__ = "0.1.0"

__all__ = [
    "AttackRecord",
    "CategoryNode",
    "ClassificationBlock",
    "Corpus",
    "CoverageReport",
    "DEFAULT_SET_VERSION",
    "Defect",
    "DiffEntry",
    "DocumentSyntaxError",
    "ExtensionError",
    "Facet",
    "Histogram",
    "InvalidRecordError",
    "PathNotFoundError",
    "Predicate",
    "PredicateError",
    "RenderedReport",
    "ResolvedNode",
    "SchemaError",
    "Selection",
    "SetMismatchError",
    "Stage",
    "TaxidmaError",
    "TaxonomyDefinition",
    "TaxonomySet",
    "Term",
    "UnknownVersionError",
    "ValidationReport",
    "ValueNode",
    "builtin_corpus",
    "corpus_stage_census",
    "coverage",
    "diff_records",
    "facet_frequency",
    "filter_records",
    "load_builtin",
    "load_corpus_dir",
    "normalize_record",
    "parse_predicate",
    "parse_record",
    "parse_taxonomy",
    "render_corpus_table",
    "render_coverage",
    "render_histogram",
    "render_record_report",
    "render_taxonomy_reference",
    "resolve_path",
    "serialize_record",
    "serialize_taxonomy",
    "validate_record",
    "validate_taxonomy",
]
