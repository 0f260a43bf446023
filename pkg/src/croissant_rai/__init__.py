"""Tooling for responsible-AI dataset metadata.

Parse, validate, canonicalize, and coverage-score JSON-LD metadata
documents against a registry of responsible-AI properties, from Python,
the croissant-rai command line, or the bundled validation service.
"""

from .coverage import (
    CoverageReport,
    CoverageStatus,
    UseCaseCoverage,
    compute_coverage,
    property_is_present,
)
from .document import (
    CanonicalizationError,
    DuplicateKeyError,
    JsonSyntaxError,
    MetadataDocument,
    NotAnObjectError,
    ParseError,
    PrefixMap,
    ValueList,
    canonicalize,
    from_value,
    load_json,
    normalize_conformance,
    parse,
    values_of,
)
from .reporting import (
    RenderOptions,
    ReportFormat,
    format_fraction,
    render_coverage,
    render_validation,
    validation_report_from_json,
)
from .validator import (
    Diagnostic,
    Severity,
    SeverityCounts,
    ValidationMode,
    ValidationReport,
    check_datetime,
    levenshtein,
    suggest_property,
    validate,
)
from .vocabulary import (
    CONFORMANCE_ID,
    REGISTRY_VERSION,
    Cardinality,
    DuplicatePropertyError,
    ExpectedType,
    MalformedExtensionError,
    PropertyDescriptor,
    UseCase,
    VocabularyError,
    VocabularyRegistry,
    builtin,
    extend,
    lookup,
    parse_extension,
    properties_for_use_case,
    registry_from_entries,
    registry_to_json,
)

__version__ = "1.0.0"

__all__ = [
    "CONFORMANCE_ID",
    "REGISTRY_VERSION",
    "CanonicalizationError",
    "Cardinality",
    "CoverageReport",
    "CoverageStatus",
    "Diagnostic",
    "DuplicateKeyError",
    "DuplicatePropertyError",
    "ExpectedType",
    "JsonSyntaxError",
    "MalformedExtensionError",
    "MetadataDocument",
    "NotAnObjectError",
    "ParseError",
    "PrefixMap",
    "PropertyDescriptor",
    "RenderOptions",
    "ReportFormat",
    "Severity",
    "SeverityCounts",
    "UseCase",
    "UseCaseCoverage",
    "ValidationMode",
    "ValidationReport",
    "ValueList",
    "VocabularyError",
    "VocabularyRegistry",
    "builtin",
    "canonicalize",
    "check_datetime",
    "compute_coverage",
    "extend",
    "format_fraction",
    "from_value",
    "levenshtein",
    "load_json",
    "lookup",
    "normalize_conformance",
    "parse",
    "parse_extension",
    "properties_for_use_case",
    "property_is_present",
    "registry_from_entries",
    "registry_to_json",
    "render_coverage",
    "render_validation",
    "suggest_property",
    "validate",
    "validation_report_from_json",
    "values_of",
    "__version__",
]
