"""Rule-based validation of metadata documents against a property registry.

Rules are identified by stable codes RAI001 through RAI007; messages may
change between releases, codes and paths never do. All findings are
diagnostics in a report; validation itself never raises.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .document import MetadataDocument, ValueList
from .vocabulary import (
    CONFORMANCE_ID,
    Cardinality,
    ExpectedType,
    VocabularyRegistry,
    builtin,
)


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"


class ValidationMode(Enum):
    STRICT = "strict"
    LENIENT = "lenient"

    @classmethod
    def from_id(cls, token: str) -> "ValidationMode":
        for member in cls:
            if member.value == token:
                return member
        raise ValueError(f"unknown validation mode {token!r}")


@dataclass(frozen=True)
class Diagnostic:
    """One finding. suggestion is only ever set for code RAI002."""

    severity: Severity
    code: str
    path: str
    message: str
    suggestion: str | None = None


@dataclass(frozen=True)
class SeverityCounts:
    errors: int = 0
    warnings: int = 0
    infos: int = 0


@dataclass(frozen=True)
class ValidationReport:
    conformant: bool
    mode: ValidationMode
    diagnostics: tuple[Diagnostic, ...]
    counts: SeverityCounts
    registry_version: str


def levenshtein(a: str, b: str) -> int:
    """Edit distance (insert, delete, substitute, each cost 1)."""
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(
                min(
                    previous[j] + 1,
                    current[j - 1] + 1,
                    previous[j - 1] + (ca != cb),
                )
            )
        previous = current
    return previous[-1]


def suggest_property(registry: VocabularyRegistry, unknown: str) -> str | None:
    """Closest registry name by edit distance over local names.

    Eligible when distance divided by the longer local name's length is at
    most 0.5 (compared exactly, no float arithmetic); ties broken
    alphabetically; None when nothing is close enough.
    """
    local = unknown.partition(":")[2]
    best: tuple[int, str] | None = None
    for name in registry.entries:
        other = name.partition(":")[2]
        distance = levenshtein(local, other)
        if 2 * distance > max(len(local), len(other)):
            continue
        candidate = (distance, name)
        if best is None or candidate < best:
            best = candidate
    return best[1] if best is not None else None


_FULL_DATE_RE = re.compile(r"(\d{4})-(\d{2})-(\d{2})\Z")
_DATE_TIME_RE = re.compile(
    r"(\d{4})-(\d{2})-(\d{2})"
    r"[Tt](\d{2}):(\d{2}):(\d{2})(?:\.\d+)?"
    r"(?:[Zz]|([+-])(\d{2}):(\d{2}))\Z"
)

_DAYS_IN_MONTH = (31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31)


def _valid_date(year: int, month: int, day: int) -> bool:
    if not 1 <= month <= 12:
        return False
    days = _DAYS_IN_MONTH[month - 1]
    if month == 2 and (year % 4 == 0 and (year % 100 != 0 or year % 400 == 0)):
        days = 29
    return 1 <= day <= days


def check_datetime(value: str) -> bool:
    """True iff *value* is an RFC 3339 full-date or date-time.

    Seconds up to 60 are accepted (leap seconds); numeric offsets are
    range-checked like the time-of-day fields.
    """
    match = _FULL_DATE_RE.match(value)
    if match:
        return _valid_date(*(int(g) for g in match.groups()))
    match = _DATE_TIME_RE.match(value)
    if match is None:
        return False
    year, month, day = (int(match.group(i)) for i in (1, 2, 3))
    hour, minute, second = (int(match.group(i)) for i in (4, 5, 6))
    if not _valid_date(year, month, day):
        return False
    if hour > 23 or minute > 59 or second > 60:
        return False
    if match.group(7) is not None:
        if int(match.group(8)) > 23 or int(match.group(9)) > 59:
            return False
    return True


def _type_name(value: object) -> str:
    return {
        bool: "boolean",
        int: "number",
        float: "number",
        str: "string",
        type(None): "null",
        dict: "object",
        list: "array",
    }.get(type(value), type(value).__name__)


def _value_diagnostics(
    key: str,
    values: ValueList,
    expected: ExpectedType | None,
    recommended: tuple[str, ...],
    out: list[Diagnostic],
) -> None:
    recommended_folded = {r.strip().lower() for r in recommended}
    for index, value in enumerate(values.values):
        path = f"/{key}/{index}" if values.was_array else f"/{key}"
        if isinstance(value, str) and value == "":
            out.append(
                Diagnostic(
                    Severity.WARNING,
                    "RAI006",
                    path,
                    f'empty string value for "{key}"',
                )
            )
            continue
        if isinstance(value, (dict, list)):
            out.append(
                Diagnostic(
                    Severity.ERROR,
                    "RAI007",
                    path,
                    f'value for "{key}" is a nested {_type_name(value)}; '
                    "only scalars and arrays of scalars are allowed",
                )
            )
            continue
        if expected is None:
            continue
        if not isinstance(value, str):
            out.append(
                Diagnostic(
                    Severity.ERROR,
                    "RAI004",
                    path,
                    f'expected {expected.value} for "{key}", '
                    f"got {_type_name(value)}",
                )
            )
            continue
        if expected is ExpectedType.DATETIME and not check_datetime(value):
            out.append(
                Diagnostic(
                    Severity.ERROR,
                    "RAI004",
                    path,
                    f'value "{value}" for "{key}" is not an RFC 3339 '
                    "full-date or date-time",
                )
            )
        if recommended_folded and value.strip().lower() not in recommended_folded:
            out.append(
                Diagnostic(
                    Severity.WARNING,
                    "RAI005",
                    path,
                    f'value "{value}" for "{key}" is not among the '
                    "recommended values",
                )
            )


def validate(
    doc: MetadataDocument,
    registry: VocabularyRegistry | None = None,
    mode: ValidationMode = ValidationMode.LENIENT,
) -> ValidationReport:
    """Apply rules RAI001 through RAI007; see the module table for severities."""
    if registry is None:
        registry = builtin()
    strict = mode is ValidationMode.STRICT
    diagnostics: list[Diagnostic] = []

    if CONFORMANCE_ID not in doc.conforms_to:
        diagnostics.append(
            Diagnostic(
                Severity.ERROR if strict else Severity.INFO,
                "RAI001",
                "/dct:conformsTo",
                f'document does not declare conformance to "{CONFORMANCE_ID}"',
            )
        )

    for key, values in doc.properties.items():
        if not key.startswith("rai:"):
            continue
        descriptor = registry.entries.get(key)
        if descriptor is None:
            diagnostics.append(
                Diagnostic(
                    Severity.ERROR,
                    "RAI002",
                    f"/{key}",
                    f'unknown property "{key}"',
                    suggestion=suggest_property(registry, key),
                )
            )
        if not values.values:
            diagnostics.append(
                Diagnostic(
                    Severity.WARNING,
                    "RAI006",
                    f"/{key}",
                    f'empty array value for "{key}"',
                )
            )
            continue
        if descriptor is not None:
            if descriptor.cardinality is Cardinality.ONE and len(values) >= 2:
                diagnostics.append(
                    Diagnostic(
                        Severity.ERROR if strict else Severity.WARNING,
                        "RAI003",
                        f"/{key}",
                        f'"{key}" admits a single value, found {len(values)}',
                    )
                )
            _value_diagnostics(
                key,
                values,
                descriptor.expected_type,
                descriptor.recommended_values,
                diagnostics,
            )
        else:
            _value_diagnostics(key, values, None, (), diagnostics)

    diagnostics.sort(key=lambda d: (d.path, d.code))
    counts = SeverityCounts(
        errors=sum(1 for d in diagnostics if d.severity is Severity.ERROR),
        warnings=sum(1 for d in diagnostics if d.severity is Severity.WARNING),
        infos=sum(1 for d in diagnostics if d.severity is Severity.INFO),
    )
    return ValidationReport(
        conformant=counts.errors == 0,
        mode=mode,
        diagnostics=tuple(diagnostics),
        counts=counts,
        registry_version=registry.version,
    )
