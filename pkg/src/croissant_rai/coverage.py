"""Use-case coverage scoring over the property registry.

A property counts as documented when it appears in the document with at
least one value that is not the empty string; validity of that value is
the validator's concern, not coverage's.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .document import MetadataDocument
from .vocabulary import UseCase, VocabularyRegistry, builtin, properties_for_use_case


class CoverageStatus(Enum):
    SCORED = "scored"
    NOT_MAPPABLE = "not-mappable"


@dataclass(frozen=True)
class UseCaseCoverage:
    use_case: UseCase
    status: CoverageStatus
    present: tuple[str, ...]
    missing: tuple[str, ...]
    #: Exact |present| / (|present| + |missing|); 0 when not mappable.
    ratio: Fraction


@dataclass(frozen=True)
class CoverageReport:
    per_use_case: tuple[UseCaseCoverage, ...]
    documented_total: int
    registry_version: str


def property_is_present(doc: MetadataDocument, name: str) -> bool:
    """True when *name* holds at least one non-empty-string value."""
    values = doc.properties.get(name)
    if values is None:
        return False
    return any(not (isinstance(v, str) and v == "") for v in values.values)


def compute_coverage(
    doc: MetadataDocument,
    registry: VocabularyRegistry | None = None,
    include_related: bool = False,
) -> CoverageReport:
    """Score *doc* against every use case of *registry*.

    include_related widens each use case's property set with the
    registry's related-external map (empty for the builtin registry).
    """
    if registry is None:
        registry = builtin()

    per_use_case: list[UseCaseCoverage] = []
    for use_case in UseCase:
        mapped = {d.name for d in properties_for_use_case(registry, use_case)}
        if include_related:
            mapped.update(registry.related_external.get(use_case.value, ()))
        if not mapped:
            per_use_case.append(
                UseCaseCoverage(
                    use_case=use_case,
                    status=CoverageStatus.NOT_MAPPABLE,
                    present=(),
                    missing=(),
                    ratio=Fraction(0),
                )
            )
            continue
        present = tuple(sorted(n for n in mapped if property_is_present(doc, n)))
        missing = tuple(sorted(n for n in mapped if not property_is_present(doc, n)))
        per_use_case.append(
            UseCaseCoverage(
                use_case=use_case,
                status=CoverageStatus.SCORED,
                present=present,
                missing=missing,
                ratio=Fraction(len(present), len(mapped)),
            )
        )

    documented_total = sum(
        1 for name in registry.entries if property_is_present(doc, name)
    )
    return CoverageReport(
        per_use_case=tuple(per_use_case),
        documented_total=documented_total,
        registry_version=registry.version,
    )
