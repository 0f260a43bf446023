"""Immutable registry of the Croissant-RAI vocabulary.

The builtin registry ships as a machine-readable resource
(``data/vocabulary.json``) so it stays diffable against the published
property table, and can be extended -- never redefined -- from
user-supplied extension documents.

Extension document format: a UTF-8 JSON file (no BOM) holding an array of
objects with keys ``name``, ``expectedType`` ("Text" | "DateTime"),
``useCase`` (stable use-case id), ``cardinality`` ("ONE" | "MANY"),
optional ``description``, optional ``recommendedValues`` (array of strings).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from importlib import resources
from typing import Iterable, Mapping

REGISTRY_VERSION = "1.0"

#: Conformance id declared by documents that follow this vocabulary.
CONFORMANCE_ID = "mlcommons.org/croissant/RAI/1.0"

PROPERTY_NAME_RE = re.compile(r"rai:[A-Za-z][A-Za-z0-9]*\Z")


class UseCase(Enum):
    """The five documentation use cases, in their fixed reporting order."""

    DATA_LIFE_CYCLE = "data-life-cycle"
    DATA_LABELING = "data-labeling"
    PARTICIPATORY_DATA = "participatory-data"
    AI_SAFETY_FAIRNESS = "ai-safety-fairness"
    REGULATORY_COMPLIANCE = "regulatory-compliance"

    @classmethod
    def from_id(cls, value: str) -> "UseCase":
        for member in cls:
            if member.value == value:
                return member
        raise ValueError(f"unknown use-case id: {value!r}")


class Cardinality(Enum):
    ONE = "ONE"
    MANY = "MANY"


class ExpectedType(Enum):
    TEXT = "Text"
    DATETIME = "DateTime"


class VocabularyError(Exception):
    """Base class for registry construction failures."""


class DuplicatePropertyError(VocabularyError):
    """An extension tries to (re)define a name the registry already holds."""

    def __init__(self, name: str):
        super().__init__(f"extension redefines existing property {name!r}")
        self.name = name


class MalformedExtensionError(VocabularyError):
    """An extension document violates the extension format."""


@dataclass(frozen=True)
class PropertyDescriptor:
    """One vocabulary entry (one row of the property table)."""

    name: str
    expected_type: ExpectedType
    use_case: UseCase
    cardinality: Cardinality
    description: str = ""
    recommended_values: tuple[str, ...] = ()

    @property
    def local_name(self) -> str:
        """The name without its ``rai:`` prefix."""
        return self.name.split(":", 1)[1]

    def as_json(self) -> dict:
        """Extension-document shape for this entry (plus description)."""
        obj: dict = {
            "name": self.name,
            "expectedType": self.expected_type.value,
            "useCase": self.use_case.value,
            "cardinality": self.cardinality.value,
            "description": self.description,
        }
        if self.recommended_values:
            obj["recommendedValues"] = list(self.recommended_values)
        return obj


@dataclass(frozen=True)
class VocabularyRegistry:
    """Immutable name -> descriptor registry; safe to share across threads."""

    version: str
    entries: Mapping[str, PropertyDescriptor]
    source: str = "builtin"
    #: Optional use-case -> external (sc:/cr:) property names map; empty by
    #: default because only the rai: set is fully enumerable.
    related_external: Mapping[UseCase, tuple[str, ...]] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)


def _descriptor_from_json(obj: object) -> PropertyDescriptor:
    if not isinstance(obj, dict):
        raise MalformedExtensionError(f"extension entry must be an object, got {type(obj).__name__}")
    try:
        name = obj["name"]
        expected_type = obj["expectedType"]
        use_case = obj["useCase"]
        cardinality = obj["cardinality"]
    except KeyError as exc:
        raise MalformedExtensionError(f"extension entry missing required key {exc.args[0]!r}") from None
    if not isinstance(name, str) or not PROPERTY_NAME_RE.fullmatch(name):
        raise MalformedExtensionError(f"bad property name {name!r} (expected rai:LocalName)")
    try:
        etype = ExpectedType(expected_type)
    except ValueError:
        raise MalformedExtensionError(f"bad expectedType {expected_type!r} for {name}") from None
    try:
        uc = UseCase.from_id(use_case) if isinstance(use_case, str) else None
    except ValueError:
        uc = None
    if uc is None:
        raise MalformedExtensionError(f"bad useCase {use_case!r} for {name}")
    try:
        card = Cardinality(cardinality)
    except ValueError:
        raise MalformedExtensionError(f"bad cardinality {cardinality!r} for {name}") from None
    description = obj.get("description", "")
    if not isinstance(description, str):
        raise MalformedExtensionError(f"description for {name} must be a string")
    recommended = obj.get("recommendedValues", [])
    if not isinstance(recommended, list) or any(not isinstance(v, str) for v in recommended):
        raise MalformedExtensionError(f"recommendedValues for {name} must be an array of strings")
    return PropertyDescriptor(
        name=name,
        expected_type=etype,
        use_case=uc,
        cardinality=card,
        description=description,
        recommended_values=tuple(v.strip() for v in recommended),
    )


def registry_from_entries(
    descriptors: Iterable[PropertyDescriptor],
    version: str = REGISTRY_VERSION,
    source: str = "builtin",
) -> VocabularyRegistry:
    """Build a registry from descriptors, rejecting duplicate names."""
    entries: dict[str, PropertyDescriptor] = {}
    for desc in descriptors:
        if desc.name in entries:
            raise DuplicatePropertyError(desc.name)
        entries[desc.name] = desc
    return VocabularyRegistry(version=version, entries=entries, source=source)


@lru_cache(maxsize=1)
def builtin() -> VocabularyRegistry:
    """The 20-entry builtin registry, loaded from the packaged resource."""
    raw = resources.files("croissant_rai").joinpath("data/vocabulary.json").read_text("utf-8")
    return registry_from_entries(_descriptor_from_json(obj) for obj in json.loads(raw))


def lookup(registry: VocabularyRegistry, name: str) -> PropertyDescriptor | None:
    """Exact, case-sensitive descriptor lookup; None when unknown."""
    return registry.entries.get(name)


def properties_for_use_case(registry: VocabularyRegistry, use_case: UseCase) -> list[PropertyDescriptor]:
    """All descriptors assigned to *use_case*, sorted by name (may be empty)."""
    return sorted(
        (d for d in registry.entries.values() if d.use_case is use_case),
        key=lambda d: d.name,
    )


def parse_extension(data: bytes | str) -> list[PropertyDescriptor]:
    """Parse an extension document (see module docstring for the format)."""
    if isinstance(data, bytes):
        if data.startswith(b"\xef\xbb\xbf"):
            raise MalformedExtensionError("extension document must be UTF-8 without BOM")
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedExtensionError(f"extension document is not valid UTF-8: {exc}") from None
    try:
        parsed = json.loads(data)
    except json.JSONDecodeError as exc:
        raise MalformedExtensionError(f"extension document is not valid JSON: {exc}") from None
    if not isinstance(parsed, list):
        raise MalformedExtensionError("extension document must be a JSON array of entries")
    return [_descriptor_from_json(obj) for obj in parsed]


def extend(
    registry: VocabularyRegistry,
    extension: Iterable[PropertyDescriptor] | bytes | str,
) -> VocabularyRegistry:
    """A new registry = *registry* plus the extension entries.

    Accepts parsed descriptors or raw extension-document text. Existing
    names (builtin or previously extended) are never redefined.
    """
    if isinstance(extension, (bytes, str)):
        extension = parse_extension(extension)
    entries = dict(registry.entries)
    for desc in extension:
        if desc.name in entries:
            raise DuplicatePropertyError(desc.name)
        entries[desc.name] = desc
    return VocabularyRegistry(
        version=registry.version,
        entries=entries,
        source="builtin+extension",
        related_external=registry.related_external,
    )


def registry_to_json(registry: VocabularyRegistry) -> list[dict]:
    """Registry dump: descriptor objects sorted by name."""
    return [registry.entries[name].as_json() for name in sorted(registry.entries)]
