"""Parsing, querying, and canonical re-serialization of metadata documents.

The profile is compact JSON-LD: prefixed keys under a fixed default context
(sc, cr, rai, dct), values restricted to scalars and arrays of scalars.
Everything outside the profile is preserved verbatim and survives the
parse -> canonicalize round trip unchanged.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterator, Mapping

from .vocabulary import Cardinality, VocabularyRegistry, builtin

#: Default prefix bindings. The rai/cr namespace IRIs are derived from the
#: conformance id; user contexts may add prefixes but never rebind these.
DEFAULT_PREFIXES: Mapping[str, str] = {
    "sc": "https://schema.org/",
    "cr": "http://mlcommons.org/croissant/",
    "rai": "http://mlcommons.org/croissant/RAI/",
    "dct": "http://purl.org/dc/terms/",
}

_CONFORMS_KEY = "dct:conformsTo"


class ParseError(ValueError):
    """Base class for structured parse failures."""

    code = "parse-error"


class JsonSyntaxError(ParseError):
    """Malformed JSON or invalid UTF-8, with a byte offset into the input."""

    code = "syntax"

    def __init__(self, message: str, byte_offset: int):
        super().__init__(f"{message} (byte {byte_offset})")
        self.byte_offset = byte_offset


class DuplicateKeyError(ParseError):
    """The same key appears twice in one object; rejected, never last-wins."""

    code = "duplicate-key"

    def __init__(self, key: str):
        super().__init__(f"duplicate key {key!r}")
        self.key = key


class NotAnObjectError(ParseError):
    """The top level (or embedded document) is not a JSON object."""

    code = "not-an-object"


class CanonicalizationError(ValueError):
    """The document holds content that has no canonical JSON form
    (non-finite numbers, lone surrogates)."""


@dataclass(frozen=True)
class PrefixMap:
    """prefix -> namespace-IRI bindings; defaults always present."""

    bindings: Mapping[str, str]

    @classmethod
    def default(cls) -> "PrefixMap":
        return cls(bindings=dict(DEFAULT_PREFIXES))

    def with_additions(self, additions: Mapping[str, str]) -> "PrefixMap":
        """New map with extra prefixes; attempts to rebind defaults are ignored."""
        merged = dict(self.bindings)
        for prefix, iri in additions.items():
            if prefix not in DEFAULT_PREFIXES:
                merged[prefix] = iri
        return PrefixMap(bindings=merged)

    def split(self, key: str) -> tuple[str, str] | None:
        """(prefix, local) when *key* is prefixed with a bound prefix."""
        prefix, sep, local = key.partition(":")
        if not sep or not local or prefix not in self.bindings:
            return None
        return prefix, local

    def resolve(self, key: str) -> str | None:
        """Full IRI for a prefixed key, or None when not resolvable."""
        parts = self.split(key)
        if parts is None:
            return None
        return self.bindings[parts[0]] + parts[1]

    def canonical_key(self, key: str) -> str | None:
        """Rewrite *key* onto the default prefix for its namespace.

        An alias prefix bound to the same IRI as a default collapses onto
        the default ("r2:dataBiases" -> "rai:dataBiases"); keys under
        namespaces without a default prefix keep their own prefix.
        """
        parts = self.split(key)
        if parts is None:
            return None
        prefix, local = parts
        iri = self.bindings[prefix]
        for default_prefix, default_iri in DEFAULT_PREFIXES.items():
            if iri == default_iri:
                return f"{default_prefix}:{local}"
        return key


@dataclass(frozen=True)
class ValueList:
    """Values of one property, with the source shape (scalar vs array)."""

    values: tuple[Any, ...]
    was_array: bool

    def __iter__(self) -> Iterator[Any]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True, eq=False)
class MetadataDocument:
    """A parsed metadata document. Immutable; all operations are pure."""

    declared_type: str | None = None
    name: str | None = None
    conforms_to: tuple[str, ...] = ()
    properties: Mapping[str, ValueList] = field(default_factory=dict)
    unknown_content: Mapping[str, Any] = field(default_factory=dict)
    prefixes: PrefixMap = field(default_factory=PrefixMap.default)
    context: Any = None
    source_path: str | None = None
    #: Original top-level key order; drives the canonical tail ordering.
    source_order: tuple[str, ...] = ()

    def __eq__(self, other: object) -> bool:
        # Semantic equality: serialization-shape flags (was_array), source
        # path, and source key order are not part of document identity.
        if not isinstance(other, MetadataDocument):
            return NotImplemented
        return (
            self.declared_type == other.declared_type
            and self.name == other.name
            and self.conforms_to == other.conforms_to
            and {k: v.values for k, v in self.properties.items()}
            == {k: v.values for k, v in other.properties.items()}
            and dict(self.unknown_content) == dict(other.unknown_content)
            and self.context == other.context
        )

    __hash__ = None  # type: ignore[assignment]


def _reject_duplicate_pairs(pairs: list[tuple[str, Any]]) -> dict:
    obj: dict = {}
    for key, value in pairs:
        if key in obj:
            raise DuplicateKeyError(key)
        obj[key] = value
    return obj


def normalize_conformance(value: str) -> str:
    """Strip a leading http(s) scheme and a single trailing slash."""
    for scheme in ("https://", "http://"):
        if value.startswith(scheme):
            value = value[len(scheme):]
            break
    if value.endswith("/"):
        value = value[:-1]
    return value


def _decode(data: bytes | str) -> str:
    if isinstance(data, bytes):
        if data.startswith(b"\xef\xbb\xbf"):
            data = data[3:]
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise JsonSyntaxError("invalid UTF-8", exc.start) from None
    if data.startswith("﻿"):
        data = data[1:]
    return data


def load_json(data: bytes | str) -> Any:
    """Strict JSON load: BOM tolerated, duplicate keys rejected, syntax
    errors reported with a byte offset."""
    text = _decode(data)
    try:
        return json.loads(text, object_pairs_hook=_reject_duplicate_pairs)
    except DuplicateKeyError:
        raise
    except json.JSONDecodeError as exc:
        raise JsonSyntaxError(exc.msg, len(text[: exc.pos].encode("utf-8"))) from None


def parse(data: bytes | str, source_path: str | None = None) -> MetadataDocument:
    """Parse UTF-8 JSON text into a MetadataDocument.

    Raises JsonSyntaxError (with byte offset), DuplicateKeyError, or
    NotAnObjectError; absence of profile content is never an error.
    """
    return from_value(load_json(data), source_path=source_path)


def from_value(value: Any, source_path: str | None = None) -> MetadataDocument:
    """Build a MetadataDocument from an already-parsed JSON value."""
    if not isinstance(value, dict):
        raise NotAnObjectError(f"document must be a JSON object, got {type(value).__name__}")

    prefixes = PrefixMap.default()
    context = value.get("@context")
    if isinstance(context, dict):
        additions = {
            k: v for k, v in context.items() if isinstance(k, str) and isinstance(v, str)
        }
        prefixes = prefixes.with_additions(additions)

    declared_type: str | None = None
    name: str | None = None
    conforms_to: tuple[str, ...] = ()
    saw_conforms_to = False
    properties: dict[str, ValueList] = {}
    unknown: dict[str, Any] = {}
    order: list[str] = []

    for key, raw in value.items():
        if key == "@context":
            order.append(key)
            continue
        if key == "@type" and isinstance(raw, str):
            declared_type = raw
            order.append(key)
            continue
        if key == "name" and isinstance(raw, str):
            name = raw
            order.append(key)
            continue
        canonical = prefixes.canonical_key(key)
        if canonical == _CONFORMS_KEY:
            if saw_conforms_to:
                raise DuplicateKeyError(_CONFORMS_KEY)
            if isinstance(raw, str):
                conforms_to = (normalize_conformance(raw),)
                saw_conforms_to = True
                order.append(_CONFORMS_KEY)
                continue
            if isinstance(raw, list) and all(isinstance(v, str) for v in raw):
                conforms_to = tuple(normalize_conformance(v) for v in raw)
                saw_conforms_to = True
                order.append(_CONFORMS_KEY)
                continue
            # Outside the profile (non-string ids): preserve verbatim.
            unknown[key] = raw
            order.append(key)
            continue
        if canonical is not None:
            if canonical in properties:
                raise DuplicateKeyError(canonical)
            if isinstance(raw, list):
                properties[canonical] = ValueList(tuple(raw), was_array=True)
            else:
                properties[canonical] = ValueList((raw,), was_array=False)
            order.append(canonical)
            continue
        unknown[key] = raw
        order.append(key)

    return MetadataDocument(
        declared_type=declared_type,
        name=name,
        conforms_to=conforms_to,
        properties=properties,
        unknown_content=unknown,
        prefixes=prefixes,
        context=context,
        source_path=source_path,
        source_order=tuple(order),
    )


def values_of(doc: MetadataDocument, name: str) -> ValueList | None:
    """Values stored under *name* (exact match after prefix normalization)."""
    canonical = doc.prefixes.canonical_key(name)
    return doc.properties.get(canonical if canonical is not None else name)


def _shaped(values: ValueList, cardinality: Cardinality | None) -> Any:
    # Cardinality reshaping only applies to registry-known properties: ONE
    # collapses singletons to scalars, MANY always serializes an array.
    # Everything else keeps its source shape. A singleton whose value is
    # itself a list must not collapse: the emitted list would reparse as
    # the value array instead of one nested value.
    if cardinality is Cardinality.ONE:
        if len(values) == 1 and not isinstance(values.values[0], list):
            return values.values[0]
        return list(values.values)
    if cardinality is Cardinality.MANY:
        return list(values.values)
    if values.was_array:
        return list(values.values)
    return values.values[0]


def canonicalize(doc: MetadataDocument, registry: VocabularyRegistry | None = None) -> bytes:
    """Deterministic serialization of *doc* (the `fmt` form).

    Key order: @context, @type, name, dct:conformsTo, then sc:/cr:/rai:
    groups each sorted, then remaining keys in source order. 2-space
    indent, UTF-8, LF, one trailing newline, non-ASCII unescaped.
    """
    if registry is None:
        registry = builtin()

    payload: dict[str, Any] = {}
    if doc.context is not None:
        payload["@context"] = doc.context
    if doc.declared_type is not None:
        payload["@type"] = doc.declared_type
    if doc.name is not None:
        payload["name"] = doc.name
    if doc.conforms_to:
        ids = list(doc.conforms_to)
        payload[_CONFORMS_KEY] = ids[0] if len(ids) == 1 else ids

    for group in ("sc:", "cr:", "rai:"):
        for key in sorted(k for k in doc.properties if k.startswith(group)):
            descriptor = registry.entries.get(key)
            payload[key] = _shaped(
                doc.properties[key],
                descriptor.cardinality if descriptor is not None else None,
            )

    # Tail: properties outside the sc/cr/rai groups plus unknown content,
    # interleaved back into their original source order.
    position = {key: index for index, key in enumerate(doc.source_order)}
    tail: list[str] = [k for k in doc.properties if k not in payload]
    tail += [k for k in doc.unknown_content if k not in payload]
    tail.sort(key=lambda k: position.get(k, len(position)))
    for key in tail:
        if key in doc.properties:
            payload[key] = _shaped(doc.properties[key], None)
        else:
            payload[key] = doc.unknown_content[key]

    try:
        text = json.dumps(payload, indent=2, ensure_ascii=False, allow_nan=False)
        return (text + "\n").encode("utf-8")
    except (ValueError, UnicodeEncodeError) as exc:
        raise CanonicalizationError(str(exc)) from None
