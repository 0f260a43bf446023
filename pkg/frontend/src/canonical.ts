/**
 * Document model and canonical serializer, mirroring the service's `fmt`
 * output byte for byte.
 *
 * The service exposes validation, coverage, and the vocabulary over HTTP
 * but not canonicalization, so the editor carries its own copy of the
 * rules: fixed default prefixes (sc, cr, rai, dct) with alias collapsing,
 * conformance-id normalization, cardinality-aware value shaping, and the
 * canonical key order (@context, @type, name, dct:conformsTo, then the
 * sc:/cr:/rai: groups each sorted by code point, then everything else in
 * source order).  Unknown content is preserved verbatim.
 */

import {
  DuplicateKeyError,
  JsonNode,
  SerializationError,
  parseJson,
  serializeIndented,
  stringNode,
} from "./json.js";

export const DEFAULT_PREFIXES: ReadonlyArray<readonly [string, string]> = [
  ["sc", "https://schema.org/"],
  ["cr", "http://mlcommons.org/croissant/"],
  ["rai", "http://mlcommons.org/croissant/RAI/"],
  ["dct", "http://purl.org/dc/terms/"],
];

const DEFAULT_PREFIX_NAMES = new Set(DEFAULT_PREFIXES.map(([prefix]) => prefix));

const CONFORMS_KEY = "dct:conformsTo";

export class NotAnObjectError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "NotAnObjectError";
  }
}

export class CanonicalizationError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "CanonicalizationError";
  }
}

export type Cardinality = "ONE" | "MANY";

/** One vocabulary descriptor, as served by GET /v1/vocabulary. */
export interface VocabEntry {
  name: string;
  expectedType: string;
  useCase: string;
  cardinality: Cardinality;
  description: string;
  recommendedValues?: string[];
}

/** property name -> descriptor, for cardinality-aware shaping. */
export type Registry = ReadonlyMap<string, VocabEntry>;

export function buildRegistry(entries: VocabEntry[]): Registry {
  return new Map(entries.map((entry) => [entry.name, entry]));
}

/** Values of one property plus the source shape (scalar vs array). */
export interface PropertyValues {
  values: JsonNode[];
  wasArray: boolean;
}

/** A parsed metadata document; mutate only through the editor store. */
export interface DocumentModel {
  declaredType: string | null;
  name: string | null;
  conformsTo: string[];
  properties: Map<string, PropertyValues>;
  unknown: Map<string, JsonNode>;
  prefixes: Map<string, string>;
  context: JsonNode | null;
  sourceOrder: string[];
}

function defaultPrefixMap(): Map<string, string> {
  return new Map(DEFAULT_PREFIXES);
}

/** Merge context-declared prefixes; rebinding a default is ignored. */
function withAdditions(
  base: Map<string, string>,
  additions: Iterable<readonly [string, string]>,
): Map<string, string> {
  const merged = new Map(base);
  for (const [prefix, iri] of additions) {
    if (!DEFAULT_PREFIX_NAMES.has(prefix)) {
      merged.set(prefix, iri);
    }
  }
  return merged;
}

function splitKey(
  prefixes: Map<string, string>,
  key: string,
): [string, string] | null {
  const colon = key.indexOf(":");
  if (colon === -1) {
    return null;
  }
  const prefix = key.slice(0, colon);
  const local = key.slice(colon + 1);
  if (local === "" || !prefixes.has(prefix)) {
    return null;
  }
  return [prefix, local];
}

/**
 * Rewrite a key onto the default prefix for its namespace.  An alias bound
 * to the same IRI as a default collapses onto the default; keys under
 * namespaces without a default prefix keep their own prefix.  Null when
 * the key is not prefixed with a bound prefix.
 */
export function canonicalKey(
  prefixes: Map<string, string>,
  key: string,
): string | null {
  const parts = splitKey(prefixes, key);
  if (parts === null) {
    return null;
  }
  const [prefix, local] = parts;
  const iri = prefixes.get(prefix);
  for (const [defaultPrefix, defaultIri] of DEFAULT_PREFIXES) {
    if (iri === defaultIri) {
      return `${defaultPrefix}:${local}`;
    }
  }
  return key;
}

/** Strip a leading http(s) scheme and a single trailing slash. */
export function normalizeConformance(value: string): string {
  for (const scheme of ["https://", "http://"]) {
    if (value.startsWith(scheme)) {
      value = value.slice(scheme.length);
      break;
    }
  }
  if (value.endsWith("/")) {
    value = value.slice(0, -1);
  }
  return value;
}

/** Build a DocumentModel from a parsed JSON node tree. */
export function fromNode(node: JsonNode): DocumentModel {
  if (node.kind !== "object") {
    throw new NotAnObjectError(`document must be a JSON object, got ${node.kind}`);
  }

  let prefixes = defaultPrefixMap();
  let context: JsonNode | null = null;
  for (const [key, value] of node.entries) {
    if (key === "@context") {
      context = value.kind === "null" ? null : value;
      if (value.kind === "object") {
        const additions: Array<[string, string]> = [];
        for (const [prefix, iri] of value.entries) {
          if (iri.kind === "string") {
            additions.push([prefix, iri.value]);
          }
        }
        prefixes = withAdditions(prefixes, additions);
      }
    }
  }

  let declaredType: string | null = null;
  let name: string | null = null;
  let conformsTo: string[] = [];
  let sawConformsTo = false;
  const properties = new Map<string, PropertyValues>();
  const unknown = new Map<string, JsonNode>();
  const order: string[] = [];

  for (const [key, raw] of node.entries) {
    if (key === "@context") {
      order.push(key);
      continue;
    }
    if (key === "@type" && raw.kind === "string") {
      declaredType = raw.value;
      order.push(key);
      continue;
    }
    if (key === "name" && raw.kind === "string") {
      name = raw.value;
      order.push(key);
      continue;
    }
    const canonical = canonicalKey(prefixes, key);
    if (canonical === CONFORMS_KEY) {
      if (sawConformsTo) {
        throw new DuplicateKeyError(CONFORMS_KEY);
      }
      if (raw.kind === "string") {
        conformsTo = [normalizeConformance(raw.value)];
        sawConformsTo = true;
        order.push(CONFORMS_KEY);
        continue;
      }
      if (raw.kind === "array" && raw.items.every((item) => item.kind === "string")) {
        conformsTo = raw.items.map((item) =>
          normalizeConformance((item as { kind: "string"; value: string }).value),
        );
        sawConformsTo = true;
        order.push(CONFORMS_KEY);
        continue;
      }
      // Non-string conformance ids sit outside the profile: keep verbatim.
      unknown.set(key, raw);
      order.push(key);
      continue;
    }
    if (canonical !== null) {
      if (properties.has(canonical)) {
        throw new DuplicateKeyError(canonical);
      }
      if (raw.kind === "array") {
        properties.set(canonical, { values: [...raw.items], wasArray: true });
      } else {
        properties.set(canonical, { values: [raw], wasArray: false });
      }
      order.push(canonical);
      continue;
    }
    unknown.set(key, raw);
    order.push(key);
  }

  return {
    declaredType,
    name,
    conformsTo,
    properties,
    unknown,
    prefixes,
    context,
    sourceOrder: order,
  };
}

/** Parse UTF-8 JSON bytes or text into a DocumentModel. */
export function parseDocument(data: Uint8Array | string): DocumentModel {
  return fromNode(parseJson(data));
}

/** Compare strings by Unicode code point (not UTF-16 code unit). */
export function compareCodePoints(a: string, b: string): number {
  let i = 0;
  let j = 0;
  while (i < a.length && j < b.length) {
    const ca = a.codePointAt(i) as number;
    const cb = b.codePointAt(j) as number;
    if (ca !== cb) {
      return ca < cb ? -1 : 1;
    }
    i += ca > 0xffff ? 2 : 1;
    j += cb > 0xffff ? 2 : 1;
  }
  if (i < a.length) {
    return 1;
  }
  if (j < b.length) {
    return -1;
  }
  return 0;
}

function shaped(values: PropertyValues, cardinality: Cardinality | null): JsonNode {
  // Cardinality reshaping only applies to registry-known properties: ONE
  // collapses singletons to scalars, MANY always serializes an array.
  // Everything else keeps its source shape.  A singleton whose value is
  // itself an array must not collapse: the emitted array would reparse as
  // the value list instead of one nested value.
  if (cardinality === "ONE") {
    const only = values.values[0];
    if (values.values.length === 1 && only !== undefined && only.kind !== "array") {
      return only;
    }
    return { kind: "array", items: [...values.values] };
  }
  if (cardinality === "MANY") {
    return { kind: "array", items: [...values.values] };
  }
  if (values.wasArray) {
    return { kind: "array", items: [...values.values] };
  }
  return values.values[0] as JsonNode;
}

/** The document as an object node in canonical key order. */
export function toNode(doc: DocumentModel, registry: Registry): JsonNode {
  const entries: Array<[string, JsonNode]> = [];
  const placed = new Set<string>();
  const put = (key: string, value: JsonNode): void => {
    entries.push([key, value]);
    placed.add(key);
  };

  if (doc.context !== null) {
    put("@context", doc.context);
  }
  if (doc.declaredType !== null) {
    put("@type", stringNode(doc.declaredType));
  }
  if (doc.name !== null) {
    put("name", stringNode(doc.name));
  }
  if (doc.conformsTo.length > 0) {
    put(
      CONFORMS_KEY,
      doc.conformsTo.length === 1
        ? stringNode(doc.conformsTo[0] as string)
        : { kind: "array", items: doc.conformsTo.map(stringNode) },
    );
  }

  for (const group of ["sc:", "cr:", "rai:"]) {
    const keys = [...doc.properties.keys()]
      .filter((key) => key.startsWith(group))
      .sort(compareCodePoints);
    for (const key of keys) {
      const descriptor = registry.get(key);
      put(
        key,
        shaped(
          doc.properties.get(key) as PropertyValues,
          descriptor !== undefined ? descriptor.cardinality : null,
        ),
      );
    }
  }

  // Tail: properties outside the sc/cr/rai groups plus unknown content,
  // interleaved back into their original source order.
  const position = new Map<string, number>();
  doc.sourceOrder.forEach((key, index) => {
    if (!position.has(key)) {
      position.set(key, index);
    }
  });
  const tail = [
    ...[...doc.properties.keys()].filter((key) => !placed.has(key)),
    ...[...doc.unknown.keys()].filter((key) => !placed.has(key)),
  ];
  tail.sort((a, b) => {
    const pa = position.get(a) ?? position.size;
    const pb = position.get(b) ?? position.size;
    return pa - pb;
  });
  for (const key of tail) {
    const values = doc.properties.get(key);
    if (values !== undefined) {
      put(key, shaped(values, null));
    } else {
      put(key, doc.unknown.get(key) as JsonNode);
    }
  }

  return { kind: "object", entries };
}

/** Canonical text: 2-space indent, LF, one trailing newline. */
export function canonicalText(doc: DocumentModel, registry: Registry): string {
  try {
    return serializeIndented(toNode(doc, registry)) + "\n";
  } catch (error) {
    if (error instanceof SerializationError) {
      throw new CanonicalizationError(error.message);
    }
    throw error;
  }
}

/** Canonical UTF-8 bytes (what export writes to disk). */
export function canonicalize(doc: DocumentModel, registry: Registry): Uint8Array {
  return new TextEncoder().encode(canonicalText(doc, registry));
}

/** Current values of a property as display strings (form pre-fill). */
export function displayValues(doc: DocumentModel, property: string): string[] {
  const stored = doc.properties.get(property);
  if (stored === undefined) {
    return [];
  }
  return stored.values.map((value) => {
    switch (value.kind) {
      case "string":
        return value.value;
      case "int":
        return value.lexeme;
      case "float":
        return String(value.value);
      case "bool":
        return value.value ? "true" : "false";
      case "null":
        return "null";
      default:
        return "";
    }
  });
}

/**
 * Replace a property's values with strings; an empty list removes the
 * property.  The only mutation path besides import.
 */
export function setProperty(
  doc: DocumentModel,
  property: string,
  values: string[],
): void {
  if (values.length === 0) {
    doc.properties.delete(property);
    return;
  }
  doc.properties.set(property, {
    values: values.map(stringNode),
    wasArray: values.length !== 1,
  });
  if (!doc.sourceOrder.includes(property)) {
    doc.sourceOrder.push(property);
  }
}
