/**
 * Strict JSON handling with byte-stable re-serialization.
 *
 * The parser keeps what standard JSON.parse throws away: object key order,
 * duplicate-key detection at every depth, and the distinction between
 * integer and floating-point number tokens (integers keep their exact
 * lexeme, so arbitrarily large ids survive a round trip).  The serializer
 * reproduces the byte form the validation service and CLI emit: two-space
 * indentation, unescaped non-ASCII, shortest-round-trip float rendering
 * with scientific notation for magnitudes >= 1e16 or < 1e-4, and refusal
 * of non-finite numbers and unpaired surrogates.
 */

export type JsonNode =
  | { kind: "object"; entries: Array<[string, JsonNode]> }
  | { kind: "array"; items: JsonNode[] }
  | { kind: "string"; value: string }
  | { kind: "int"; lexeme: string }
  | { kind: "float"; value: number }
  | { kind: "bool"; value: boolean }
  | { kind: "null" };

export class JsonSyntaxError extends Error {
  readonly byteOffset: number;

  constructor(message: string, byteOffset: number) {
    super(`${message} (byte ${byteOffset})`);
    this.name = "JsonSyntaxError";
    this.byteOffset = byteOffset;
  }
}

export class DuplicateKeyError extends Error {
  readonly key: string;

  constructor(key: string) {
    super(`duplicate key ${JSON.stringify(key)}`);
    this.name = "DuplicateKeyError";
    this.key = key;
  }
}

export class SerializationError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SerializationError";
  }
}

const encoder = new TextEncoder();
const decoder = new TextDecoder("utf-8", { fatal: true });

function decodeInput(data: Uint8Array | string): string {
  if (typeof data === "string") {
    return data.startsWith("﻿") ? data.slice(1) : data;
  }
  let bytes = data;
  if (bytes.length >= 3 && bytes[0] === 0xef && bytes[1] === 0xbb && bytes[2] === 0xbf) {
    bytes = bytes.subarray(3);
  }
  try {
    return decoder.decode(bytes);
  } catch {
    // Locate the first undecodable byte for the error offset.
    let offset = 0;
    const lax = new TextDecoder("utf-8", { fatal: true });
    for (let end = 1; end <= bytes.length; end += 1) {
      try {
        lax.decode(bytes.subarray(0, end));
        offset = end;
      } catch {
        break;
      }
    }
    throw new JsonSyntaxError("invalid UTF-8", offset);
  }
}

class Parser {
  private readonly text: string;
  private position = 0;

  constructor(text: string) {
    this.text = text;
  }

  parse(): JsonNode {
    this.skipWhitespace();
    const node = this.parseValue();
    this.skipWhitespace();
    if (this.position < this.text.length) {
      this.fail("Extra data");
    }
    return node;
  }

  private fail(message: string): never {
    const byteOffset = encoder.encode(this.text.slice(0, this.position)).length;
    throw new JsonSyntaxError(message, byteOffset);
  }

  private skipWhitespace(): void {
    while (this.position < this.text.length) {
      const ch = this.text[this.position];
      if (ch === " " || ch === "\t" || ch === "\n" || ch === "\r") {
        this.position += 1;
      } else {
        break;
      }
    }
  }

  private parseValue(): JsonNode {
    if (this.position >= this.text.length) {
      this.fail("Expecting value");
    }
    const ch = this.text[this.position];
    switch (ch) {
      case "{":
        return this.parseObject();
      case "[":
        return this.parseArray();
      case '"':
        return { kind: "string", value: this.parseString() };
      case "t":
        this.expectLiteral("true");
        return { kind: "bool", value: true };
      case "f":
        this.expectLiteral("false");
        return { kind: "bool", value: false };
      case "n":
        this.expectLiteral("null");
        return { kind: "null" };
      default:
        return this.parseNumber();
    }
  }

  private expectLiteral(literal: string): void {
    if (this.text.startsWith(literal, this.position)) {
      this.position += literal.length;
    } else {
      this.fail("Expecting value");
    }
  }

  private parseObject(): JsonNode {
    this.position += 1; // consume "{"
    const entries: Array<[string, JsonNode]> = [];
    const seen = new Set<string>();
    this.skipWhitespace();
    if (this.text[this.position] === "}") {
      this.position += 1;
      return { kind: "object", entries };
    }
    for (;;) {
      this.skipWhitespace();
      if (this.text[this.position] !== '"') {
        this.fail("Expecting property name enclosed in double quotes");
      }
      const key = this.parseString();
      if (seen.has(key)) {
        throw new DuplicateKeyError(key);
      }
      seen.add(key);
      this.skipWhitespace();
      if (this.text[this.position] !== ":") {
        this.fail("Expecting ':' delimiter");
      }
      this.position += 1;
      this.skipWhitespace();
      entries.push([key, this.parseValue()]);
      this.skipWhitespace();
      const next = this.text[this.position];
      if (next === ",") {
        this.position += 1;
        continue;
      }
      if (next === "}") {
        this.position += 1;
        return { kind: "object", entries };
      }
      this.fail("Expecting ',' delimiter");
    }
  }

  private parseArray(): JsonNode {
    this.position += 1; // consume "["
    const items: JsonNode[] = [];
    this.skipWhitespace();
    if (this.text[this.position] === "]") {
      this.position += 1;
      return { kind: "array", items };
    }
    for (;;) {
      this.skipWhitespace();
      items.push(this.parseValue());
      this.skipWhitespace();
      const next = this.text[this.position];
      if (next === ",") {
        this.position += 1;
        continue;
      }
      if (next === "]") {
        this.position += 1;
        return { kind: "array", items };
      }
      this.fail("Expecting ',' delimiter");
    }
  }

  private parseString(): string {
    this.position += 1; // consume opening quote
    let result = "";
    for (;;) {
      if (this.position >= this.text.length) {
        this.fail("Unterminated string");
      }
      const ch = this.text[this.position] as string;
      const code = ch.charCodeAt(0);
      if (ch === '"') {
        this.position += 1;
        return result;
      }
      if (ch === "\\") {
        result += this.parseEscape();
        continue;
      }
      if (code < 0x20) {
        this.fail("Invalid control character");
      }
      result += ch;
      this.position += 1;
    }
  }

  private parseEscape(): string {
    this.position += 1; // consume backslash
    const ch = this.text[this.position];
    this.position += 1;
    switch (ch) {
      case '"':
        return '"';
      case "\\":
        return "\\";
      case "/":
        return "/";
      case "b":
        return "\b";
      case "f":
        return "\f";
      case "n":
        return "\n";
      case "r":
        return "\r";
      case "t":
        return "\t";
      case "u": {
        const hex = this.text.slice(this.position, this.position + 4);
        if (!/^[0-9a-fA-F]{4}$/.test(hex)) {
          this.fail("Invalid \\uXXXX escape");
        }
        this.position += 4;
        return String.fromCharCode(parseInt(hex, 16));
      }
      default:
        this.position -= 1;
        this.fail("Invalid \\escape");
    }
  }

  private parseNumber(): JsonNode {
    const start = this.position;
    const match = /^-?(?:0|[1-9]\d*)(\.\d+)?([eE][+-]?\d+)?/.exec(
      this.text.slice(this.position),
    );
    if (!match || match[0] === "" || match[0] === "-") {
      this.fail("Expecting value");
    }
    const lexeme = match[0];
    this.position = start + lexeme.length;
    if (match[1] === undefined && match[2] === undefined) {
      return { kind: "int", lexeme };
    }
    return { kind: "float", value: Number(lexeme) };
  }
}

/** Parse UTF-8 JSON text or bytes (BOM tolerated, duplicate keys rejected). */
export function parseJson(data: Uint8Array | string): JsonNode {
  return new Parser(decodeInput(data)).parse();
}

/**
 * Render a float the way the service does: shortest round-trip digits,
 * scientific notation outside [1e-4, 1e16), integral values keep a ".0".
 */
export function formatFloat(value: number): string {
  if (!Number.isFinite(value)) {
    throw new SerializationError("Out of range float values are not JSON compliant");
  }
  if (value === 0) {
    return Object.is(value, -0) ? "-0.0" : "0.0";
  }
  const sign = value < 0 ? "-" : "";
  const exponential = Math.abs(value).toExponential();
  const parsed = /^(\d)(?:\.(\d+))?e([+-]\d+)$/.exec(exponential);
  if (!parsed) {
    throw new SerializationError(`unexpected exponential form ${exponential}`);
  }
  const digits = (parsed[1] as string) + (parsed[2] ?? "");
  const exponent = Number(parsed[3]);

  if (exponent < -4 || exponent >= 16) {
    const mantissa =
      (parsed[1] as string) + (parsed[2] !== undefined ? `.${parsed[2]}` : "");
    const expSign = exponent < 0 ? "-" : "+";
    const expDigits = String(Math.abs(exponent)).padStart(2, "0");
    return `${sign}${mantissa}e${expSign}${expDigits}`;
  }
  if (exponent >= digits.length - 1) {
    return `${sign}${digits}${"0".repeat(exponent - (digits.length - 1))}.0`;
  }
  if (exponent >= 0) {
    return `${sign}${digits.slice(0, exponent + 1)}.${digits.slice(exponent + 1)}`;
  }
  return `${sign}0.${"0".repeat(-exponent - 1)}${digits}`;
}

const SHORT_ESCAPES: Record<number, string> = {
  0x08: "\\b",
  0x09: "\\t",
  0x0a: "\\n",
  0x0c: "\\f",
  0x0d: "\\r",
  0x22: '\\"',
  0x5c: "\\\\",
};

/** Quote a string: escape quote/backslash/control chars, pass the rest raw. */
export function quoteString(value: string): string {
  let result = '"';
  for (let index = 0; index < value.length; index += 1) {
    const code = value.charCodeAt(index);
    const short = SHORT_ESCAPES[code];
    if (short !== undefined) {
      result += short;
    } else if (code < 0x20) {
      result += `\\u${code.toString(16).padStart(4, "0")}`;
    } else if (code >= 0xd800 && code <= 0xdbff) {
      const low = index + 1 < value.length ? value.charCodeAt(index + 1) : 0;
      if (low < 0xdc00 || low > 0xdfff) {
        throw new SerializationError("unpaired high surrogate");
      }
      result += value[index] as string;
      result += value[index + 1] as string;
      index += 1;
    } else if (code >= 0xdc00 && code <= 0xdfff) {
      throw new SerializationError("unpaired low surrogate");
    } else {
      result += value[index] as string;
    }
  }
  return result + '"';
}

function serializeNode(node: JsonNode, indent: number | null, depth: number): string {
  switch (node.kind) {
    case "string":
      return quoteString(node.value);
    case "int":
      return node.lexeme === "-0" ? "0" : node.lexeme;
    case "float":
      return formatFloat(node.value);
    case "bool":
      return node.value ? "true" : "false";
    case "null":
      return "null";
    case "array": {
      if (node.items.length === 0) {
        return "[]";
      }
      if (indent === null) {
        return `[${node.items.map((item) => serializeNode(item, null, 0)).join(", ")}]`;
      }
      const pad = " ".repeat(indent * (depth + 1));
      const close = " ".repeat(indent * depth);
      const items = node.items
        .map((item) => pad + serializeNode(item, indent, depth + 1))
        .join(",\n");
      return `[\n${items}\n${close}]`;
    }
    case "object": {
      if (node.entries.length === 0) {
        return "{}";
      }
      if (indent === null) {
        const parts = node.entries.map(
          ([key, value]) => `${quoteString(key)}: ${serializeNode(value, null, 0)}`,
        );
        return `{${parts.join(", ")}}`;
      }
      const pad = " ".repeat(indent * (depth + 1));
      const close = " ".repeat(indent * depth);
      const parts = node.entries.map(
        ([key, value]) =>
          `${pad}${quoteString(key)}: ${serializeNode(value, indent, depth + 1)}`,
      );
      return `{\n${parts.join(",\n")}\n${close}}`;
    }
  }
}

/** Serialize with two-space indentation (the canonical layout). */
export function serializeIndented(node: JsonNode): string {
  return serializeNode(node, 2, 0);
}

/** Serialize on one line (wire bodies). */
export function serializeCompact(node: JsonNode): string {
  return serializeNode(node, null, 0);
}

/** Convert a node tree to ordinary JavaScript values (report handling). */
export function toPlain(node: JsonNode): unknown {
  switch (node.kind) {
    case "string":
      return node.value;
    case "int":
      return Number(node.lexeme);
    case "float":
      return node.value;
    case "bool":
      return node.value;
    case "null":
      return null;
    case "array":
      return node.items.map(toPlain);
    case "object": {
      const result: Record<string, unknown> = {};
      for (const [key, value] of node.entries) {
        result[key] = toPlain(value);
      }
      return result;
    }
  }
}

/** Wrap a JavaScript string as a string node. */
export function stringNode(value: string): JsonNode {
  return { kind: "string", value };
}

/** Wrap strings as an array node. */
export function stringArrayNode(values: string[]): JsonNode {
  return { kind: "array", items: values.map(stringNode) };
}
