/**
 * Thin client for the validation service wire API:
 * POST /v1/validate, POST /v1/coverage, GET /v1/vocabulary, GET /v1/health.
 *
 * Request bodies are serialized from the editor's node tree (not via
 * JSON.stringify) so numeric lexemes and key order reach the service
 * exactly as imported.
 */

import { VocabEntry } from "./canonical.js";
import { JsonNode, serializeCompact, stringNode } from "./json.js";

export type Mode = "lenient" | "strict";

export interface Diagnostic {
  severity: "error" | "warning" | "info";
  code: string;
  path: string;
  message: string;
  suggestion?: string;
}

export interface ValidationReport {
  conformant: boolean;
  mode: Mode;
  registryVersion: string;
  counts: { errors: number; warnings: number; infos: number };
  diagnostics: Diagnostic[];
}

export interface UseCaseCoverage {
  useCase: string;
  status: "scored" | "not-mappable";
  present: string[];
  missing: string[];
  ratio: number;
}

export interface CoverageReport {
  registryVersion: string;
  documentedTotal: number;
  useCases: UseCaseCoverage[];
}

export interface HealthStatus {
  status: string;
  version: string;
}

/** A non-2xx reply from the service (body included for error panels). */
export class ServiceError extends Error {
  readonly status: number;
  readonly body: string;

  constructor(status: number, body: string) {
    super(`service returned ${status}: ${body}`);
    this.name = "ServiceError";
    this.status = status;
    this.body = body;
  }
}

function envelope(document: JsonNode, mode: Mode): string {
  return serializeCompact({
    kind: "object",
    entries: [
      ["document", document],
      ["mode", stringNode(mode)],
    ],
  });
}

async function postJson(url: string, body: string): Promise<string> {
  const response = await fetch(url, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body,
  });
  const text = await response.text();
  if (!response.ok) {
    throw new ServiceError(response.status, text);
  }
  return text;
}

async function getJson(url: string): Promise<string> {
  const response = await fetch(url);
  const text = await response.text();
  if (!response.ok) {
    throw new ServiceError(response.status, text);
  }
  return text;
}

export class ApiClient {
  readonly baseUrl: string;

  /** @param baseUrl service origin, e.g. "http://127.0.0.1:8321" */
  constructor(baseUrl: string) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
  }

  async health(): Promise<HealthStatus> {
    return JSON.parse(await getJson(`${this.baseUrl}/v1/health`)) as HealthStatus;
  }

  async vocabulary(): Promise<VocabEntry[]> {
    return JSON.parse(await getJson(`${this.baseUrl}/v1/vocabulary`)) as VocabEntry[];
  }

  async validate(document: JsonNode, mode: Mode): Promise<ValidationReport> {
    const text = await postJson(`${this.baseUrl}/v1/validate`, envelope(document, mode));
    return JSON.parse(text) as ValidationReport;
  }

  async coverage(document: JsonNode): Promise<CoverageReport> {
    const text = await postJson(`${this.baseUrl}/v1/coverage`, envelope(document, "lenient"));
    return JSON.parse(text) as CoverageReport;
  }
}
