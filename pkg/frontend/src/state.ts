/**
 * Editor state: one working document per browser session, revalidated
 * against the service after every committed field change.
 *
 * Edits are debounced (default 300 ms) and every edit bumps a monotonic
 * counter; validation/coverage responses for superseded states are
 * discarded.  Transport failures set a stale-reports indicator but never
 * block editing.  The document is mutated only through editField and
 * importDocument; unknown content from imports survives every
 * edit/export cycle unchanged.
 */

import {
  CoverageReport,
  Diagnostic,
  Mode,
  UseCaseCoverage,
  ValidationReport,
} from "./api.js";
import { JsonNode } from "./json.js";
import {
  DocumentModel,
  Registry,
  canonicalize,
  displayValues,
  parseDocument,
  setProperty,
  toNode,
} from "./canonical.js";

export const DEFAULT_DEBOUNCE_MS = 300;

export type Listener = () => void;

/** The two wire calls revalidation needs (ApiClient satisfies this). */
export interface ValidationApi {
  validate(document: JsonNode, mode: Mode): Promise<ValidationReport>;
  coverage(document: JsonNode): Promise<CoverageReport>;
}

/** First segment of a diagnostic path: "/rai:x/3" -> "rai:x". */
export function fieldOfPath(path: string): string {
  const trimmed = path.startsWith("/") ? path.slice(1) : path;
  const slash = trimmed.indexOf("/");
  return slash === -1 ? trimmed : trimmed.slice(0, slash);
}

export interface EditorStoreOptions {
  debounceMs?: number;
  mode?: Mode;
}

export class EditorStore {
  readonly registry: Registry;
  readonly debounceMs: number;

  document: DocumentModel | null = null;
  dirty = false;
  lastValidation: ValidationReport | null = null;
  lastCoverage: CoverageReport | null = null;
  /** True when the last revalidation attempt failed in transport. */
  reportsStale = false;
  selectedTab: string | null = null;
  importError: string | null = null;
  mode: Mode;

  private readonly api: ValidationApi;
  private editCounter = 0;
  private debounceTimer: ReturnType<typeof setTimeout> | null = null;
  private readonly inFlight = new Set<Promise<void>>();
  private readonly listeners = new Set<Listener>();

  constructor(api: ValidationApi, registry: Registry, options: EditorStoreOptions = {}) {
    this.api = api;
    this.registry = registry;
    this.debounceMs = options.debounceMs ?? DEFAULT_DEBOUNCE_MS;
    this.mode = options.mode ?? "lenient";
  }

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) {
      listener();
    }
  }

  /**
   * Replace the working document with a parsed import.  On parse failure
   * the previous state is left untouched and `importError` carries the
   * message (with byte offset where available); returns false.
   */
  importDocument(data: Uint8Array | string): boolean {
    let parsed: DocumentModel;
    try {
      parsed = parseDocument(data);
    } catch (error) {
      this.importError = error instanceof Error ? error.message : String(error);
      this.notify();
      return false;
    }
    this.document = parsed;
    this.dirty = false;
    this.importError = null;
    this.lastValidation = null;
    this.lastCoverage = null;
    this.reportsStale = false;
    this.editCounter += 1;
    this.cancelDebounce();
    this.beginRevalidation();
    this.notify();
    return true;
  }

  /** Canonical UTF-8 bytes of the working document. */
  exportDocument(): Uint8Array {
    if (this.document === null) {
      throw new Error("no document loaded");
    }
    return canonicalize(this.document, this.registry);
  }

  /**
   * Commit new values for a form-model property (empty list clears it),
   * then revalidate after the debounce interval.
   */
  editField(property: string, values: string[]): void {
    if (this.document === null) {
      throw new Error("no document loaded");
    }
    if (!this.registry.has(property)) {
      throw new Error(`property ${property} is not in the form model`);
    }
    setProperty(this.document, property, values);
    this.dirty = true;
    this.editCounter += 1;
    this.scheduleRevalidation();
    this.notify();
  }

  /** Switch lenient/strict and refresh the reports immediately. */
  setMode(mode: Mode): void {
    if (mode === this.mode) {
      return;
    }
    this.mode = mode;
    if (this.document !== null) {
      this.editCounter += 1;
      this.cancelDebounce();
      this.beginRevalidation();
    }
    this.notify();
  }

  selectTab(useCase: string): void {
    this.selectedTab = useCase;
    this.notify();
  }

  /** Current values of a property as strings, for form pre-fill. */
  fieldValues(property: string): string[] {
    if (this.document === null) {
      return [];
    }
    return displayValues(this.document, property);
  }

  /**
   * Diagnostics grouped by the field they point at (first path segment).
   * Every diagnostic of the last report appears exactly once; nothing is
   * synthesized client-side.
   */
  inlineDiagnostics(): Map<string, Diagnostic[]> {
    const grouped = new Map<string, Diagnostic[]>();
    if (this.lastValidation === null) {
      return grouped;
    }
    for (const diagnostic of this.lastValidation.diagnostics) {
      const field = fieldOfPath(diagnostic.path);
      const bucket = grouped.get(field);
      if (bucket !== undefined) {
        bucket.push(diagnostic);
      } else {
        grouped.set(field, [diagnostic]);
      }
    }
    return grouped;
  }

  /** Coverage row for one use case, or null before the first report. */
  coverageFor(useCase: string): UseCaseCoverage | null {
    if (this.lastCoverage === null) {
      return null;
    }
    return this.lastCoverage.useCases.find((row) => row.useCase === useCase) ?? null;
  }

  /** Flush any pending debounce and wait for in-flight requests. */
  async settle(): Promise<void> {
    if (this.debounceTimer !== null) {
      this.cancelDebounce();
      this.beginRevalidation();
    }
    while (this.inFlight.size > 0) {
      await Promise.all([...this.inFlight]);
    }
  }

  private cancelDebounce(): void {
    if (this.debounceTimer !== null) {
      clearTimeout(this.debounceTimer);
      this.debounceTimer = null;
    }
  }

  private scheduleRevalidation(): void {
    this.cancelDebounce();
    this.debounceTimer = setTimeout(() => {
      this.debounceTimer = null;
      this.beginRevalidation();
    }, this.debounceMs);
  }

  private beginRevalidation(): void {
    const doc = this.document;
    if (doc === null) {
      return;
    }
    const ticket = this.editCounter;
    const node = toNode(doc, this.registry);
    const work = (async () => {
      let validation: ValidationReport | null = null;
      let coverage: CoverageReport | null = null;
      let failed = false;
      try {
        [validation, coverage] = await Promise.all([
          this.api.validate(node, this.mode),
          this.api.coverage(node),
        ]);
      } catch {
        failed = true;
      }
      if (ticket !== this.editCounter) {
        return; // superseded by a newer edit; discard
      }
      if (failed) {
        this.reportsStale = true;
      } else {
        this.lastValidation = validation;
        this.lastCoverage = coverage;
        this.reportsStale = false;
      }
      this.notify();
    })();
    const tracked: Promise<void> = work.finally(() => {
      this.inFlight.delete(tracked);
    });
    this.inFlight.add(tracked);
  }
}
