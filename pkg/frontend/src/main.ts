/**
 * Browser entry point: wires the editor store to the DOM.
 *
 * Layout: a toolbar (import/export/new, mode toggle, status), use-case
 * tabs with per-tab coverage gauges, schema-driven fields with inline
 * diagnostics, and a document panel for head fields, out-of-schema
 * content, and document-level diagnostics.
 */

import { ApiClient, Diagnostic } from "./api.js";
import { Registry, buildRegistry, canonicalText, parseDocument } from "./canonical.js";
import { FormTab, buildFormModel } from "./form.js";
import { EditorStore, fieldOfPath } from "./state.js";

const SKELETON = `{
  "@context": {
    "@vocab": "https://schema.org/",
    "cr": "http://mlcommons.org/croissant/",
    "rai": "http://mlcommons.org/croissant/RAI/",
    "dct": "http://purl.org/dc/terms/"
  },
  "@type": "sc:Dataset",
  "name": "untitled-dataset",
  "dct:conformsTo": "http://mlcommons.org/croissant/RAI/1.0"
}
`;

function serviceBaseUrl(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("service");
  return fromQuery ?? "http://127.0.0.1:8990";
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className !== undefined) {
    node.className = className;
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

function severityBadge(diagnostic: Diagnostic): HTMLElement {
  const badge = el("span", `badge badge-${diagnostic.severity}`, diagnostic.severity);
  return badge;
}

function diagnosticRow(diagnostic: Diagnostic): HTMLElement {
  const row = el("div", `diagnostic diagnostic-${diagnostic.severity}`);
  row.appendChild(severityBadge(diagnostic));
  row.appendChild(el("span", "diag-code", diagnostic.code));
  const text =
    diagnostic.suggestion !== undefined
      ? `${diagnostic.message} — did you mean ${diagnostic.suggestion}?`
      : diagnostic.message;
  row.appendChild(el("span", "diag-message", text));
  return row;
}

class EditorApp {
  private readonly root: HTMLElement;
  private readonly store: EditorStore;
  private readonly tabs: FormTab[];
  private readonly registry: Registry;
  private readonly readOnly: boolean;
  private banner: string | null;

  constructor(
    root: HTMLElement,
    store: EditorStore,
    tabs: FormTab[],
    registry: Registry,
    options: { readOnly: boolean; banner: string | null },
  ) {
    this.root = root;
    this.store = store;
    this.tabs = tabs;
    this.registry = registry;
    this.readOnly = options.readOnly;
    this.banner = options.banner;
    store.subscribe(() => this.render());
  }

  render(): void {
    this.root.replaceChildren();
    if (this.banner !== null) {
      this.root.appendChild(el("div", "banner", this.banner));
    }
    this.root.appendChild(this.renderToolbar());
    if (this.store.importError !== null) {
      const panel = el("div", "error-panel");
      panel.appendChild(el("strong", undefined, "Import failed: "));
      panel.appendChild(el("span", undefined, this.store.importError));
      this.root.appendChild(panel);
    }
    if (this.store.document === null) {
      this.root.appendChild(
        el("p", "placeholder", "Import a metadata document or start a new one."),
      );
      return;
    }
    this.root.appendChild(this.renderSummary());
    this.root.appendChild(this.renderTabBar());
    this.root.appendChild(this.renderActiveTab());
    this.root.appendChild(this.renderDocumentPanel());
  }

  private renderToolbar(): HTMLElement {
    const bar = el("div", "toolbar");

    const importInput = el("input") as HTMLInputElement;
    importInput.type = "file";
    importInput.accept = ".json,application/json";
    importInput.style.display = "none";
    importInput.addEventListener("change", () => {
      const file = importInput.files?.[0];
      if (file === undefined) {
        return;
      }
      void file.arrayBuffer().then((buffer) => {
        this.store.importDocument(new Uint8Array(buffer));
      });
      importInput.value = "";
    });
    bar.appendChild(importInput);

    const importButton = el("button", undefined, "Import…");
    importButton.addEventListener("click", () => importInput.click());
    bar.appendChild(importButton);

    const newButton = el("button", undefined, "New document");
    newButton.disabled = this.readOnly;
    newButton.addEventListener("click", () => {
      this.store.importDocument(SKELETON);
    });
    bar.appendChild(newButton);

    const exportButton = el("button", undefined, "Export");
    exportButton.disabled = this.store.document === null;
    exportButton.addEventListener("click", () => this.download());
    bar.appendChild(exportButton);

    const modeLabel = el("label", "mode-toggle");
    const modeBox = el("input") as HTMLInputElement;
    modeBox.type = "checkbox";
    modeBox.checked = this.store.mode === "strict";
    modeBox.addEventListener("change", () => {
      this.store.setMode(modeBox.checked ? "strict" : "lenient");
    });
    modeLabel.appendChild(modeBox);
    modeLabel.appendChild(document.createTextNode(" strict mode"));
    bar.appendChild(modeLabel);

    if (this.store.dirty) {
      bar.appendChild(el("span", "flag flag-dirty", "unsaved changes"));
    }
    if (this.store.reportsStale) {
      bar.appendChild(el("span", "flag flag-stale", "reports may be stale"));
    }
    return bar;
  }

  private renderSummary(): HTMLElement {
    const summary = el("div", "summary");
    const report = this.store.lastValidation;
    if (report === null) {
      summary.appendChild(el("span", "flag", "validating…"));
      return summary;
    }
    summary.appendChild(
      el(
        "span",
        report.conformant ? "verdict verdict-ok" : "verdict verdict-bad",
        report.conformant ? "conformant" : "not conformant",
      ),
    );
    summary.appendChild(
      el(
        "span",
        "counts",
        `${report.counts.errors} errors, ${report.counts.warnings} warnings, ` +
          `${report.counts.infos} infos (${report.mode})`,
      ),
    );
    return summary;
  }

  private renderTabBar(): HTMLElement {
    const bar = el("div", "tab-bar");
    for (const tab of this.tabs) {
      const button = el("button", "tab-button", tab.useCase);
      if (this.activeTab().useCase === tab.useCase) {
        button.classList.add("tab-active");
      }
      const coverage = this.store.coverageFor(tab.useCase);
      if (coverage !== null && coverage.status === "scored") {
        const total = coverage.present.length + coverage.missing.length;
        button.appendChild(
          el("span", "gauge", ` ${coverage.present.length}/${total}`),
        );
      }
      button.addEventListener("click", () => this.store.selectTab(tab.useCase));
      bar.appendChild(button);
    }
    return bar;
  }

  private activeTab(): FormTab {
    const selected = this.store.selectedTab;
    const found = this.tabs.find((tab) => tab.useCase === selected);
    return found ?? (this.tabs[0] as FormTab);
  }

  private renderActiveTab(): HTMLElement {
    const tab = this.activeTab();
    const panel = el("div", "tab-panel");
    if (tab.noMappedProperties) {
      panel.appendChild(
        el("p", "notice", `${tab.useCase}: no mapped properties in this vocabulary.`),
      );
      return panel;
    }
    const diagnostics = this.store.inlineDiagnostics();
    for (const field of tab.fields) {
      panel.appendChild(this.renderField(field.name, diagnostics.get(field.name) ?? []));
    }
    return panel;
  }

  private renderField(name: string, diagnostics: Diagnostic[]): HTMLElement {
    const entry = this.registry.get(name);
    const wrapper = el("div", "field");
    const label = el("label", "field-label", name);
    wrapper.appendChild(label);
    if (entry !== undefined) {
      wrapper.appendChild(el("p", "field-description", entry.description));
    }

    const values = this.store.fieldValues(name);
    const repeatable = entry?.cardinality === "MANY";
    const rows = values.length > 0 ? values : [""];
    const listId = `choices-${name.replace(/[^A-Za-z0-9]/g, "-")}`;

    const commit = (updated: string[]): void => {
      this.store.editField(name, updated.filter((item) => item !== ""));
    };

    rows.forEach((value, index) => {
      const row = el("div", "field-row");
      const input = el("input") as HTMLInputElement;
      input.type = entry?.expectedType === "DateTime" ? "date" : "text";
      input.value = value;
      input.disabled = this.readOnly;
      if (entry?.recommendedValues !== undefined) {
        input.setAttribute("list", listId);
      }
      input.addEventListener("change", () => {
        const updated = [...rows];
        updated[index] = input.value;
        commit(updated);
      });
      row.appendChild(input);
      if (repeatable && !this.readOnly) {
        const remove = el("button", "row-button", "−");
        remove.addEventListener("click", () => {
          commit(rows.filter((_, i) => i !== index));
        });
        row.appendChild(remove);
      }
      wrapper.appendChild(row);
    });

    if (repeatable && !this.readOnly) {
      const add = el("button", "row-button", "+ add value");
      add.addEventListener("click", () => {
        this.store.editField(name, [...values, ""]);
      });
      wrapper.appendChild(add);
    }

    if (entry?.recommendedValues !== undefined) {
      const datalist = el("datalist") as HTMLDataListElement;
      datalist.id = listId;
      for (const choice of entry.recommendedValues) {
        const option = el("option") as HTMLOptionElement;
        option.value = choice;
        datalist.appendChild(option);
      }
      wrapper.appendChild(datalist);
    }

    for (const diagnostic of diagnostics) {
      wrapper.appendChild(diagnosticRow(diagnostic));
    }
    return wrapper;
  }

  private renderDocumentPanel(): HTMLElement {
    const doc = this.store.document;
    const panel = el("div", "document-panel");
    panel.appendChild(el("h2", undefined, "Document"));
    if (doc === null) {
      return panel;
    }
    const head = el("dl", "head-fields");
    const pair = (term: string, detail: string): void => {
      head.appendChild(el("dt", undefined, term));
      head.appendChild(el("dd", undefined, detail));
    };
    pair("name", doc.name ?? "(none)");
    pair("@type", doc.declaredType ?? "(none)");
    pair("conforms to", doc.conformsTo.length > 0 ? doc.conformsTo.join(", ") : "(none)");
    panel.appendChild(head);

    // Diagnostics whose path points outside the form model (for example a
    // missing conformance id, or an unknown rai: property from an import)
    // render here so every report entry stays visible exactly once.
    const formFields = new Set(this.tabs.flatMap((tab) => tab.fields.map((f) => f.name)));
    const leftovers: Array<[string, Diagnostic[]]> = [];
    for (const [field, diagnostics] of this.store.inlineDiagnostics()) {
      if (!formFields.has(field)) {
        leftovers.push([field, diagnostics]);
      }
    }
    if (leftovers.length > 0) {
      const section = el("div", "document-diagnostics");
      for (const [field, diagnostics] of leftovers) {
        section.appendChild(el("h3", undefined, field === "" ? "(document)" : field));
        for (const diagnostic of diagnostics) {
          section.appendChild(diagnosticRow(diagnostic));
        }
      }
      panel.appendChild(section);
    }

    const preview = el("details", "canonical-preview");
    preview.appendChild(el("summary", undefined, "Canonical form"));
    preview.appendChild(el("pre", undefined, canonicalText(doc, this.registry)));
    panel.appendChild(preview);
    return panel;
  }

  private download(): void {
    const bytes = this.store.exportDocument();
    const buffer = new ArrayBuffer(bytes.byteLength);
    new Uint8Array(buffer).set(bytes);
    const blob = new Blob([buffer], { type: "application/json" });
    const url = URL.createObjectURL(blob);
    const anchor = el("a") as HTMLAnchorElement;
    anchor.href = url;
    anchor.download = `${this.store.document?.name ?? "metadata"}.json`;
    anchor.click();
    URL.revokeObjectURL(url);
  }
}

async function boot(): Promise<void> {
  const root = document.getElementById("app");
  if (root === null) {
    return;
  }
  const api = new ApiClient(serviceBaseUrl());
  let registry: Registry;
  let tabs: FormTab[];
  let readOnly = false;
  let banner: string | null = null;
  try {
    await api.health();
    const entries = await api.vocabulary();
    registry = buildRegistry(entries);
    tabs = buildFormModel(entries);
  } catch {
    banner = `Validation service unreachable at ${api.baseUrl}; editor is read-only.`;
    readOnly = true;
    registry = buildRegistry([]);
    tabs = buildFormModel([]);
  }
  const store = new EditorStore(api, registry);
  const app = new EditorApp(root, store, tabs, registry, { readOnly, banner });
  app.render();

  // Self-check helper for manual testing from the console.
  (window as unknown as Record<string, unknown>)["croissantRaiEditor"] = {
    store,
    parseDocument,
  };
}

void boot();
