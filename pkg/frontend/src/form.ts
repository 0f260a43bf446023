/**
 * Schema-driven form model: one tab per use case, one field per
 * vocabulary property.  Built entirely from GET /v1/vocabulary, so
 * extension-loaded registries surface extra fields with no code changes.
 */

import { Cardinality, VocabEntry, compareCodePoints } from "./canonical.js";

/** Tab order; extension-declared use cases append after these. */
export const USE_CASE_ORDER: readonly string[] = [
  "data-life-cycle",
  "data-labeling",
  "participatory-data",
  "ai-safety-fairness",
  "regulatory-compliance",
];

export interface FormField {
  name: string;
  useCase: string;
  cardinality: Cardinality;
  expectedType: string;
  /** "date" for DateTime properties, "text" otherwise. */
  inputKind: "text" | "date";
  /** MANY-cardinality fields render as repeatable input lists. */
  repeatable: boolean;
  /** Recommended values offered as choices (free entry stays allowed). */
  choices: string[] | null;
  description: string;
}

export interface FormTab {
  useCase: string;
  fields: FormField[];
  /** True when the use case has no mapped properties (notice instead of inputs). */
  noMappedProperties: boolean;
}

function toField(entry: VocabEntry): FormField {
  return {
    name: entry.name,
    useCase: entry.useCase,
    cardinality: entry.cardinality,
    expectedType: entry.expectedType,
    inputKind: entry.expectedType === "DateTime" ? "date" : "text",
    repeatable: entry.cardinality === "MANY",
    choices: entry.recommendedValues !== undefined ? [...entry.recommendedValues] : null,
    description: entry.description,
  };
}

/** Group vocabulary entries into ordered tabs with name-sorted fields. */
export function buildFormModel(entries: VocabEntry[]): FormTab[] {
  const byUseCase = new Map<string, FormField[]>();
  for (const useCase of USE_CASE_ORDER) {
    byUseCase.set(useCase, []);
  }
  for (const entry of entries) {
    const fields = byUseCase.get(entry.useCase);
    if (fields !== undefined) {
      fields.push(toField(entry));
    } else {
      byUseCase.set(entry.useCase, [toField(entry)]);
    }
  }
  const tabs: FormTab[] = [];
  const extras = [...byUseCase.keys()]
    .filter((useCase) => !USE_CASE_ORDER.includes(useCase))
    .sort(compareCodePoints);
  for (const useCase of [...USE_CASE_ORDER, ...extras]) {
    const fields = byUseCase.get(useCase) as FormField[];
    fields.sort((a, b) => compareCodePoints(a.name, b.name));
    tabs.push({
      useCase,
      fields,
      noMappedProperties: fields.length === 0,
    });
  }
  return tabs;
}

/** Look up one field across tabs; undefined when not in the form model. */
export function findField(tabs: FormTab[], name: string): FormField | undefined {
  for (const tab of tabs) {
    const field = tab.fields.find((candidate) => candidate.name === name);
    if (field !== undefined) {
      return field;
    }
  }
  return undefined;
}
