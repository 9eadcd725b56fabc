/** Dropdown option lists derived from the service's tag-set catalog.
 *
 * Every tag-bearing control renders exactly one of these lists, so an
 * illegal tag is unrepresentable in the UI. The editor state applies the
 * same check on programmatic edits as a second line of defence.
 */

import type { TagsetCatalog, TokenView } from "./types.js";

export const BLANK = "";

export interface SelectOption {
  value: string;
  label: string;
}

function withBlank(values: string[], blankLabel: string): SelectOption[] {
  return [
    { value: BLANK, label: blankLabel },
    ...values.map((v) => ({ value: v, label: v })),
  ];
}

/** Options for the coarse tag column; blank means "not yet tagged". */
export function uposOptions(catalog: TagsetCatalog): SelectOption[] {
  return withBlank(catalog.upos, "(untagged)");
}

/** Options for the fine tag column. */
export function sttsOptions(catalog: TagsetCatalog): SelectOption[] {
  return withBlank(catalog.stts, "(untagged)");
}

/** Options for the agreement-mark column; blank means "no mark". */
export function svaOptions(catalog: TagsetCatalog): SelectOption[] {
  return withBlank(catalog.sva, "(none)");
}

export function speakerOptions(catalog: TagsetCatalog): SelectOption[] {
  return catalog.speakers.map((v) => ({ value: v, label: v }));
}

export function morphKeys(catalog: TagsetCatalog): string[] {
  return Object.keys(catalog.morph).sort();
}

/** Legal values for one morphology key, with a blank meaning "remove". */
export function morphValueOptions(catalog: TagsetCatalog, key: string): SelectOption[] {
  const values = catalog.morph[key];
  if (!values) return [];
  return withBlank(values, "(unset)");
}

export type EditableField = keyof Pick<
  TokenView,
  "word" | "normalized" | "lemma" | "upos" | "stts" | "contracted" | "sva" | "dep"
>;

/** Whether `value` may be written into `field` under this catalog. */
export function isLegalFieldValue(
  catalog: TagsetCatalog,
  field: EditableField,
  value: unknown,
): boolean {
  switch (field) {
    case "upos":
      return value === null || (typeof value === "string" && catalog.upos.includes(value));
    case "stts":
      return value === null || (typeof value === "string" && catalog.stts.includes(value));
    case "sva":
      return typeof value === "string" && (value === BLANK || catalog.sva.includes(value));
    case "contracted":
      return typeof value === "boolean";
    case "word":
      return typeof value === "string" && value.length > 0;
    case "normalized":
    case "lemma":
    case "dep":
      return typeof value === "string";
  }
}

/** Whether `value` may be stored under morphology key `key`. */
export function isLegalMorphValue(
  catalog: TagsetCatalog,
  key: string,
  value: string,
): boolean {
  const values = catalog.morph[key];
  return values !== undefined && values.includes(value);
}
