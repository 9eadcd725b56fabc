/** Analysis configuration form model.
 *
 * The form mirrors the service's analysis config. An empty speaker
 * selection is unsubmittable; `toConfig` is only callable on a valid form.
 */

import type { AnalysisConfigBody, TagsetCatalog } from "./types.js";

export interface AnalysisForm {
  speakers: ReadonlySet<string>;
  form: string;
  tagset: string;
  exclude: ReadonlySet<string>;
}

export const EXCLUSION_CLASSES = [
  "punctuation",
  "placeholders",
  "separator_records",
  "interjections",
] as const;

export function defaultForm(catalog: TagsetCatalog): AnalysisForm {
  return {
    speakers: new Set(catalog.speakers),
    form: "normalized",
    tagset: "upos",
    exclude: new Set(["punctuation", "placeholders", "separator_records"]),
  };
}

export function toggleSpeaker(form: AnalysisForm, speaker: string): AnalysisForm {
  const speakers = new Set(form.speakers);
  if (speakers.has(speaker)) speakers.delete(speaker);
  else speakers.add(speaker);
  return { ...form, speakers };
}

export function toggleExclusion(form: AnalysisForm, cls: string): AnalysisForm {
  const exclude = new Set(form.exclude);
  if (exclude.has(cls)) exclude.delete(cls);
  else exclude.add(cls);
  return { ...form, exclude };
}

export function setForm(form: AnalysisForm, value: string): AnalysisForm {
  return { ...form, form: value };
}

export function setTagset(form: AnalysisForm, value: string): AnalysisForm {
  return { ...form, tagset: value };
}

/** The submit button is enabled exactly when this returns true. */
export function canSubmit(form: AnalysisForm): boolean {
  return form.speakers.size > 0;
}

export function toConfig(form: AnalysisForm): AnalysisConfigBody {
  if (!canSubmit(form)) {
    throw new Error("analysis form is incomplete: select at least one speaker");
  }
  return {
    speakers: [...form.speakers].sort(),
    form: form.form,
    tagset: form.tagset,
    exclude: [...form.exclude].sort(),
  };
}
