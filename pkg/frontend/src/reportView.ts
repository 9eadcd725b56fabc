/** Projections of a service report body into display rows.
 *
 * The service is the single source of truth for every number: these
 * functions select and order fields but never compute a metric. Ratios
 * arrive preformatted as strings and are displayed verbatim.
 */

import { isErrorSection } from "./types.js";
import type { ReportBody, SvaRecordView, VerbEntryView } from "./types.js";

export interface MluRow {
  speaker: string;
  /** Preformatted by the service, e.g. "9.000"; shown verbatim. */
  mlu: string | null;
  tokens: number | null;
  utterances: number | null;
  error: string | null;
}

export function mluRows(body: ReportBody): MluRow[] {
  return Object.entries(body.mlu.per_speaker).map(([speaker, section]) => {
    if (isErrorSection(section)) {
      return { speaker, mlu: null, tokens: null, utterances: null, error: section.error };
    }
    return {
      speaker,
      mlu: section.mlu,
      tokens: section.tokens,
      utterances: section.utterances,
      error: null,
    };
  });
}

export function displayedMlu(body: ReportBody, speaker: string): string | null {
  const row = mluRows(body).find((r) => r.speaker === speaker);
  return row ? row.mlu : null;
}

export interface PosRow {
  tag: string;
  count: number;
  /** Preformatted frequency string, shown verbatim. */
  frequency: string;
}

export function posRows(body: ReportBody, speaker: string): PosRow[] {
  const section = body.pos_distribution.per_speaker[speaker];
  if (!section || isErrorSection(section)) return [];
  return Object.keys(section.counts)
    .sort()
    .map((tag) => ({
      tag,
      count: section.counts[tag] ?? 0,
      frequency: section.frequencies[tag] ?? "",
    }));
}

export interface SvaRow {
  label: string;
  verdict: "agree" | "disagree" | "unchecked";
  flag: string | null;
  record: SvaRecordView;
}

export function svaRows(body: ReportBody): SvaRow[] {
  return body.sva.map((record) => {
    const subject = record.subject.length ? record.subject.join(" ") : "-";
    const verbs = record.verbs.length ? record.verbs.join(" ") : "-";
    const verdict = !record.checkable
      ? "unchecked"
      : record.match
        ? "agree"
        : "disagree";
    return {
      label: `[${record.send_id}] ${record.speaker ?? "?"}: ${subject} / ${verbs}`,
      verdict,
      flag: record.flag,
      record,
    };
  });
}

export interface VerbRow {
  position: string;
  speaker: string;
  form: string;
  lemma: string;
  tag: string;
  morph: string;
  entry: VerbEntryView;
}

export function verbRows(body: ReportBody): VerbRow[] {
  return body.verb_overview.map((entry) => ({
    position: `${entry.send_id}:${entry.word_id}`,
    speaker: entry.speaker ?? "?",
    form: entry.normalized || entry.surface,
    lemma: entry.lemma,
    tag: entry.stts ?? "",
    morph: Object.entries(entry.morph)
      .map(([k, v]) => `${k}=${v}`)
      .join(", "),
    entry,
  }));
}

export function lexicalSummary(
  body: ReportBody,
): { tokens: number; types: number; ttr: string } | { error: string } {
  return body.lexical_diversity;
}

export function headline(body: ReportBody): string {
  const cfg = body.config;
  return (
    `Recording ${body.recording_id} (${body.variant}) — ` +
    `speakers ${cfg.speakers.join(",")}, form ${cfg.form}, tagset ${cfg.tagset}`
  );
}
