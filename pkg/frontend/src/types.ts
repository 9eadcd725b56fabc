/** Wire types for the local workbench service. */

export interface TokenView {
  word_id: number;
  word: string;
  normalized: string;
  lemma: string;
  upos: string | null;
  stts: string | null;
  contracted: boolean;
  morph: Record<string, string>;
  sva: string;
  dep: string;
}

export interface UtteranceView {
  send_id: number;
  speaker: string | null;
  separator: boolean;
  tokens: TokenView[];
}

export interface TranscriptView {
  transcript_id: string;
  recording_id: string;
  variant: string;
  revision: number;
  draft: boolean;
  edited_by: string;
  utterances: UtteranceView[];
  tsv: string;
}

export interface TranscriptMeta {
  transcript_id: string;
  recording_id: string;
  variant: string;
  revision: number;
  draft: boolean;
  edited_by: string;
}

/** Legal-value catalog served by GET /tagsets; the only source of dropdown options. */
export interface TagsetCatalog {
  upos: string[];
  stts: string[];
  sva: string[];
  speakers: string[];
  forms: string[];
  morph: Record<string, string[]>;
}

export interface AnalysisConfigBody {
  speakers: string[];
  form: string;
  tagset: string;
  exclude: string[];
}

export interface MluSpeakerSection {
  mlu: string;
  tokens: number;
  utterances: number;
}

export interface PosSpeakerSection {
  counts: Record<string, number>;
  frequencies: Record<string, string>;
  total_tagged: number;
  untagged: number;
}

export interface SvaRecordView {
  send_id: number;
  speaker: string | null;
  subject: string[];
  subject_ids: number[];
  verbs: string[];
  verb_ids: number[];
  contracted: boolean;
  checkable: boolean;
  match: boolean | null;
  flag: string | null;
}

export interface VerbEntryView {
  send_id: number;
  word_id: number;
  speaker: string | null;
  surface: string;
  normalized: string;
  lemma: string;
  stts: string | null;
  morph: Record<string, string>;
}

/** Per-speaker sections may carry {"error": ...} instead of numbers. */
export type SpeakerSection<T> = T | { error: string };

export interface ReportBody {
  recording_id: string;
  variant: string;
  config: AnalysisConfigBody;
  mlu: { unit: string; per_speaker: Record<string, SpeakerSection<MluSpeakerSection>> };
  pos_distribution: {
    tagset: string;
    per_speaker: Record<string, SpeakerSection<PosSpeakerSection>>;
  };
  sva: SvaRecordView[];
  lexical_diversity: { tokens: number; types: number; ttr: string } | { error: string };
  verb_overview: VerbEntryView[];
}

export interface ReportRecord {
  report_id: string;
  transcript_id: string;
  revision: number;
  body: ReportBody;
}

export interface JobView {
  job_id: string;
  status: "queued" | "running" | "done" | "failed";
  report_id?: string;
  error?: string;
}

export interface LintFindingView {
  rule: string;
  severity: string;
  message: string;
  send_id: number | null;
  word_id: number | null;
}

export interface LintResult {
  errors: number;
  warnings: number;
  findings: LintFindingView[];
}

export function isErrorSection<T>(s: SpeakerSection<T>): s is { error: string } {
  return typeof s === "object" && s !== null && "error" in s;
}
