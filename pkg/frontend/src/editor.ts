/** Editor state: a loaded transcript revision plus pending local edits.
 *
 * All transitions are pure functions returning a new state, so every
 * behaviour is unit-testable without a DOM. Invariants:
 *
 * - edits apply only to the revision that was loaded; once a save comes
 *   back 409 the state enters a reload dialog and refuses further edits
 *   and saves until the current revision is reloaded (no silent overwrite);
 * - the undo stack restores prior field values exactly;
 * - tag-bearing fields only accept values from the tag-set catalog.
 */

import type {
  TagsetCatalog,
  TokenView,
  TranscriptMeta,
  TranscriptView,
  UtteranceView,
} from "./types.js";
import { isLegalFieldValue, isLegalMorphValue, type EditableField } from "./tagOptions.js";

export class IllegalEditError extends Error {}
export class StaleEditorError extends Error {}

export interface TokenAddress {
  sendId: number;
  wordId: number;
}

export type Edit =
  | { kind: "field"; at: TokenAddress; field: EditableField; value: string | boolean | null }
  | { kind: "morph-set"; at: TokenAddress; key: string; value: string }
  | { kind: "morph-remove"; at: TokenAddress; key: string };

interface UndoEntry {
  at: TokenAddress;
  previous: TokenView;
}

export interface ConflictDialog {
  kind: "reload-required";
  currentRevision: number;
  message: string;
}

export interface EditorState {
  transcriptId: string;
  projectId: string;
  recordingId: string;
  variant: string;
  revision: number;
  utterances: UtteranceView[];
  dirty: boolean;
  saving: boolean;
  dialog: ConflictDialog | null;
  playbackSeconds: number;
  selection: { from: TokenAddress; to: TokenAddress } | null;
  undoStack: UndoEntry[];
}

function cloneToken(token: TokenView): TokenView {
  return { ...token, morph: { ...token.morph } };
}

function cloneUtterances(utterances: UtteranceView[]): UtteranceView[] {
  return utterances.map((u) => ({ ...u, tokens: u.tokens.map(cloneToken) }));
}

export function loadEditor(
  projectId: string,
  view: TranscriptView,
): EditorState {
  return {
    transcriptId: view.transcript_id,
    projectId,
    recordingId: view.recording_id,
    variant: view.variant,
    revision: view.revision,
    utterances: cloneUtterances(view.utterances),
    dirty: false,
    saving: false,
    dialog: null,
    playbackSeconds: 0,
    selection: null,
    undoStack: [],
  };
}

function findToken(
  utterances: UtteranceView[],
  at: TokenAddress,
): { utterance: UtteranceView; index: number } {
  const utterance = utterances.find((u) => u.send_id === at.sendId);
  if (!utterance) {
    throw new IllegalEditError(`no utterance with send_id ${at.sendId}`);
  }
  const index = utterance.tokens.findIndex((t) => t.word_id === at.wordId);
  if (index < 0) {
    throw new IllegalEditError(
      `no token ${at.wordId} in utterance ${at.sendId}`,
    );
  }
  return { utterance, index };
}

export function tokenAt(state: EditorState, at: TokenAddress): TokenView {
  const { utterance, index } = findToken(state.utterances, at);
  const token = utterance.tokens[index];
  if (!token) throw new IllegalEditError("token index out of range");
  return token;
}

function guardEditable(state: EditorState): void {
  if (state.dialog) {
    throw new StaleEditorError(
      "the loaded revision is stale; reload before editing",
    );
  }
  if (state.saving) {
    throw new StaleEditorError("a save is in flight");
  }
}

/** Apply one edit, validating tag values against the catalog. */
export function applyEdit(
  state: EditorState,
  catalog: TagsetCatalog,
  edit: Edit,
): EditorState {
  guardEditable(state);
  const utterances = cloneUtterances(state.utterances);
  const { utterance, index } = findToken(utterances, edit.at);
  const before = utterance.tokens[index];
  if (!before) throw new IllegalEditError("token index out of range");
  const previous = cloneToken(before);
  const next = cloneToken(before);

  switch (edit.kind) {
    case "field": {
      if (!isLegalFieldValue(catalog, edit.field, edit.value)) {
        throw new IllegalEditError(
          `value ${JSON.stringify(edit.value)} is not legal for ${edit.field}`,
        );
      }
      switch (edit.field) {
        case "upos":
        case "stts":
          next[edit.field] = edit.value as string | null;
          break;
        case "contracted":
          next.contracted = edit.value as boolean;
          break;
        default:
          next[edit.field] = edit.value as string;
      }
      break;
    }
    case "morph-set": {
      if (!isLegalMorphValue(catalog, edit.key, edit.value)) {
        throw new IllegalEditError(
          `${edit.key}=${edit.value} is not a legal morphology entry`,
        );
      }
      next.morph[edit.key] = edit.value;
      break;
    }
    case "morph-remove": {
      delete next.morph[edit.key];
      break;
    }
  }

  utterance.tokens[index] = next;
  return {
    ...state,
    utterances,
    dirty: true,
    undoStack: [...state.undoStack, { at: edit.at, previous }],
  };
}

/** Pop the undo stack, restoring the prior token field-for-field. */
export function undoEdit(state: EditorState): EditorState {
  guardEditable(state);
  const entry = state.undoStack[state.undoStack.length - 1];
  if (!entry) return state;
  const utterances = cloneUtterances(state.utterances);
  const { utterance, index } = findToken(utterances, entry.at);
  utterance.tokens[index] = cloneToken(entry.previous);
  const undoStack = state.undoStack.slice(0, -1);
  return {
    ...state,
    utterances,
    undoStack,
    dirty: undoStack.length > 0,
  };
}

/** The PUT payload for the revision this editor loaded. */
export function savePayload(state: EditorState): {
  base_revision: number;
  utterances: UtteranceView[];
} {
  guardEditable(state);
  return {
    base_revision: state.revision,
    utterances: cloneUtterances(state.utterances),
  };
}

export function beginSave(state: EditorState): EditorState {
  guardEditable(state);
  return { ...state, saving: true };
}

export function saveSucceeded(state: EditorState, meta: TranscriptMeta): EditorState {
  return {
    ...state,
    saving: false,
    dirty: false,
    revision: meta.revision,
    undoStack: [],
  };
}

/** A 409 response: surface the reload dialog; local edits are preserved
 * for display but can no longer be saved over the newer revision. */
export function saveConflicted(
  state: EditorState,
  currentRevision: number,
  message: string,
): EditorState {
  return {
    ...state,
    saving: false,
    dialog: { kind: "reload-required", currentRevision, message },
  };
}

/** Leaving the conflict dialog requires loading the current revision. */
export function reloadFromServer(
  state: EditorState,
  view: TranscriptView,
): EditorState {
  return loadEditor(state.projectId, view);
}

export function setPlayback(state: EditorState, seconds: number): EditorState {
  return { ...state, playbackSeconds: Math.max(0, seconds) };
}

export function setSelection(
  state: EditorState,
  from: TokenAddress,
  to: TokenAddress,
): EditorState {
  return { ...state, selection: { from, to } };
}

/** Utterances grouped for rendering: separators delimit blocks. */
export function renderOrder(
  state: EditorState,
): Array<{ sendId: number; speaker: string | null; separator: boolean }> {
  return state.utterances.map((u) => ({
    sendId: u.send_id,
    speaker: u.speaker,
    separator: u.separator,
  }));
}
