import { describe, expect, it } from "vitest";

import { WorkbenchClient } from "../src/api.js";
import {
  applyEdit,
  beginSave,
  loadEditor,
  reloadFromServer,
  renderOrder,
  saveConflicted,
  savePayload,
  saveSucceeded,
  tokenAt,
  undoEdit,
  IllegalEditError,
  StaleEditorError,
  type EditorState,
} from "../src/editor.js";
import type { TagsetCatalog, TranscriptView } from "../src/types.js";
import { FakeWorkbenchService } from "./fakeService.js";
import { loadFixture } from "./helpers.js";

const catalog = loadFixture<TagsetCatalog>("tagsets.json");
const fixtureView = loadFixture<TranscriptView>("transcript_view.json");

/** The fixture's "abeR" token; its normalized cell holds the correction. */
const ABER = { sendId: 63, wordId: 2 };

/** The fixture as it looks before the clinician fixes the "abeR" typo. */
function uncorrectedView(): TranscriptView {
  const view = JSON.parse(JSON.stringify(fixtureView)) as TranscriptView;
  const token = view.utterances
    .find((u) => u.send_id === ABER.sendId)!
    .tokens.find((t) => t.word_id === ABER.wordId)!;
  token.normalized = "";
  return view;
}

function freshService(view: TranscriptView = fixtureView): FakeWorkbenchService {
  const service = new FakeWorkbenchService(catalog);
  service.seedTranscript("p1", view);
  return service;
}

function client(service: FakeWorkbenchService): WorkbenchClient {
  return new WorkbenchClient("http://127.0.0.1:8077", service.fetch);
}

describe("loading", () => {
  it("renders the fixture utterances in document order", () => {
    const state = loadEditor("p1", fixtureView);
    const order = renderOrder(state);
    expect(order.map((o) => o.sendId)).toEqual([62, 63]);
    expect(order.map((o) => o.speaker)).toEqual(["FP", "K"]);
    expect(state.revision).toBe(1);
    expect(state.dirty).toBe(false);
  });

  it("an empty transcript loads as an empty editor", () => {
    const empty: TranscriptView = { ...fixtureView, utterances: [], tsv: "" };
    const state = loadEditor("p1", empty);
    expect(renderOrder(state)).toEqual([]);
    expect(state.dirty).toBe(false);
  });
});

describe("editing", () => {
  const at = ABER;

  it("normalized correction for the abeR token marks the state dirty", () => {
    let state = loadEditor("p1", uncorrectedView());
    expect(tokenAt(state, at).word).toBe("abeR");
    expect(tokenAt(state, at).normalized).toBe("");
    state = applyEdit(state, catalog, {
      kind: "field",
      at,
      field: "normalized",
      value: "aber",
    });
    expect(tokenAt(state, at).normalized).toBe("aber");
    expect(state.dirty).toBe(true);
  });

  it("rejects a tag value outside the catalog", () => {
    const state = loadEditor("p1", fixtureView);
    expect(() =>
      applyEdit(state, catalog, { kind: "field", at, field: "upos", value: "GLORP" }),
    ).toThrow(IllegalEditError);
    expect(() =>
      applyEdit(state, catalog, { kind: "field", at, field: "stts", value: "PAV" }),
    ).toThrow(IllegalEditError);
    expect(() =>
      applyEdit(state, catalog, { kind: "morph-set", at, key: "Case", value: "Ablative" }),
    ).toThrow(IllegalEditError);
  });

  it("accepts legal tag and morphology values", () => {
    let state = loadEditor("p1", fixtureView);
    state = applyEdit(state, catalog, { kind: "field", at, field: "upos", value: "ADV" });
    state = applyEdit(state, catalog, { kind: "morph-set", at, key: "Case", value: "Nom" });
    expect(tokenAt(state, at).upos).toBe("ADV");
    expect(tokenAt(state, at).morph["Case"]).toBe("Nom");
  });

  it("undo restores the prior field values exactly", () => {
    const initial = loadEditor("p1", uncorrectedView());
    const before = tokenAt(initial, at);
    let state = applyEdit(initial, catalog, {
      kind: "field",
      at,
      field: "normalized",
      value: "aber",
    });
    state = applyEdit(state, catalog, { kind: "field", at, field: "lemma", value: "aber2" });
    state = undoEdit(state);
    expect(tokenAt(state, at).lemma).toBe(before.lemma);
    expect(tokenAt(state, at).normalized).toBe("aber");
    state = undoEdit(state);
    expect(tokenAt(state, at)).toEqual(before);
    expect(state.dirty).toBe(false);
    expect(undoEdit(state)).toEqual(state);
  });
});

describe("save round-trip", () => {
  const at = ABER;

  it("edit → save → reload preserves every field and bumps the revision", async () => {
    const service = freshService(uncorrectedView());
    const api = client(service);
    let state = loadEditor("p1", await api.getTranscript("p1", "t1"));
    state = applyEdit(state, catalog, {
      kind: "field",
      at,
      field: "normalized",
      value: "aber",
    });

    const payload = savePayload(state);
    state = beginSave(state);
    const result = await api.saveTranscript("p1", "t1", payload.base_revision, payload.utterances);
    expect(result.ok).toBe(true);
    if (result.ok) state = saveSucceeded(state, result.meta);

    expect(state.revision).toBe(2);
    expect(state.dirty).toBe(false);

    const reloaded = await api.getTranscript("p1", "t1");
    expect(reloaded.revision).toBe(2);

    // entering the correction reproduces the canonical transcript exactly:
    // every field of every token survives the save round-trip
    expect(reloaded.utterances).toEqual(fixtureView.utterances);

    // … and an editor loaded from the reload shows no drift either
    const again = loadEditor("p1", reloaded);
    expect(again.utterances).toEqual(state.utterances);
  });

  it("a stale save surfaces the reload dialog instead of overwriting", async () => {
    const service = freshService(uncorrectedView());
    const api = client(service);
    let state = loadEditor("p1", await api.getTranscript("p1", "t1"));
    state = applyEdit(state, catalog, {
      kind: "field",
      at,
      field: "normalized",
      value: "aber",
    });

    const newRevision = service.externalEdit("p1", "t1");
    const payload = savePayload(state);
    state = beginSave(state);
    const result = await api.saveTranscript("p1", "t1", payload.base_revision, payload.utterances);
    expect(result.ok).toBe(false);
    if (!result.ok) {
      state = saveConflicted(state, result.currentRevision, result.message);
    }

    expect(state.dialog).toEqual({
      kind: "reload-required",
      currentRevision: newRevision,
      message: expect.stringContaining("stale"),
    });

    // nothing was written over the newer revision
    const stored = service.storedView("p1", "t1");
    expect(stored.revision).toBe(newRevision);
    const storedToken = stored.utterances
      .find((u) => u.send_id === at.sendId)!
      .tokens.find((t) => t.word_id === at.wordId)!;
    expect(storedToken.normalized).toBe("");

    // the stale editor refuses further edits and saves until reloaded
    expect(() =>
      applyEdit(state, catalog, { kind: "field", at, field: "lemma", value: "x" }),
    ).toThrow(StaleEditorError);
    expect(() => savePayload(state)).toThrow(StaleEditorError);
    expect(() => beginSave(state)).toThrow(StaleEditorError);

    const reloaded = reloadFromServer(state, await api.getTranscript("p1", "t1"));
    expect(reloaded.dialog).toBeNull();
    expect(reloaded.revision).toBe(newRevision);
    expect(reloaded.dirty).toBe(false);
  });

  it("saving twice from the same editor uses the bumped revision", async () => {
    const service = freshService();
    const api = client(service);
    let state: EditorState = loadEditor("p1", await api.getTranscript("p1", "t1"));

    for (const value of ["aber", "abermals"]) {
      state = applyEdit(state, catalog, { kind: "field", at, field: "normalized", value });
      const payload = savePayload(state);
      state = beginSave(state);
      const result = await api.saveTranscript("p1", "t1", payload.base_revision, payload.utterances);
      expect(result.ok).toBe(true);
      if (result.ok) state = saveSucceeded(state, result.meta);
    }
    expect(state.revision).toBe(3);
  });
});
