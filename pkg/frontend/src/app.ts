/** Browser wiring: renders the editor grid, analysis form, and report
 * panel, delegating every state change to the pure modules. The logic
 * itself lives in editor.ts / analysisForm.ts / reportView.ts, which the
 * test suite covers without a DOM.
 */

import { WorkbenchClient } from "./api.js";
import {
  applyEdit,
  beginSave,
  loadEditor,
  reloadFromServer,
  saveConflicted,
  savePayload,
  saveSucceeded,
  setPlayback,
  undoEdit,
  type EditorState,
} from "./editor.js";
import {
  canSubmit,
  defaultForm,
  toConfig,
  toggleExclusion,
  toggleSpeaker,
  EXCLUSION_CLASSES,
  type AnalysisForm,
} from "./analysisForm.js";
import {
  headline,
  lexicalSummary,
  mluRows,
  posRows,
  svaRows,
  verbRows,
} from "./reportView.js";
import {
  morphKeys,
  sttsOptions,
  svaOptions,
  uposOptions,
  type SelectOption,
} from "./tagOptions.js";
import { emptyAnchors, seekTarget, setAnchor, type AnchorMap } from "./audio.js";
import type { ReportBody, TagsetCatalog } from "./types.js";

interface AppContext {
  client: WorkbenchClient;
  catalog: TagsetCatalog;
  projectId: string;
  state: EditorState | null;
  form: AnalysisForm;
  anchors: AnchorMap;
  root: HTMLElement;
  audio: HTMLAudioElement;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: Array<Node | string>
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  node.append(...children);
  return node;
}

function select(
  options: SelectOption[],
  current: string,
  onChange: (value: string) => void,
): HTMLSelectElement {
  const node = el("select");
  for (const opt of options) {
    const o = el("option", { value: opt.value }, opt.label);
    if (opt.value === current) o.selected = true;
    node.append(o);
  }
  node.addEventListener("change", () => onChange(node.value));
  return node;
}

function textInput(current: string, onCommit: (value: string) => void): HTMLInputElement {
  const node = el("input", { type: "text", value: current }) as HTMLInputElement;
  node.value = current;
  node.addEventListener("change", () => onCommit(node.value));
  return node;
}

function renderConflictDialog(ctx: AppContext): HTMLElement {
  const state = ctx.state;
  if (!state?.dialog) return el("div");
  const reload = el("button", {}, "Reload latest revision");
  reload.addEventListener("click", () => {
    void ctx.client
      .getTranscript(ctx.projectId, state.transcriptId)
      .then((view) => {
        ctx.state = reloadFromServer(state, view);
        render(ctx);
      });
  });
  return el(
    "div",
    { class: "dialog conflict" },
    el("p", {}, `This transcript changed on disk (now revision ${state.dialog.currentRevision}). `),
    el("p", {}, "Your unsaved edits cannot be written over it. Reload to continue."),
    reload,
  );
}

function renderEditor(ctx: AppContext): HTMLElement {
  const state = ctx.state;
  if (!state) {
    return el(
      "div",
      { class: "empty-editor" },
      el("p", {}, "No transcript loaded."),
      el("p", {}, "Import an annotation file or transcribe a recording to begin."),
    );
  }
  const container = el("div", { class: "editor" });
  container.append(renderConflictDialog(ctx));

  const mutate = (fn: (s: EditorState) => EditorState) => {
    try {
      ctx.state = fn(state);
    } catch (err) {
      console.warn(String(err));
    }
    render(ctx);
  };

  for (const utterance of state.utterances) {
    const block = el(
      "div",
      { class: utterance.separator ? "utterance separator" : "utterance" },
      el("h3", {}, `#${utterance.send_id} ${utterance.speaker ?? ""}`),
    );
    const seek = el("button", {}, "▶");
    seek.addEventListener("click", () => {
      ctx.audio.currentTime = seekTarget(ctx.anchors, utterance.send_id);
      void ctx.audio.play();
    });
    const anchor = el("button", { title: "anchor this utterance here" }, "⚓");
    anchor.addEventListener("click", () => {
      ctx.anchors = setAnchor(ctx.anchors, utterance.send_id, ctx.audio.currentTime);
    });
    block.append(seek, anchor);

    const table = el("table", { class: "tokens" });
    for (const token of utterance.tokens) {
      const at = { sendId: utterance.send_id, wordId: token.word_id };
      const row = el("tr");
      row.append(el("td", {}, String(token.word_id)));
      row.append(el("td", {}, token.word));
      row.append(
        el(
          "td",
          {},
          textInput(token.normalized, (value) =>
            mutate((s) => applyEdit(s, ctx.catalog, { kind: "field", at, field: "normalized", value })),
          ),
        ),
      );
      row.append(
        el(
          "td",
          {},
          textInput(token.lemma, (value) =>
            mutate((s) => applyEdit(s, ctx.catalog, { kind: "field", at, field: "lemma", value })),
          ),
        ),
      );
      row.append(
        el(
          "td",
          {},
          select(uposOptions(ctx.catalog), token.upos ?? "", (value) =>
            mutate((s) =>
              applyEdit(s, ctx.catalog, {
                kind: "field",
                at,
                field: "upos",
                value: value === "" ? null : value,
              }),
            ),
          ),
        ),
      );
      row.append(
        el(
          "td",
          {},
          select(sttsOptions(ctx.catalog), token.stts ?? "", (value) =>
            mutate((s) =>
              applyEdit(s, ctx.catalog, {
                kind: "field",
                at,
                field: "stts",
                value: value === "" ? null : value,
              }),
            ),
          ),
        ),
      );
      row.append(
        el(
          "td",
          {},
          select(svaOptions(ctx.catalog), token.sva, (value) =>
            mutate((s) => applyEdit(s, ctx.catalog, { kind: "field", at, field: "sva", value })),
          ),
        ),
      );
      row.append(el("td", { class: "morph" }, formatMorph(token.morph)));
      table.append(row);
    }
    block.append(table);
    container.append(block);
  }

  const undo = el("button", {}, "Undo");
  undo.addEventListener("click", () => mutate(undoEdit));
  const save = el("button", {}, state.dirty ? "Save*" : "Save");
  save.addEventListener("click", () => {
    if (!ctx.state || ctx.state.dialog) return;
    const payload = savePayload(ctx.state);
    ctx.state = beginSave(ctx.state);
    render(ctx);
    void ctx.client
      .saveTranscript(
        ctx.projectId,
        ctx.state.transcriptId,
        payload.base_revision,
        payload.utterances,
      )
      .then((result) => {
        if (!ctx.state) return;
        ctx.state = result.ok
          ? saveSucceeded(ctx.state, result.meta)
          : saveConflicted(ctx.state, result.currentRevision, result.message);
        render(ctx);
      });
  });
  container.append(el("div", { class: "actions" }, undo, save));
  return container;
}

function formatMorph(morph: Record<string, string>): string {
  return Object.entries(morph)
    .map(([k, v]) => `${k}=${v}`)
    .join(" ");
}

function renderAnalysisForm(ctx: AppContext): HTMLElement {
  const panel = el("div", { class: "analysis-form" }, el("h2", {}, "Analysis"));
  for (const speaker of ctx.catalog.speakers) {
    const box = el("input", { type: "checkbox" }) as HTMLInputElement;
    box.checked = ctx.form.speakers.has(speaker);
    box.addEventListener("change", () => {
      ctx.form = toggleSpeaker(ctx.form, speaker);
      render(ctx);
    });
    panel.append(el("label", {}, box, ` ${speaker}`));
  }
  for (const cls of EXCLUSION_CLASSES) {
    const box = el("input", { type: "checkbox" }) as HTMLInputElement;
    box.checked = ctx.form.exclude.has(cls);
    box.addEventListener("change", () => {
      ctx.form = toggleExclusion(ctx.form, cls);
      render(ctx);
    });
    panel.append(el("label", {}, box, ` exclude ${cls}`));
  }
  const run = el("button", {}, "Run analysis") as HTMLButtonElement;
  run.disabled = !canSubmit(ctx.form) || !ctx.state;
  run.addEventListener("click", () => {
    const state = ctx.state;
    if (!state || !canSubmit(ctx.form)) return;
    void ctx.client
      .startAnalysis(ctx.projectId, state.transcriptId, { ...toConfig(ctx.form) })
      .then((job) => ctx.client.waitForReport(job.job_id))
      .then((reportId) => ctx.client.getReport(ctx.projectId, reportId))
      .then((record) => renderReport(ctx, record.body));
  });
  panel.append(run);
  if (!canSubmit(ctx.form)) {
    panel.append(el("p", { class: "hint" }, "Select at least one speaker."));
  }
  return panel;
}

function renderReport(ctx: AppContext, body: ReportBody): void {
  const panel = ctx.root.querySelector(".report") ?? el("div", { class: "report" });
  panel.textContent = "";
  panel.append(el("h2", {}, headline(body)));

  const mlu = el("table", {}, el("tr", {}, el("th", {}, "Speaker"), el("th", {}, "MLU")));
  for (const row of mluRows(body)) {
    mlu.append(
      el("tr", {}, el("td", {}, row.speaker), el("td", {}, row.error ?? row.mlu ?? "")),
    );
  }
  panel.append(el("h3", {}, "Mean length of utterance"), mlu);

  for (const row of mluRows(body)) {
    if (row.error) continue;
    const pos = el("table", {});
    for (const p of posRows(body, row.speaker)) {
      pos.append(
        el(
          "tr",
          {},
          el("td", {}, p.tag),
          el("td", {}, p.frequency),
          el("td", {}, `n=${p.count}`),
        ),
      );
    }
    panel.append(el("h3", {}, `Tags — ${row.speaker}`), pos);
  }

  const sva = el("ul", {});
  for (const row of svaRows(body)) {
    sva.append(el("li", {}, `${row.label} — ${row.verdict}${row.flag ? ` (${row.flag})` : ""}`));
  }
  panel.append(el("h3", {}, "Subject–verb pairs"), sva);

  const verbs = el("table", {});
  for (const row of verbRows(body)) {
    verbs.append(
      el(
        "tr",
        {},
        el("td", {}, row.position),
        el("td", {}, row.speaker),
        el("td", {}, row.form),
        el("td", {}, row.lemma),
        el("td", {}, row.tag),
        el("td", {}, row.morph),
      ),
    );
  }
  panel.append(el("h3", {}, "Verbs"), verbs);

  const lex = lexicalSummary(body);
  panel.append(
    el(
      "p",
      {},
      "error" in lex
        ? `Lexical diversity: ${lex.error}`
        : `Lexical diversity: ${lex.types} types / ${lex.tokens} tokens (TTR ${lex.ttr})`,
    ),
  );
  if (!panel.isConnected) ctx.root.append(panel);
}

function render(ctx: AppContext): void {
  const host = ctx.root.querySelector(".workspace") ?? el("div", { class: "workspace" });
  host.textContent = "";
  host.append(renderEditor(ctx), renderAnalysisForm(ctx));
  if (!host.isConnected) ctx.root.append(host);
}

export async function startApp(root: HTMLElement, serviceUrl: string): Promise<void> {
  const client = new WorkbenchClient(serviceUrl);
  const catalog = await client.tagsets();
  const projects = await client.listProjects();
  const first = projects[0] ?? (await client.createProject("default"));
  const audio = el("audio", { controls: "controls" });
  audio.addEventListener("timeupdate", () => {
    if (ctx.state) ctx.state = setPlayback(ctx.state, audio.currentTime);
  });
  const ctx: AppContext = {
    client,
    catalog,
    projectId: first.project_id,
    state: null,
    form: defaultForm(catalog),
    anchors: emptyAnchors(),
    root,
    audio,
  };
  root.append(audio);
  render(ctx);

  const picker = el("input", {
    type: "text",
    placeholder: "transcript id",
  }) as HTMLInputElement;
  const load = el("button", {}, "Open");
  load.addEventListener("click", () => {
    void client.getTranscript(ctx.projectId, picker.value).then((view) => {
      ctx.state = loadEditor(ctx.projectId, view);
      render(ctx);
    });
  });
  root.prepend(el("div", { class: "toolbar" }, picker, load));
}
