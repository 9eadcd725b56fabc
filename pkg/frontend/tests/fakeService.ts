/** In-memory stand-in for the local service, exposed as a fetch function.
 *
 * It honours the parts of the wire contract the UI depends on: transcript
 * GET/PUT with optimistic revisioning (409 + current_revision on stale
 * writes), the tag-set catalog, and the analyze job/report flow. Reports
 * are canned bodies injected by each test, which is exactly the "contract
 * stubbing" needed to prove the UI displays service numbers verbatim.
 */

import type {
  ReportBody,
  TagsetCatalog,
  TranscriptView,
  UtteranceView,
} from "../src/types.js";

interface StoredTranscript {
  view: TranscriptView;
}

function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

function deepClone<T>(value: T): T {
  return JSON.parse(JSON.stringify(value)) as T;
}

export class FakeWorkbenchService {
  private transcripts = new Map<string, StoredTranscript>();
  private reports = new Map<string, { report_id: string; transcript_id: string; revision: number; body: ReportBody }>();
  private jobs = new Map<string, { status: string; report_id?: string }>();
  private jobCounter = 0;
  readonly requests: Array<{ method: string; path: string; body: unknown }> = [];

  constructor(
    private readonly catalog: TagsetCatalog,
    private nextReportBody: ReportBody | null = null,
  ) {}

  seedTranscript(projectId: string, view: TranscriptView): void {
    this.transcripts.set(`${projectId}/${view.transcript_id}`, {
      view: deepClone(view),
    });
  }

  /** The body the next finished analysis job will return. */
  setReportBody(body: ReportBody): void {
    this.nextReportBody = deepClone(body);
  }

  /** Simulate another writer bumping the stored revision out from under the editor. */
  externalEdit(projectId: string, transcriptId: string): number {
    const stored = this.transcripts.get(`${projectId}/${transcriptId}`);
    if (!stored) throw new Error("no such transcript");
    stored.view.revision += 1;
    stored.view.edited_by = "someone-else";
    return stored.view.revision;
  }

  storedView(projectId: string, transcriptId: string): TranscriptView {
    const stored = this.transcripts.get(`${projectId}/${transcriptId}`);
    if (!stored) throw new Error("no such transcript");
    return deepClone(stored.view);
  }

  readonly fetch = async (input: string, init?: RequestInit): Promise<Response> => {
    const url = new URL(input);
    const method = (init?.method ?? "GET").toUpperCase();
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    this.requests.push({ method, path: url.pathname, body });

    if (method === "GET" && url.pathname === "/tagsets") {
      return jsonResponse(200, this.catalog);
    }

    let m = url.pathname.match(/^\/projects\/([^/]+)\/transcripts\/([^/]+)$/);
    if (m) {
      const key = `${m[1]}/${m[2]}`;
      const stored = this.transcripts.get(key);
      if (!stored) return jsonResponse(404, { error: "not-found" });
      if (method === "GET") return jsonResponse(200, deepClone(stored.view));
      if (method === "PUT") {
        const put = body as { base_revision: number; utterances: UtteranceView[] };
        if (put.base_revision !== stored.view.revision) {
          return jsonResponse(409, {
            error: "revision-conflict",
            message: `stale base_revision ${put.base_revision}`,
            current_revision: stored.view.revision,
          });
        }
        stored.view.utterances = deepClone(put.utterances);
        stored.view.revision += 1;
        stored.view.draft = false;
        const { utterances: _utterances, tsv: _tsv, ...meta } = stored.view;
        return jsonResponse(200, meta);
      }
    }

    m = url.pathname.match(/^\/projects\/([^/]+)\/transcripts\/([^/]+)\/analyze$/);
    if (m && method === "POST") {
      if (!this.nextReportBody) return jsonResponse(500, { error: "no canned report" });
      const jobId = `job-${++this.jobCounter}`;
      const reportId = `report-${this.jobCounter}`;
      const stored = this.transcripts.get(`${m[1]}/${m[2]}`);
      this.reports.set(reportId, {
        report_id: reportId,
        transcript_id: m[2] as string,
        revision: stored?.view.revision ?? 1,
        body: deepClone(this.nextReportBody),
      });
      this.jobs.set(jobId, { status: "done", report_id: reportId });
      return jsonResponse(202, { job_id: jobId, status: "queued" });
    }

    m = url.pathname.match(/^\/jobs\/([^/]+)$/);
    if (m && method === "GET") {
      const job = this.jobs.get(m[1] as string);
      if (!job) return jsonResponse(404, { error: "not-found" });
      return jsonResponse(200, { job_id: m[1], ...job });
    }

    m = url.pathname.match(/^\/projects\/([^/]+)\/reports\/([^/]+)$/);
    if (m && method === "GET") {
      const report = this.reports.get(m[2] as string);
      if (!report) return jsonResponse(404, { error: "not-found" });
      return jsonResponse(200, deepClone(report));
    }

    return jsonResponse(404, { error: "not-found", path: url.pathname });
  };
}
