/** HTTP client for the local workbench service.
 *
 * All traffic is restricted to the loopback interface: the constructor
 * rejects any base URL whose host is not 127.0.0.0/8, ::1, or localhost.
 * `fetchFn` is injectable so tests can stub the service.
 */

import type {
  JobView,
  LintResult,
  ReportBody,
  ReportRecord,
  TagsetCatalog,
  TranscriptMeta,
  TranscriptView,
  UtteranceView,
} from "./types.js";

export class NonLoopbackUrlError extends Error {}

export class ServiceError extends Error {
  constructor(
    message: string,
    readonly status: number,
    readonly body: unknown,
  ) {
    super(message);
  }
}

export type SaveResult =
  | { ok: true; meta: TranscriptMeta }
  | { ok: false; conflict: true; currentRevision: number; message: string };

export function assertLoopbackUrl(base: string): string {
  let url: URL;
  try {
    url = new URL(base);
  } catch {
    throw new NonLoopbackUrlError(`invalid service URL: ${base}`);
  }
  const host = url.hostname.replace(/^\[|\]$/g, "");
  const loopback =
    host === "localhost" || host === "::1" || /^127(\.\d{1,3}){3}$/.test(host);
  if (!loopback) {
    throw new NonLoopbackUrlError(
      `service URL must target the loopback interface, got host ${host}`,
    );
  }
  return base.replace(/\/+$/, "");
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class WorkbenchClient {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl: string, fetchFn?: FetchLike) {
    this.base = assertLoopbackUrl(baseUrl);
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const response = await this.fetchFn(this.base + path, {
      method,
      headers: body === undefined ? {} : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await parseJson(response);
    if (!response.ok) {
      throw new ServiceError(
        `${method} ${path} failed with ${response.status}`,
        response.status,
        payload,
      );
    }
    return payload as T;
  }

  health(): Promise<{ status: string; version: string }> {
    return this.request("GET", "/health");
  }

  tagsets(): Promise<TagsetCatalog> {
    return this.request("GET", "/tagsets");
  }

  createProject(name: string): Promise<{ project_id: string; name: string }> {
    return this.request("POST", "/projects", { name });
  }

  listProjects(): Promise<Array<{ project_id: string; name: string }>> {
    return this.request("GET", "/projects");
  }

  getTranscript(projectId: string, transcriptId: string): Promise<TranscriptView> {
    return this.request("GET", `/projects/${projectId}/transcripts/${transcriptId}`);
  }

  importTranscript(
    projectId: string,
    body: {
      transcript_id?: string;
      variant?: string;
      recording_id?: string;
      content: string;
    },
  ): Promise<TranscriptMeta> {
    return this.request("POST", `/projects/${projectId}/transcripts`, body);
  }

  /** PUT the full utterance list; a 409 is a normal outcome, not an exception. */
  async saveTranscript(
    projectId: string,
    transcriptId: string,
    baseRevision: number,
    utterances: UtteranceView[],
    editedBy = "editor",
  ): Promise<SaveResult> {
    const response = await this.fetchFn(
      `${this.base}/projects/${projectId}/transcripts/${transcriptId}`,
      {
        method: "PUT",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({
          base_revision: baseRevision,
          edited_by: editedBy,
          utterances,
        }),
      },
    );
    const payload = await parseJson(response);
    if (response.status === 409) {
      const detail = payload as { current_revision: number; message?: string };
      return {
        ok: false,
        conflict: true,
        currentRevision: detail.current_revision,
        message: detail.message ?? "revision conflict",
      };
    }
    if (!response.ok) {
      throw new ServiceError(`save failed with ${response.status}`, response.status, payload);
    }
    return { ok: true, meta: payload as TranscriptMeta };
  }

  lint(projectId: string, transcriptId: string): Promise<LintResult> {
    return this.request(
      "GET",
      `/projects/${projectId}/transcripts/${transcriptId}/lint`,
    );
  }

  transcribe(
    projectId: string,
    body: { audio_path: string; variant?: string; transcript_id?: string },
  ): Promise<TranscriptMeta & { model: string }> {
    return this.request("POST", `/projects/${projectId}/transcribe`, body);
  }

  tagTranscript(
    projectId: string,
    transcriptId: string,
    body: { base_revision: number; tagset?: string; form?: string },
  ): Promise<TranscriptMeta & { model: string; warnings: string[] }> {
    return this.request(
      "POST",
      `/projects/${projectId}/transcripts/${transcriptId}/tag`,
      body,
    );
  }

  startAnalysis(
    projectId: string,
    transcriptId: string,
    config: Record<string, unknown>,
  ): Promise<{ job_id: string; status: string }> {
    return this.request(
      "POST",
      `/projects/${projectId}/transcripts/${transcriptId}/analyze`,
      { config },
    );
  }

  getJob(jobId: string): Promise<JobView> {
    return this.request("GET", `/jobs/${jobId}`);
  }

  /** Poll a job until it settles; resolves with the finished report id. */
  async waitForReport(
    jobId: string,
    opts: { intervalMs?: number; timeoutMs?: number; sleep?: (ms: number) => Promise<void> } = {},
  ): Promise<string> {
    const interval = opts.intervalMs ?? 200;
    const deadline = Date.now() + (opts.timeoutMs ?? 60_000);
    const sleep = opts.sleep ?? ((ms) => new Promise((r) => setTimeout(r, ms)));
    for (;;) {
      const job = await this.getJob(jobId);
      if (job.status === "done" && job.report_id) return job.report_id;
      if (job.status === "failed") {
        throw new ServiceError(job.error ?? "analysis failed", 500, job);
      }
      if (Date.now() > deadline) {
        throw new ServiceError("analysis timed out", 504, job);
      }
      await sleep(interval);
    }
  }

  getReport(projectId: string, reportId: string): Promise<ReportRecord> {
    return this.request("GET", `/projects/${projectId}/reports/${reportId}`);
  }

  async getReportText(projectId: string, reportId: string): Promise<string> {
    const response = await this.fetchFn(
      `${this.base}/projects/${projectId}/reports/${reportId}/text`,
    );
    if (!response.ok) {
      throw new ServiceError(`report text ${response.status}`, response.status, null);
    }
    return response.text();
  }

  listReports(
    projectId: string,
  ): Promise<Array<{ report_id: string; transcript_id: string; revision: number }>> {
    return this.request("GET", `/projects/${projectId}/reports`);
  }

  /** URL for the <audio> element; stays on the loopback base by construction. */
  audioUrl(projectId: string, name: string): string {
    return `${this.base}/projects/${projectId}/audio/${encodeURIComponent(name)}`;
  }
}

async function parseJson(response: Response): Promise<unknown> {
  const text = await response.text();
  if (!text) return null;
  try {
    return JSON.parse(text);
  } catch {
    return text;
  }
}

export type { ReportBody };
