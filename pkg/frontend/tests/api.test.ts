import { describe, expect, it } from "vitest";

import {
  NonLoopbackUrlError,
  ServiceError,
  WorkbenchClient,
  assertLoopbackUrl,
} from "../src/api.js";
import type { TagsetCatalog, TranscriptView } from "../src/types.js";
import { FakeWorkbenchService } from "./fakeService.js";
import { loadFixture } from "./helpers.js";

const catalog = loadFixture<TagsetCatalog>("tagsets.json");
const fixtureView = loadFixture<TranscriptView>("transcript_view.json");

describe("all traffic targets the loopback interface only", () => {
  it.each([
    "http://127.0.0.1:8077",
    "http://127.1.2.3:80",
    "http://localhost:8077",
    "http://[::1]:8077",
  ])("accepts %s", (url) => {
    expect(() => assertLoopbackUrl(url)).not.toThrow();
  });

  it.each([
    "http://192.168.1.40:8077",
    "http://10.0.0.5:8077",
    "https://example.com",
    "http://anna.local:8077",
    "not a url",
  ])("rejects %s", (url) => {
    expect(() => assertLoopbackUrl(url)).toThrow(NonLoopbackUrlError);
    expect(() => new WorkbenchClient(url)).toThrow(NonLoopbackUrlError);
  });

  it("audio URLs stay on the validated base", () => {
    const service = new FakeWorkbenchService(catalog);
    const api = new WorkbenchClient("http://127.0.0.1:8077/", service.fetch);
    expect(api.audioUrl("p1", "rec 1.wav")).toBe(
      "http://127.0.0.1:8077/projects/p1/audio/rec%201.wav",
    );
  });
});

describe("request plumbing", () => {
  it("fetches the tag-set catalog", async () => {
    const service = new FakeWorkbenchService(catalog);
    const api = new WorkbenchClient("http://127.0.0.1:8077", service.fetch);
    const got = await api.tagsets();
    expect(got.upos).toHaveLength(17);
    expect(got.speakers).toEqual(["FP", "K"]);
  });

  it("raises a typed error with status and body on failures", async () => {
    const service = new FakeWorkbenchService(catalog);
    const api = new WorkbenchClient("http://127.0.0.1:8077", service.fetch);
    await expect(api.getTranscript("p1", "missing")).rejects.toThrow(ServiceError);
    await expect(api.getTranscript("p1", "missing")).rejects.toMatchObject({
      status: 404,
    });
  });

  it("polls a job until the report id arrives", async () => {
    const service = new FakeWorkbenchService(catalog);
    service.seedTranscript("p1", fixtureView);
    service.setReportBody(loadFixture("report_default.json"));
    const api = new WorkbenchClient("http://127.0.0.1:8077", service.fetch);
    const job = await api.startAnalysis("p1", "t1", { speakers: ["FP", "K"] });
    const reportId = await api.waitForReport(job.job_id, { intervalMs: 1 });
    const record = await api.getReport("p1", reportId);
    expect(record.transcript_id).toBe("t1");
    expect(record.body.recording_id).toBe("sample_transcript");
  });

  it("reports an unknown job as a service error", async () => {
    const service = new FakeWorkbenchService(catalog);
    const api = new WorkbenchClient("http://127.0.0.1:8077", service.fetch);
    await expect(api.getJob("nope")).rejects.toMatchObject({ status: 404 });
  });
});
