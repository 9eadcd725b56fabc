import { describe, expect, it } from "vitest";

import {
  isLegalFieldValue,
  isLegalMorphValue,
  morphKeys,
  morphValueOptions,
  speakerOptions,
  sttsOptions,
  svaOptions,
  uposOptions,
} from "../src/tagOptions.js";
import type { TagsetCatalog } from "../src/types.js";
import { loadFixture } from "./helpers.js";

const catalog = loadFixture<TagsetCatalog>("tagsets.json");

describe("dropdown options mirror the service catalog exactly", () => {
  it("coarse tags: 17 values plus the untagged blank", () => {
    const options = uposOptions(catalog);
    expect(options).toHaveLength(18);
    expect(options[0]).toEqual({ value: "", label: "(untagged)" });
    expect(options.slice(1).map((o) => o.value)).toEqual(catalog.upos);
    expect(catalog.upos).toHaveLength(17);
  });

  it("fine tags come from the catalog, which omits the legacy adverb label", () => {
    const options = sttsOptions(catalog);
    const values = options.map((o) => o.value);
    expect(values).toContain("PROAV");
    expect(values).not.toContain("PAV");
    expect(values).toContain("$.");
  });

  it("agreement marks offer a blank plus the catalog marks", () => {
    const values = svaOptions(catalog).map((o) => o.value);
    expect(values).toEqual(["", ...catalog.sva]);
    expect(catalog.sva).toEqual(["sb", "v", "sb_v", "v_sb"]);
  });

  it("speakers and morphology keys come straight from the catalog", () => {
    expect(speakerOptions(catalog).map((o) => o.value)).toEqual(["FP", "K"]);
    expect(morphKeys(catalog)).toHaveLength(13);
    expect(morphValueOptions(catalog, "Number").map((o) => o.value)).toEqual([
      "",
      ...catalog.morph["Number"]!,
    ]);
    expect(morphValueOptions(catalog, "NoSuchKey")).toEqual([]);
  });
});

describe("legality checks back the constrained controls", () => {
  it("an option outside the list is illegal, so it is unrepresentable", () => {
    expect(isLegalFieldValue(catalog, "upos", "NOUN")).toBe(true);
    expect(isLegalFieldValue(catalog, "upos", null)).toBe(true);
    expect(isLegalFieldValue(catalog, "upos", "NOUNS")).toBe(false);
    expect(isLegalFieldValue(catalog, "stts", "VVFIN")).toBe(true);
    expect(isLegalFieldValue(catalog, "stts", "PAV")).toBe(false);
    expect(isLegalFieldValue(catalog, "sva", "")).toBe(true);
    expect(isLegalFieldValue(catalog, "sva", "sb_v")).toBe(true);
    expect(isLegalFieldValue(catalog, "sva", "verb")).toBe(false);
  });

  it("free-text fields accept strings but the surface form must be non-empty", () => {
    expect(isLegalFieldValue(catalog, "normalized", "")).toBe(true);
    expect(isLegalFieldValue(catalog, "lemma", "sein")).toBe(true);
    expect(isLegalFieldValue(catalog, "word", "")).toBe(false);
    expect(isLegalFieldValue(catalog, "contracted", true)).toBe(true);
    expect(isLegalFieldValue(catalog, "contracted", "yes")).toBe(false);
  });

  it("morphology values are checked per key", () => {
    expect(isLegalMorphValue(catalog, "Number", "Sing")).toBe(true);
    expect(isLegalMorphValue(catalog, "Number", "Dual")).toBe(false);
    expect(isLegalMorphValue(catalog, "NoSuchKey", "Sing")).toBe(false);
  });
});
