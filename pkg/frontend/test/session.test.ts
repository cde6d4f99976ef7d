import { describe, expect, it } from "vitest";

import {
  addPathChain,
  appendToChain,
  createSession,
  exportSession,
  importSession,
  newChain,
  pinConcept,
  recordHistory,
  serializeSession,
  SessionFormatError,
  unpinConcept,
} from "../src/session.js";

describe("createSession", () => {
  it("starts with one chain holding just the basic word", () => {
    const s = createSession("hair dryer");
    expect(s.basicWord).toBe("hair dryer");
    expect(s.chains).toEqual([["hair dryer"]]);
    expect(s.history).toEqual([]);
    expect(s.pinned).toEqual([]);
  });

  it("trims surrounding whitespace", () => {
    expect(createSession("  comb ").basicWord).toBe("comb");
  });

  it("rejects an empty basic word", () => {
    expect(() => createSession("   ")).toThrow(SessionFormatError);
  });
});

describe("chains", () => {
  it("appends grow a chain in order", () => {
    const s = createSession("hair dryer");
    expect(appendToChain(s, 0, "comb")).toEqual({ ok: true });
    expect(appendToChain(s, 0, "hairstyle")).toEqual({ ok: true });
    expect(s.chains[0]).toEqual(["hair dryer", "comb", "hairstyle"]);
  });

  it("rejects an adjacent duplicate with a notice", () => {
    const s = createSession("hair dryer");
    appendToChain(s, 0, "comb");
    const update = appendToChain(s, 0, "comb");
    expect(update.ok).toBe(false);
    if (!update.ok) expect(update.notice).toContain("comb");
    expect(s.chains[0]).toEqual(["hair dryer", "comb"]);
  });

  it("allows a non-adjacent repeat", () => {
    const s = createSession("a");
    appendToChain(s, 0, "b");
    expect(appendToChain(s, 0, "a")).toEqual({ ok: true });
    expect(s.chains[0]).toEqual(["a", "b", "a"]);
  });

  it("rejects appends to a missing chain or with an empty title", () => {
    const s = createSession("a");
    expect(appendToChain(s, 3, "b").ok).toBe(false);
    expect(appendToChain(s, 0, "   ").ok).toBe(false);
  });

  it("new chains root at the basic word", () => {
    const s = createSession("hair dryer");
    const at = newChain(s);
    expect(at).toBe(1);
    expect(s.chains[1]).toEqual(["hair dryer"]);
  });
});

describe("addPathChain", () => {
  it("copies a path that already starts at the basic word", () => {
    const s = createSession("hair dryer");
    addPathChain(s, ["hair dryer", "vacuum cleaner", "automobile"]);
    expect(s.chains[1]).toEqual(["hair dryer", "vacuum cleaner", "automobile"]);
  });

  it("roots a path that starts elsewhere", () => {
    const s = createSession("hair dryer");
    addPathChain(s, ["comb", "hairstyle"]);
    expect(s.chains[1]).toEqual(["hair dryer", "comb", "hairstyle"]);
  });

  it("collapses the duplicate when the path begins with the basic word twice", () => {
    const s = createSession("a");
    addPathChain(s, ["a", "a", "b"]);
    expect(s.chains[1]).toEqual(["a", "b"]);
  });

  it("rejects an empty path", () => {
    const s = createSession("a");
    expect(addPathChain(s, []).ok).toBe(false);
  });
});

describe("pins", () => {
  it("pinning is idempotent", () => {
    const s = createSession("a");
    expect(pinConcept(s, "GloVe").ok).toBe(true);
    expect(pinConcept(s, "GloVe").ok).toBe(false);
    expect(s.pinned).toEqual(["GloVe"]);
    unpinConcept(s, "GloVe");
    expect(s.pinned).toEqual([]);
  });
});

describe("export / import", () => {
  function populated() {
    const s = createSession("FastText");
    recordHistory(s, { panel: "explore", term: "FastText", mode: "explore_general", minStep: 1, k: 10 });
    recordHistory(s, { panel: "path", from: "FastText", to: "Word2vec", mode: "path_basic", k: 3, maxHops: 10 });
    appendToChain(s, 0, "Word2vec");
    newChain(s);
    appendToChain(s, 1, "GloVe");
    pinConcept(s, "Word embedding");
    s.settings.explore = { mode: "explore_specific", minStep: 2, k: 5 };
    s.settings.path = { mode: "path_professional", k: 2, maxHops: 6 };
    return s;
  }

  it("round-trips to an equal session", () => {
    const s = populated();
    const doc = exportSession(s, { node_count: 25, edge_count: 71 });
    expect(importSession(doc).state).toEqual(s);
  });

  it("round-trips through the serialized string too", () => {
    const s = populated();
    const text = serializeSession(s, { node_count: 25, edge_count: 71 });
    expect(importSession(text).state).toEqual(s);
  });

  it("stamps envelope metadata without putting it in the state", () => {
    const doc = exportSession(createSession("a"), { node_count: 1, edge_count: 0 },
      () => new Date("2026-08-14T12:00:00Z"));
    expect(doc.schema_version).toBe(1);
    expect(doc.exported_at).toBe("2026-08-14T12:00:00.000Z");
    expect(doc.network).toEqual({ node_count: 1, edge_count: 0 });
    expect("exported_at" in importSession(doc).state).toBe(false);
  });

  it("rejects a different schema_version", () => {
    const doc = exportSession(createSession("a"), null);
    expect(() => importSession({ ...doc, schema_version: 2 })).toThrow(/schema_version 2/);
  });

  it("rejects chains that do not start at the basic word", () => {
    const doc = exportSession(populated(), null);
    doc.session.chains.push(["GloVe", "Word2vec"]);
    expect(() => importSession(doc)).toThrow(SessionFormatError);
  });

  it("rejects chains with adjacent duplicates", () => {
    const doc = exportSession(populated(), null);
    doc.session.chains[0] = ["FastText", "Word2vec", "Word2vec"];
    expect(() => importSession(doc)).toThrow(/adjacent duplicate/);
  });

  it("rejects garbage input", () => {
    expect(() => importSession("{not json")).toThrow(SessionFormatError);
    expect(() => importSession(42)).toThrow(SessionFormatError);
  });

  it("warns (but does not block) on a network mismatch", () => {
    const s = populated();
    const doc = exportSession(s, { node_count: 25, edge_count: 71 });
    const imported = importSession(doc, { node_count: 30, edge_count: 99 });
    expect(imported.state).toEqual(s);
    expect(imported.warnings).toHaveLength(1);
    expect(imported.warnings[0]).toMatch(/25-node/);
  });

  it("stays silent when the network matches", () => {
    const doc = exportSession(populated(), { node_count: 25, edge_count: 71 });
    expect(importSession(doc, { node_count: 25, edge_count: 71 }).warnings).toEqual([]);
  });
});
