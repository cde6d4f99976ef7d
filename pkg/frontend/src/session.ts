/**
 * Session state and its JSON export format.
 *
 * A session is rooted at one "basic word" — the spark the designer
 * starts from. Everything else hangs off it: the queries issued, the
 * concepts pinned along the way, and the inspiration chains grown from
 * the basic word. The exported document's schema lives in docs/api.md
 * next to the HTTP API it complements.
 */

import type { ExploreMode, PathMode } from "./api.js";

export const SESSION_SCHEMA_VERSION = 1;

export interface ExploreSettings {
  mode: ExploreMode;
  minStep: number;
  k: number;
}

export interface PathSettings {
  mode: PathMode;
  k: number;
  maxHops: number;
}

export type HistoryEntry =
  | { panel: "explore"; term: string; mode: ExploreMode; minStep: number; k: number }
  | { panel: "path"; from: string; to: string; mode: PathMode; k: number; maxHops: number };

export interface SessionState {
  basicWord: string;
  history: HistoryEntry[];
  pinned: string[];
  // Invariants: chains[i][0] === basicWord; no adjacent duplicates.
  chains: string[][];
  settings: { explore: ExploreSettings; path: PathSettings };
}

export interface NetworkInfo {
  node_count: number;
  edge_count: number;
}

export class SessionFormatError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SessionFormatError";
  }
}

export const DEFAULT_EXPLORE: ExploreSettings = { mode: "explore_general", minStep: 1, k: 10 };
export const DEFAULT_PATH: PathSettings = { mode: "path_basic", k: 3, maxHops: 10 };

/** A fresh session: one chain holding just the basic word. */
export function createSession(basicWord: string): SessionState {
  const word = basicWord.trim();
  if (!word) throw new SessionFormatError("basic word must not be empty");
  return {
    basicWord: word,
    history: [],
    pinned: [],
    chains: [[word]],
    settings: { explore: { ...DEFAULT_EXPLORE }, path: { ...DEFAULT_PATH } },
  };
}

export type BoardUpdate = { ok: true } | { ok: false; notice: string };

/** Append one concept to a chain; adjacent duplicates are rejected. */
export function appendToChain(state: SessionState, chainIndex: number, title: string): BoardUpdate {
  const chain = state.chains[chainIndex];
  if (!chain) return { ok: false, notice: `no chain #${chainIndex}` };
  const entry = title.trim();
  if (!entry) return { ok: false, notice: "empty concept title" };
  if (chain[chain.length - 1] === entry) {
    return { ok: false, notice: `"${entry}" already ends this chain` };
  }
  chain.push(entry);
  return { ok: true };
}

export function newChain(state: SessionState): number {
  state.chains.push([state.basicWord]);
  return state.chains.length - 1;
}

/** Pinning is idempotent: a concept appears on the board at most once. */
export function pinConcept(state: SessionState, title: string): BoardUpdate {
  if (state.pinned.includes(title)) return { ok: false, notice: `"${title}" is already pinned` };
  state.pinned.push(title);
  return { ok: true };
}

export function unpinConcept(state: SessionState, title: string): void {
  state.pinned = state.pinned.filter((t) => t !== title);
}

/**
 * Copy a path's node sequence into the board as a new chain. Chains
 * always start at the basic word, so a path that starts elsewhere gets
 * rooted there explicitly; adjacent duplicates collapse.
 */
export function addPathChain(state: SessionState, nodes: string[]): BoardUpdate {
  if (nodes.length === 0) return { ok: false, notice: "empty path" };
  const rooted = nodes[0] === state.basicWord ? nodes : [state.basicWord, ...nodes];
  const chain: string[] = [];
  for (const title of rooted) {
    if (chain[chain.length - 1] !== title) chain.push(title);
  }
  state.chains.push(chain);
  return { ok: true };
}

export function recordHistory(state: SessionState, entry: HistoryEntry): void {
  state.history.push(entry);
}

function chainErrors(state: SessionState): string | null {
  for (const chain of state.chains) {
    if (chain.length === 0) return "empty chain";
    if (chain[0] !== state.basicWord) {
      return `chain starts at "${chain[0]}", not the basic word "${state.basicWord}"`;
    }
    for (let i = 1; i < chain.length; i++) {
      if (chain[i] === chain[i - 1]) return `adjacent duplicate "${chain[i]}"`;
    }
  }
  return null;
}

// --- export / import -------------------------------------------------

interface SessionJson {
  basic_word: string;
  history: HistoryJson[];
  pinned: string[];
  chains: string[][];
  settings: {
    explore: { mode: ExploreMode; min_step: number; k: number };
    path: { mode: PathMode; k: number; max_hops: number };
  };
}

type HistoryJson =
  | { panel: "explore"; term: string; mode: ExploreMode; min_step: number; k: number }
  | { panel: "path"; from: string; to: string; mode: PathMode; k: number; max_hops: number };

export interface SessionDocument {
  schema_version: number;
  exported_at: string;
  network: NetworkInfo | null;
  session: SessionJson;
}

export function exportSession(state: SessionState, network: NetworkInfo | null,
  now: () => Date = () => new Date()): SessionDocument {
  return {
    schema_version: SESSION_SCHEMA_VERSION,
    exported_at: now().toISOString(),
    network,
    session: {
      basic_word: state.basicWord,
      history: state.history.map((h): HistoryJson =>
        h.panel === "explore"
          ? { panel: "explore", term: h.term, mode: h.mode, min_step: h.minStep, k: h.k }
          : { panel: "path", from: h.from, to: h.to, mode: h.mode, k: h.k, max_hops: h.maxHops }),
      pinned: [...state.pinned],
      chains: state.chains.map((c) => [...c]),
      settings: {
        explore: {
          mode: state.settings.explore.mode,
          min_step: state.settings.explore.minStep,
          k: state.settings.explore.k,
        },
        path: {
          mode: state.settings.path.mode,
          k: state.settings.path.k,
          max_hops: state.settings.path.maxHops,
        },
      },
    },
  };
}

export interface ImportResult {
  state: SessionState;
  /** Non-blocking observations, e.g. a network-size mismatch. */
  warnings: string[];
}

export function importSession(raw: string | unknown, liveNetwork?: NetworkInfo): ImportResult {
  let doc: SessionDocument;
  if (typeof raw === "string") {
    try {
      doc = JSON.parse(raw);
    } catch (err) {
      throw new SessionFormatError(`not JSON: ${(err as Error).message}`);
    }
  } else {
    doc = raw as SessionDocument;
  }
  if (typeof doc !== "object" || doc === null) {
    throw new SessionFormatError("session document must be an object");
  }
  if (doc.schema_version !== SESSION_SCHEMA_VERSION) {
    throw new SessionFormatError(
      `unsupported schema_version ${doc.schema_version} (expected ${SESSION_SCHEMA_VERSION})`);
  }
  const s = doc.session;
  if (typeof s !== "object" || s === null || typeof s.basic_word !== "string") {
    throw new SessionFormatError("missing session block");
  }
  const state: SessionState = {
    basicWord: s.basic_word,
    history: (s.history ?? []).map((h): HistoryEntry =>
      h.panel === "explore"
        ? { panel: "explore", term: h.term, mode: h.mode, minStep: h.min_step, k: h.k }
        : { panel: "path", from: h.from, to: h.to, mode: h.mode, k: h.k, maxHops: h.max_hops }),
    pinned: [...(s.pinned ?? [])],
    chains: (s.chains ?? []).map((c) => [...c]),
    settings: {
      explore: s.settings
        ? { mode: s.settings.explore.mode, minStep: s.settings.explore.min_step, k: s.settings.explore.k }
        : { ...DEFAULT_EXPLORE },
      path: s.settings
        ? { mode: s.settings.path.mode, k: s.settings.path.k, maxHops: s.settings.path.max_hops }
        : { ...DEFAULT_PATH },
    },
  };
  const bad = chainErrors(state);
  if (bad !== null) throw new SessionFormatError(`invalid chain: ${bad}`);

  const warnings: string[] = [];
  if (liveNetwork && doc.network &&
      (doc.network.node_count !== liveNetwork.node_count ||
       doc.network.edge_count !== liveNetwork.edge_count)) {
    warnings.push(
      `session was exported from a ${doc.network.node_count}-node/` +
      `${doc.network.edge_count}-edge network; this one has ` +
      `${liveNetwork.node_count}/${liveNetwork.edge_count}`);
  }
  return { state, warnings };
}

export function serializeSession(state: SessionState, network: NetworkInfo | null): string {
  return JSON.stringify(exportSession(state, network), null, 2) + "\n";
}
