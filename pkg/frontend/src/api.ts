/**
 * Typed client for the wikilink HTTP JSON API (see docs/api.md in the
 * repository root). All endpoints are GET and side-effect free; the
 * server fixes weight parameters per process, so the client never
 * sends them.
 */

export type ExploreMode = "explore_general" | "explore_specific";
export type PathMode = "path_basic" | "path_professional";

export interface ConceptDto {
  id: number;
  title: string;
  categories: string[];
}

export interface ExploreHitDto {
  concept: ConceptDto;
  distance: number;
  hops: number;
  witness_path: string[];
}

export interface ExploreResponse {
  schema_version: number;
  hits: ExploreHitDto[];
}

export interface PathResultDto {
  nodes: string[];
  strengths: number[];
  aggregate: number;
  hops: number;
}

export interface PathResponse {
  schema_version: number;
  paths: PathResultDto[];
}

export interface NeighborDto {
  concept: ConceptDto;
  raw_weight: number;
  semantic_weight: number;
  strength: number;
}

export interface ConceptResponse {
  schema_version: number;
  concept: ConceptDto;
  neighbors: NeighborDto[];
}

export interface HealthResponse {
  schema_version: number;
  status: string;
  node_count: number;
  edge_count: number;
  backend: string;
}

export interface ExploreParams {
  term: string;
  mode: ExploreMode;
  minStep: number;
  k: number;
}

export interface PathParams {
  from: string;
  to: string;
  mode: PathMode;
  k: number;
  maxHops: number;
}

/** Server answered with an error payload (4xx/5xx). */
export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly suggestions: string[];

  constructor(status: number, code: string, message: string, suggestions: string[] = []) {
    super(message);
    this.name = "ApiError";
    this.status = status;
    this.code = code;
    this.suggestions = suggestions;
  }
}

/** Could not reach the server at all (network failure, not an API answer). */
export class ServiceDownError extends Error {
  constructor(cause: unknown) {
    super("wikilink service unreachable");
    this.name = "ServiceDownError";
    this.cause = cause;
  }
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  // The server accepts short mode names (docs/api.md); the UI keeps the
  // canonical ones everywhere else.
  private static shortMode(mode: ExploreMode | PathMode): string {
    return mode.replace(/^(explore|path)_/, "");
  }

  private async get<T>(path: string, params: Record<string, string>, signal?: AbortSignal): Promise<T> {
    const qs = new URLSearchParams(params).toString();
    const url = `${this.base}${path}${qs ? "?" + qs : ""}`;
    let resp: Response;
    try {
      resp = await fetch(url, { signal });
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") throw err;
      throw new ServiceDownError(err);
    }
    const body = await resp.json();
    if (!resp.ok) {
      throw new ApiError(resp.status, body.code ?? "internal",
        body.error ?? `HTTP ${resp.status}`, body.suggestions ?? []);
    }
    return body as T;
  }

  explore(p: ExploreParams, signal?: AbortSignal): Promise<ExploreResponse> {
    return this.get<ExploreResponse>("/api/explore", {
      term: p.term,
      mode: ApiClient.shortMode(p.mode),
      min_step: String(p.minStep),
      k: String(p.k),
    }, signal);
  }

  searchPath(p: PathParams, signal?: AbortSignal): Promise<PathResponse> {
    return this.get<PathResponse>("/api/path", {
      from: p.from,
      to: p.to,
      mode: ApiClient.shortMode(p.mode),
      k: String(p.k),
      max_hops: String(p.maxHops),
    }, signal);
  }

  concept(title: string, signal?: AbortSignal): Promise<ConceptResponse> {
    return this.get<ConceptResponse>(`/api/concept/${encodeURIComponent(title)}`, {}, signal);
  }

  health(signal?: AbortSignal): Promise<HealthResponse> {
    return this.get<HealthResponse>("/api/health", {}, signal);
  }
}
