/**
 * The two query panels. Each keeps its last successful response so the
 * canvas can be rebuilt when pins change, and each allows at most one
 * in-flight request — issuing a new query aborts the previous one
 * (latest wins).
 */

import { ApiClient, ApiError, ServiceDownError, type ExploreHitDto, type ExploreMode, type PathMode, type PathResultDto } from "./api.js";
import { emptyView, exploreView, pathView, renderGraph, type GraphView } from "./graphview.js";
import { pinConcept, recordHistory, type SessionState } from "./session.js";

export interface PanelContext {
  client: ApiClient;
  svg: SVGSVGElement;
  /** Non-blocking banner for transport/server failures. */
  banner: HTMLElement;
  session: SessionState;
  /** Fires after anything that changes SessionState (board re-render). */
  onSessionChange?: () => void;
}

function showBanner(el: HTMLElement, message: string): void {
  el.textContent = message;
  el.hidden = false;
}

function clearBanner(el: HTMLElement): void {
  el.textContent = "";
  el.hidden = true;
}

function isAbort(err: unknown): boolean {
  return err instanceof DOMException && err.name === "AbortError";
}

export class ExplorePanel {
  view: GraphView = emptyView();
  private inflight: AbortController | null = null;
  private lastTerm = "";
  private lastHits: ExploreHitDto[] = [];

  constructor(private readonly ctx: PanelContext,
    private readonly suggestBox: HTMLElement,
    private readonly actionsBox: HTMLElement) {}

  async run(term: string, mode: ExploreMode, minStep: number, k: number): Promise<void> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    this.suggestBox.replaceChildren();
    try {
      const resp = await this.ctx.client.explore({ term, mode, minStep, k }, controller.signal);
      if (this.inflight !== controller) return; // superseded meanwhile
      clearBanner(this.ctx.banner);
      this.lastTerm = term;
      this.lastHits = resp.hits;
      this.ctx.session.settings.explore = { mode, minStep, k };
      recordHistory(this.ctx.session, { panel: "explore", term, mode, minStep, k });
      this.redraw();
      this.ctx.onSessionChange?.();
    } catch (err) {
      if (isAbort(err) || this.inflight !== controller) return;
      if (err instanceof ApiError && err.status === 404) {
        clearBanner(this.ctx.banner);
        this.showSuggestions(err, mode, minStep, k);
      } else if (err instanceof ServiceDownError) {
        showBanner(this.ctx.banner, "service unreachable — query not run, session kept");
      } else {
        showBanner(this.ctx.banner, (err as Error).message);
      }
    }
  }

  /** Rebuild the canvas from the last response (pins may have changed). */
  redraw(): void {
    this.view = exploreView(this.lastTerm, this.lastHits, this.ctx.session.pinned);
    renderGraph(this.view, this.ctx.svg, { onSelect: (t) => this.select(t) });
  }

  private showSuggestions(err: ApiError, mode: ExploreMode, minStep: number, k: number): void {
    const label = document.createElement("p");
    label.textContent = err.suggestions.length > 0 ? "unknown concept — did you mean:" : err.message;
    this.suggestBox.appendChild(label);
    const list = document.createElement("ul");
    for (const title of err.suggestions) {
      const item = document.createElement("li");
      const link = document.createElement("button");
      link.type = "button";
      link.className = "suggestion";
      link.textContent = title;
      link.addEventListener("click", () => void this.run(title, mode, minStep, k));
      item.appendChild(link);
      list.appendChild(item);
    }
    this.suggestBox.appendChild(list);
  }

  private select(title: string): void {
    this.view.selection = title;
    renderGraph(this.view, this.ctx.svg, { onSelect: (t) => this.select(t) });
    this.actionsBox.replaceChildren();
    const caption = document.createElement("span");
    caption.textContent = title;
    this.actionsBox.appendChild(caption);

    const exploreBtn = document.createElement("button");
    exploreBtn.type = "button";
    exploreBtn.textContent = "explore from here";
    exploreBtn.addEventListener("click", () => {
      const s = this.ctx.session.settings.explore;
      void this.run(title, s.mode, s.minStep, s.k);
    });
    this.actionsBox.appendChild(exploreBtn);

    const pinBtn = document.createElement("button");
    pinBtn.type = "button";
    pinBtn.textContent = "pin";
    pinBtn.addEventListener("click", () => {
      pinConcept(this.ctx.session, title);
      this.redraw();
      this.ctx.onSessionChange?.();
    });
    this.actionsBox.appendChild(pinBtn);
  }
}

export class PathPanel {
  view: GraphView = emptyView();
  private inflight: AbortController | null = null;
  private lastResults: PathResultDto[] = [];

  constructor(private readonly ctx: PanelContext,
    private readonly resultsBox: HTMLElement,
    private readonly onAddPath: (nodes: string[]) => void) {}

  async run(from: string, to: string, mode: PathMode, k: number, maxHops: number): Promise<void> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    try {
      const resp = await this.ctx.client.searchPath({ from, to, mode, k, maxHops }, controller.signal);
      if (this.inflight !== controller) return;
      clearBanner(this.ctx.banner);
      this.lastResults = resp.paths;
      this.ctx.session.settings.path = { mode, k, maxHops };
      recordHistory(this.ctx.session, { panel: "path", from, to, mode, k, maxHops });
      this.redraw();
      this.ctx.onSessionChange?.();
    } catch (err) {
      if (isAbort(err) || this.inflight !== controller) return;
      if (err instanceof ApiError) {
        showBanner(this.ctx.banner, err.message);
      } else if (err instanceof ServiceDownError) {
        showBanner(this.ctx.banner, "service unreachable — query not run, session kept");
      } else {
        showBanner(this.ctx.banner, (err as Error).message);
      }
    }
  }

  redraw(): void {
    this.view = pathView(this.lastResults, this.ctx.session.pinned);
    renderGraph(this.view, this.ctx.svg, {}, this.lastResults);
    this.resultsBox.replaceChildren();
    if (this.lastResults.length === 0) {
      const notice = document.createElement("p");
      notice.className = "notice";
      notice.textContent = "no path within max hops";
      this.resultsBox.appendChild(notice);
      return;
    }
    const list = document.createElement("ol");
    for (const path of this.lastResults) {
      const item = document.createElement("li");
      item.className = "path-result";
      const text = document.createElement("span");
      text.textContent = `${path.nodes.join(" → ")}  (score ${path.aggregate.toFixed(4)})`;
      item.appendChild(text);
      const add = document.createElement("button");
      add.type = "button";
      add.textContent = "add to inspiration link";
      add.addEventListener("click", () => this.onAddPath(path.nodes));
      item.appendChild(add);
      list.appendChild(item);
    }
    this.resultsBox.appendChild(list);
  }
}
