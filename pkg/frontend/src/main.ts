/** Page bootstrap: wires forms, canvas, board, and session lifecycle. */

import { ApiClient, type ExploreMode, type PathMode } from "./api.js";
import { downloadSession, renderBoard } from "./board.js";
import { ExplorePanel, PathPanel, type PanelContext } from "./panels.js";
import { addPathChain, createSession, importSession, type NetworkInfo, type SessionState } from "./session.js";

export function setupApp(root: Document): void {
  const $ = <T extends HTMLElement>(id: string): T => {
    const el = root.getElementById(id);
    if (!el) throw new Error(`missing #${id}`);
    return el as T;
  };

  const client = new ApiClient("");
  const banner = $("banner");
  const notice = $("notice");
  const svg = $("canvas") as unknown as SVGSVGElement;
  let network: NetworkInfo | null = null;
  let session: SessionState | null = null;
  let active: { redraw(): void } | null = null;

  const showNotice = (message: string): void => {
    notice.textContent = message;
    notice.hidden = message === "";
    if (message) setTimeout(() => { notice.hidden = true; }, 6000);
  };

  const onSessionChange = (): void => {
    if (!session) return;
    renderBoard(session, $("board"), { onChange: onSessionChange, onNotice: showNotice });
    active?.redraw();
  };

  const ctx = (): PanelContext => ({
    client, svg, banner,
    session: session!,
    onSessionChange,
  });

  let explorePanel: ExplorePanel | null = null;
  let pathPanel: PathPanel | null = null;

  const startSession = (state: SessionState): void => {
    session = state;
    explorePanel = new ExplorePanel(ctx(), $("explore-suggestions"), $("node-actions"));
    pathPanel = new PathPanel(ctx(), $("path-results"), (nodes) => {
      const update = addPathChain(session!, nodes);
      if (!update.ok) showNotice(update.notice);
      onSessionChange();
    });
    ($("explore-term") as HTMLInputElement).value = state.basicWord;
    ($("path-from") as HTMLInputElement).value = state.basicWord;
    $("start").hidden = true;
    $("workspace").hidden = false;
    onSessionChange();
  };

  void client.health().then((h) => {
    network = { node_count: h.node_count, edge_count: h.edge_count };
    $("stats").textContent = `${h.node_count} concepts · ${h.edge_count} links · ${h.backend} backend`;
  }).catch(() => {
    banner.textContent = "service unreachable — start `wikilink serve` and reload";
    banner.hidden = false;
  });

  $("start-form").addEventListener("submit", (ev) => {
    ev.preventDefault();
    const word = ($("basic-word") as HTMLInputElement).value;
    try {
      startSession(createSession(word));
    } catch (err) {
      showNotice((err as Error).message);
    }
  });

  $("explore-form").addEventListener("submit", (ev) => {
    ev.preventDefault();
    if (!explorePanel) return;
    active = explorePanel;
    void explorePanel.run(
      ($("explore-term") as HTMLInputElement).value,
      ($("explore-mode") as HTMLSelectElement).value as ExploreMode,
      Number(($("explore-min-step") as HTMLInputElement).value),
      Number(($("explore-k") as HTMLInputElement).value));
  });

  $("path-form").addEventListener("submit", (ev) => {
    ev.preventDefault();
    if (!pathPanel) return;
    active = pathPanel;
    void pathPanel.run(
      ($("path-from") as HTMLInputElement).value,
      ($("path-to") as HTMLInputElement).value,
      ($("path-mode") as HTMLSelectElement).value as PathMode,
      Number(($("path-k") as HTMLInputElement).value),
      Number(($("path-max-hops") as HTMLInputElement).value));
  });

  $("export-session").addEventListener("click", () => {
    if (session) downloadSession(session, network);
  });

  $("import-session").addEventListener("change", async (ev) => {
    const input = ev.target as HTMLInputElement;
    const file = input.files?.[0];
    if (!file) return;
    try {
      const imported = importSession(await file.text(), network ?? undefined);
      for (const warning of imported.warnings) showNotice(warning);
      startSession(imported.state);
    } catch (err) {
      showNotice((err as Error).message);
    } finally {
      input.value = "";
    }
  });
}

// Module scripts run after parsing, so the ids are present by now; the
// guard keeps bare imports (tests) from touching a half-built DOM.
if (typeof document !== "undefined" && document.getElementById("start-form")) {
  setupApp(document);
}
