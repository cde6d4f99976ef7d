/**
 * View model + SVG rendering for the result canvas.
 *
 * Invariant (kept by construction): the rendered graph is exactly the
 * latest API response plus the session's pinned concepts — nothing is
 * accumulated across queries.
 *
 * Legend (this UI's own, the source figures don't define one): edge
 * width grows with combined strength / shrinks with path cost; numeric
 * edge labels show the value; hover an edge for the exact number.
 */

import type { ExploreHitDto, PathResultDto } from "./api.js";
import { forceLayout, type Point } from "./layout.js";

export type NodeRole = "query" | "hit" | "pinned";

export interface ViewNode {
  title: string;
  role: NodeRole;
  /** Small caption under the label, e.g. "d=0.404 · 1 hop". */
  meta: string;
}

export interface ViewEdge {
  a: number;
  b: number;
  label: string;
  tooltip: string;
  width: number;
}

export interface GraphView {
  kind: "empty" | "explore" | "path";
  nodes: ViewNode[];
  edges: ViewEdge[];
  selection: string | null;
}

export function emptyView(): GraphView {
  return { kind: "empty", nodes: [], edges: [], selection: null };
}

function addPinned(nodes: ViewNode[], pinned: string[]): void {
  const seen = new Set(nodes.map((n) => n.title));
  for (const title of pinned) {
    if (!seen.has(title)) {
      nodes.push({ title, role: "pinned", meta: "pinned" });
      seen.add(title);
    }
  }
}

/** Star view: query term in the middle, one satellite per hit. */
export function exploreView(term: string, hits: ExploreHitDto[], pinned: string[]): GraphView {
  const nodes: ViewNode[] = [{ title: term, role: "query", meta: "" }];
  const edges: ViewEdge[] = [];
  hits.forEach((hit, i) => {
    nodes.push({
      title: hit.concept.title,
      role: "hit",
      meta: `d=${hit.distance.toFixed(3)} · ${hit.hops} hop${hit.hops === 1 ? "" : "s"}`,
    });
    edges.push({
      a: 0,
      b: i + 1,
      label: hit.distance.toFixed(3),
      tooltip: `${hit.witness_path.join(" → ")}\ndistance ${hit.distance}`,
      width: Math.max(0.75, 4 - 3 * hit.distance),
    });
  });
  addPinned(nodes, pinned);
  return { kind: "explore", nodes, edges, selection: null };
}

/** Chain view: each result path is one left-to-right row. */
export function pathView(results: PathResultDto[], pinned: string[]): GraphView {
  const nodes: ViewNode[] = [];
  const edges: ViewEdge[] = [];
  const indexOf = new Map<string, number>();
  const intern = (title: string, meta: string): number => {
    const known = indexOf.get(title);
    if (known !== undefined) return known;
    nodes.push({ title, role: "hit", meta });
    indexOf.set(title, nodes.length - 1);
    return nodes.length - 1;
  };
  for (const path of results) {
    for (let i = 0; i < path.nodes.length; i++) {
      const at = intern(path.nodes[i], "");
      if (i > 0) {
        const prev = indexOf.get(path.nodes[i - 1])!;
        const s = path.strengths[i - 1];
        edges.push({
          a: prev,
          b: at,
          label: s.toFixed(3),
          tooltip: `${path.nodes[i - 1]} → ${path.nodes[i]}\nstrength ${s}`,
          width: Math.max(0.75, 4 * s),
        });
      }
    }
  }
  if (nodes.length > 0) nodes[0].role = "query";
  addPinned(nodes, pinned);
  return { kind: "path", nodes, edges, selection: null };
}

// --- rendering --------------------------------------------------------

const SVG_NS = "http://www.w3.org/2000/svg";

export interface RenderHandlers {
  onSelect?: (title: string) => void;
}

function svgEl<K extends keyof SVGElementTagNameMap>(tag: K): SVGElementTagNameMap[K] {
  return document.createElementNS(SVG_NS, tag);
}

function positions(view: GraphView, results: PathResultDto[] | null,
  width: number, height: number): Point[] {
  if (view.kind === "path" && results) {
    // Deterministic rows, one per path; pinned extras go on a last row.
    const pts: Point[] = view.nodes.map(() => ({ x: 0, y: 0 }));
    const placed = new Set<number>();
    const indexOf = new Map(view.nodes.map((n, i) => [n.title, i] as const));
    const rows = results.length;
    results.forEach((path, r) => {
      const y = (height * (r + 1)) / (rows + 2);
      path.nodes.forEach((title, c) => {
        const i = indexOf.get(title)!;
        if (!placed.has(i)) {
          pts[i] = { x: (width * (c + 1)) / (path.nodes.length + 1), y };
          placed.add(i);
        }
      });
    });
    let extra = 0;
    view.nodes.forEach((_, i) => {
      if (!placed.has(i)) {
        pts[i] = { x: width * 0.1 + 90 * extra, y: (height * (rows + 1)) / (rows + 2) };
        extra += 1;
      }
    });
    return pts;
  }
  return forceLayout(view.nodes.length, view.edges.map((e) => [e.a, e.b]), width, height);
}

export function renderGraph(view: GraphView, svg: SVGSVGElement,
  handlers: RenderHandlers = {}, results: PathResultDto[] | null = null): void {
  while (svg.firstChild) svg.removeChild(svg.firstChild);
  const width = Number(svg.getAttribute("width") ?? 800);
  const height = Number(svg.getAttribute("height") ?? 520);
  const pts = positions(view, results, width, height);

  for (const edge of view.edges) {
    const g = svgEl("g");
    g.setAttribute("class", "edge");
    const line = svgEl("line");
    line.setAttribute("x1", String(pts[edge.a].x));
    line.setAttribute("y1", String(pts[edge.a].y));
    line.setAttribute("x2", String(pts[edge.b].x));
    line.setAttribute("y2", String(pts[edge.b].y));
    line.setAttribute("stroke-width", edge.width.toFixed(2));
    const tip = svgEl("title");
    tip.textContent = edge.tooltip;
    line.appendChild(tip);
    g.appendChild(line);
    const label = svgEl("text");
    label.setAttribute("x", String((pts[edge.a].x + pts[edge.b].x) / 2));
    label.setAttribute("y", String((pts[edge.a].y + pts[edge.b].y) / 2 - 4));
    label.setAttribute("class", "edge-label");
    label.textContent = edge.label;
    g.appendChild(label);
    svg.appendChild(g);
  }

  view.nodes.forEach((node, i) => {
    const g = svgEl("g");
    g.setAttribute("class", `node ${node.role}${view.selection === node.title ? " selected" : ""}`);
    g.setAttribute("data-title", node.title);
    g.setAttribute("data-role", node.role);
    g.setAttribute("transform", `translate(${pts[i].x},${pts[i].y})`);
    const circle = svgEl("circle");
    circle.setAttribute("r", node.role === "query" ? "14" : "9");
    g.appendChild(circle);
    const label = svgEl("text");
    label.setAttribute("y", "-14");
    label.setAttribute("class", "node-label");
    label.textContent = node.title;
    g.appendChild(label);
    if (node.meta) {
      const meta = svgEl("text");
      meta.setAttribute("y", "24");
      meta.setAttribute("class", "node-meta");
      meta.textContent = node.meta;
      g.appendChild(meta);
    }
    g.addEventListener("click", () => handlers.onSelect?.(node.title));
    svg.appendChild(g);
  });
}
