/**
 * Tiny deterministic force-directed layout.
 *
 * Seeded initial positions and a fixed iteration budget make the same
 * graph render identically on every load, so screenshots and DOM
 * assertions are reproducible. No wall-clock, no Math.random.
 */

export interface Point {
  x: number;
  y: number;
}

export const ITERATIONS = 150;

/** Park–Miller LCG on [0, 1); good enough to scatter initial positions. */
export function lcg(seed: number): () => number {
  let state = seed % 2147483647;
  if (state <= 0) state += 2147483646;
  return () => {
    state = (state * 16807) % 2147483647;
    return (state - 1) / 2147483646;
  };
}

export function forceLayout(nodeCount: number, edges: Array<[number, number]>,
  width: number, height: number, seed = 42): Point[] {
  const n = nodeCount;
  const pos: Point[] = [];
  if (n === 0) return pos;

  const rand = lcg(seed);
  const cx = width / 2;
  const cy = height / 2;
  // Jittered ring start: spreads nodes before forces take over and keeps
  // the layout rotation stable across runs.
  for (let i = 0; i < n; i++) {
    const angle = (2 * Math.PI * i) / n + 0.1 * rand();
    const radius = Math.min(width, height) * (0.25 + 0.1 * rand());
    pos.push({ x: cx + radius * Math.cos(angle), y: cy + radius * Math.sin(angle) });
  }
  if (n === 1) {
    pos[0] = { x: cx, y: cy };
    return pos;
  }

  const area = width * height;
  const ideal = Math.sqrt(area / n) * 0.7; // preferred edge length
  const disp: Point[] = pos.map(() => ({ x: 0, y: 0 }));

  for (let iter = 0; iter < ITERATIONS; iter++) {
    const temperature = 0.1 * Math.min(width, height) * (1 - iter / ITERATIONS);
    for (let i = 0; i < n; i++) {
      disp[i].x = 0;
      disp[i].y = 0;
    }
    // Repulsion between every pair.
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        let dx = pos[i].x - pos[j].x;
        let dy = pos[i].y - pos[j].y;
        let d = Math.hypot(dx, dy);
        if (d < 1e-9) {
          // Deterministic nudge for coincident nodes.
          dx = 0.01 * (i - j);
          dy = 0.01;
          d = Math.hypot(dx, dy);
        }
        const force = (ideal * ideal) / d;
        disp[i].x += (dx / d) * force;
        disp[i].y += (dy / d) * force;
        disp[j].x -= (dx / d) * force;
        disp[j].y -= (dy / d) * force;
      }
    }
    // Spring along edges.
    for (const [a, b] of edges) {
      const dx = pos[a].x - pos[b].x;
      const dy = pos[a].y - pos[b].y;
      const d = Math.hypot(dx, dy) || 1e-9;
      const force = (d * d) / ideal;
      disp[a].x -= (dx / d) * force;
      disp[a].y -= (dy / d) * force;
      disp[b].x += (dx / d) * force;
      disp[b].y += (dy / d) * force;
    }
    // Mild pull to the canvas center so disconnected pieces stay on screen.
    for (let i = 0; i < n; i++) {
      disp[i].x += (cx - pos[i].x) * 0.05;
      disp[i].y += (cy - pos[i].y) * 0.05;
    }
    for (let i = 0; i < n; i++) {
      const d = Math.hypot(disp[i].x, disp[i].y);
      if (d > 1e-9) {
        const step = Math.min(d, temperature);
        pos[i].x += (disp[i].x / d) * step;
        pos[i].y += (disp[i].y / d) * step;
      }
      const margin = 20;
      pos[i].x = Math.max(margin, Math.min(width - margin, pos[i].x));
      pos[i].y = Math.max(margin, Math.min(height - margin, pos[i].y));
    }
  }
  return pos;
}
