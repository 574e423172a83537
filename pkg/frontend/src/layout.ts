/** Deterministic force-directed layout with depth-banded initialization:
 * the seed sits at the center and each depth starts on its own ring, so the
 * radial structure of the expansion survives the simulation. No RNG -- the
 * same graph always lays out identically. */

import type { GraphJson } from "./api.js";

export interface Point {
  x: number;
  y: number;
}

function hash01(text: string): number {
  let h = 2166136261;
  for (let i = 0; i < text.length; i++) {
    h ^= text.charCodeAt(i);
    h = Math.imul(h, 16777619);
  }
  return (h >>> 0) / 4294967296;
}

export function initialPositions(graph: GraphJson, width: number,
                                 height: number): Map<string, Point> {
  const byDepth = new Map<number, string[]>();
  for (const node of graph.nodes) {
    const bucket = byDepth.get(node.depth) ?? [];
    bucket.push(node.word);
    byDepth.set(node.depth, bucket);
  }
  const maxDepth = Math.max(0, ...byDepth.keys());
  const ringGap = Math.min(width, height) / (2 * (maxDepth + 1.5));
  const cx = width / 2;
  const cy = height / 2;
  const positions = new Map<string, Point>();
  for (const [depth, words] of byDepth) {
    words.forEach((word, index) => {
      if (depth === 0 && words.length === 1) {
        positions.set(word, { x: cx, y: cy });
        return;
      }
      const radius = Math.max(depth, 0.5) * ringGap;
      const angle = (2 * Math.PI * index) / words.length
        + 2 * Math.PI * hash01(word) * 0.05;
      positions.set(word, {
        x: cx + radius * Math.cos(angle),
        y: cy + radius * Math.sin(angle),
      });
    });
  }
  return positions;
}

export function runLayout(graph: GraphJson, width: number, height: number,
                          iterations = 120): Map<string, Point> {
  const positions = initialPositions(graph, width, height);
  const words = graph.nodes.map((n) => n.word);
  if (words.length <= 1) return positions;

  const idealEdge = Math.min(width, height) / 6;
  const repulsion = idealEdge * idealEdge;
  const cx = width / 2;
  const cy = height / 2;
  const pinned = graph.nodes.find((n) => n.depth === 0)?.word;

  for (let step = 0; step < iterations; step++) {
    const cooling = 1 - step / iterations;
    const force = new Map<string, Point>(words.map((w) => [w, { x: 0, y: 0 }]));

    for (let i = 0; i < words.length; i++) {
      for (let j = i + 1; j < words.length; j++) {
        const a = positions.get(words[i])!;
        const b = positions.get(words[j])!;
        let dx = a.x - b.x;
        let dy = a.y - b.y;
        let d2 = dx * dx + dy * dy;
        if (d2 < 1e-6) {
          // deterministic nudge for coincident points
          dx = 0.01 + hash01(words[i]) * 0.01;
          dy = 0.01 + hash01(words[j]) * 0.01;
          d2 = dx * dx + dy * dy;
        }
        const push = repulsion / d2;
        const fa = force.get(words[i])!;
        const fb = force.get(words[j])!;
        fa.x += dx * push * 0.01;
        fa.y += dy * push * 0.01;
        fb.x -= dx * push * 0.01;
        fb.y -= dy * push * 0.01;
      }
    }
    for (const edge of graph.edges) {
      const a = positions.get(edge.from);
      const b = positions.get(edge.to);
      if (!a || !b) continue;
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const dist = Math.max(1e-3, Math.hypot(dx, dy));
      const stretch = (dist - idealEdge) / dist;
      const fa = force.get(edge.from)!;
      const fb = force.get(edge.to)!;
      fa.x += dx * stretch * 0.05;
      fa.y += dy * stretch * 0.05;
      fb.x -= dx * stretch * 0.05;
      fb.y -= dy * stretch * 0.05;
    }
    for (const word of words) {
      if (word === pinned) continue;  // keep the seed centered
      const p = positions.get(word)!;
      const f = force.get(word)!;
      f.x += (cx - p.x) * 0.002;
      f.y += (cy - p.y) * 0.002;
      p.x += f.x * cooling;
      p.y += f.y * cooling;
      p.x = Math.min(width - 20, Math.max(20, p.x));
      p.y = Math.min(height - 20, Math.max(20, p.y));
    }
  }
  return positions;
}
