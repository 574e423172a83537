/** Pure scene construction: graph JSON in, draw specs out. Keeping this
 * DOM-free makes the rendering contract unit-testable. */

import type { GraphJson } from "./api.js";
import { runLayout } from "./layout.js";
import { colorForScore, radiusScale } from "./model.js";

export interface NodeSpec {
  word: string;
  x: number;
  y: number;
  r: number;
  fill: string;
  depth: number;
  title: string;
}

export interface EdgeSpec {
  from: string;
  to: string;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  width: number;
  title: string;
}

export interface Scene {
  width: number;
  height: number;
  nodes: NodeSpec[];
  edges: EdgeSpec[];
}

export function buildScene(graph: GraphJson, width = 960, height = 640): Scene {
  const positions = runLayout(graph, width, height);
  const radius = radiusScale(graph.nodes.map((n) => n.occurrence_count));

  const nodes: NodeSpec[] = graph.nodes.map((node) => {
    const p = positions.get(node.word)!;
    return {
      word: node.word,
      x: p.x,
      y: p.y,
      r: radius(node.occurrence_count),
      fill: colorForScore(node.discovery_score),
      depth: node.depth,
      title: `${node.word} - ${node.occurrence_count} occurrences, ` +
             `similarity ${node.discovery_score.toFixed(3)}, depth ${node.depth}`,
    };
  });

  const edges: EdgeSpec[] = [];
  for (const edge of graph.edges) {
    const a = positions.get(edge.from);
    const b = positions.get(edge.to);
    if (!a || !b) continue;
    edges.push({
      from: edge.from,
      to: edge.to,
      x1: a.x,
      y1: a.y,
      x2: b.x,
      y2: b.y,
      width: 0.5 + 3.5 * Math.max(0, Math.min(1, edge.weight)),
      title: `${edge.from} -> ${edge.to}: ${edge.weight.toFixed(3)}`,
    });
  }
  return { width, height, nodes, edges };
}
