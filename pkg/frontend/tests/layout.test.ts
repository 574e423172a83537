import { describe, expect, it } from "vitest";

import { initialPositions, runLayout } from "../src/layout.js";
import { CANNED_GRAPH } from "./fixtures.js";

describe("layout", () => {
  it("starts depth-banded with the seed centered", () => {
    const positions = initialPositions(CANNED_GRAPH, 900, 600);
    const center = { x: 450, y: 300 };
    const dist = (word: string) => {
      const p = positions.get(word)!;
      return Math.hypot(p.x - center.x, p.y - center.y);
    };
    expect(dist("cough")).toBe(0);
    for (const node of CANNED_GRAPH.nodes) {
      if (node.depth === 1) {
        expect(dist(node.word)).toBeLessThan(dist("##hea") + 1e-9);
      }
    }
  });

  it("is deterministic and keeps every node inside the viewport", () => {
    const a = runLayout(CANNED_GRAPH, 900, 600);
    const b = runLayout(CANNED_GRAPH, 900, 600);
    expect([...a.entries()]).toEqual([...b.entries()]);
    for (const point of a.values()) {
      expect(point.x).toBeGreaterThanOrEqual(0);
      expect(point.x).toBeLessThanOrEqual(900);
      expect(point.y).toBeGreaterThanOrEqual(0);
      expect(point.y).toBeLessThanOrEqual(600);
    }
  });

  it("separates coincident nodes", () => {
    const layout = runLayout(CANNED_GRAPH, 900, 600);
    const points = [...layout.values()];
    for (let i = 0; i < points.length; i++) {
      for (let j = i + 1; j < points.length; j++) {
        const d = Math.hypot(points[i].x - points[j].x, points[i].y - points[j].y);
        expect(d).toBeGreaterThan(1);
      }
    }
  });
});
