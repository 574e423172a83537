import { describe, expect, it } from "vitest";

import {
  acceptedWords,
  acknowledgeLabel,
  applyOptimisticLabel,
  canReseed,
  childState,
  colorForScore,
  effectiveLabel,
  initialViewState,
  intensityForScore,
  radiusScale,
  reconcileLabels,
} from "../src/model.js";

describe("scales", () => {
  it("radius is strictly monotone in occurrence count", () => {
    const radius = radiusScale([10, 1000]);
    expect(radius(1000)).toBeGreaterThan(radius(10));
    expect(radius(500)).toBeGreaterThan(radius(10));
    expect(radius(1000)).toBeGreaterThan(radius(500));
  });

  it("radius handles a uniform-count graph", () => {
    const radius = radiusScale([7, 7, 7]);
    expect(radius(7)).toBeGreaterThan(0);
  });

  it("color intensity is monotone in similarity", () => {
    expect(intensityForScore(0.9)).toBeGreaterThan(intensityForScore(0.5));
    expect(intensityForScore(0.5)).toBeGreaterThan(intensityForScore(0.1));
    expect(intensityForScore(-5)).toBe(intensityForScore(0));
    expect(colorForScore(0.9)).not.toBe(colorForScore(0.2));
  });
});

describe("label state", () => {
  it("optimistic label shows immediately and survives acknowledgment", () => {
    let state = initialViewState("s1");
    state = applyOptimisticLabel(state, "fever", "accepted");
    expect(effectiveLabel(state, "fever")).toBe("accepted");
    state = acknowledgeLabel(state, "fever", "accepted");
    expect(effectiveLabel(state, "fever")).toBe("accepted");
    expect(state.pending).toEqual({});
    expect(state.labels).toEqual({ fever: "accepted" });
  });

  it("reconcile adopts server truth and clears acked pendings", () => {
    let state = initialViewState("s1");
    state = applyOptimisticLabel(state, "fever", "accepted");
    state = applyOptimisticLabel(state, "nausea", "rejected");
    state = reconcileLabels(state, { fever: "accepted", throat: "rejected" });
    expect(effectiveLabel(state, "fever")).toBe("accepted");
    expect(effectiveLabel(state, "throat")).toBe("rejected");
    expect(effectiveLabel(state, "nausea")).toBe("rejected"); // still pending
    expect(effectiveLabel(state, "chills")).toBe("unreviewed");
  });

  it("unreviewed clears a stored label", () => {
    let state = initialViewState("s1");
    state = acknowledgeLabel(state, "fever", "accepted");
    state = acknowledgeLabel(state, "fever", "unreviewed");
    expect(effectiveLabel(state, "fever")).toBe("unreviewed");
    expect(state.labels).toEqual({});
  });

  it("reseed gating follows accepted words", () => {
    let state = initialViewState("s1");
    expect(canReseed(state)).toBe(false);
    state = applyOptimisticLabel(state, "fever", "accepted");
    state = applyOptimisticLabel(state, "nausea", "accepted");
    expect(acceptedWords(state)).toEqual(["fever", "nausea"]);
    expect(canReseed(state)).toBe(true);
    state = applyOptimisticLabel(state, "fever", "rejected");
    expect(acceptedWords(state)).toEqual(["nausea"]);
  });
});

describe("lineage", () => {
  it("child state extends the breadcrumb and keeps the slider value", () => {
    let state = initialViewState("root", 0.3);
    state = { ...state, k: 0.7 };
    const child = childState(state, "child");
    expect(child.lineage).toEqual(["root", "child"]);
    expect(child.sessionId).toBe("child");
    expect(child.k).toBe(0.7);
    expect(child.labels).toEqual({});
  });
});
