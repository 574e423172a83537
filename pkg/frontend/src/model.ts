/** View state and presentation scales. Labels are mirrored optimistically
 * and reconciled against server acknowledgments; mutations are idempotent
 * re-submissions so retrying is always safe. */

import type { Label } from "./api.js";

export interface ViewState {
  sessionId: string;
  selectedWord: string | null;
  /** exploration-vs-exploitation slider value used for the next reseed */
  k: number;
  /** server-acknowledged labels */
  labels: Record<string, Label>;
  /** optimistic labels awaiting acknowledgment */
  pending: Record<string, Label>;
  /** session ids from the root session to the current one */
  lineage: string[];
}

export function initialViewState(sessionId: string, k = 0.3,
                                 lineage?: string[]): ViewState {
  return {
    sessionId,
    selectedWord: null,
    k,
    labels: {},
    pending: {},
    lineage: lineage ?? [sessionId],
  };
}

const MIN_RADIUS = 8;
const MAX_RADIUS = 28;

/** Node radius grows with the square root of the occurrence count
 * (strictly monotone over the graph's count range). */
export function radiusScale(counts: number[]): (count: number) => number {
  const lo = Math.sqrt(Math.max(1, Math.min(...counts)));
  const hi = Math.sqrt(Math.max(1, Math.max(...counts)));
  return (count) => {
    if (hi === lo) return (MIN_RADIUS + MAX_RADIUS) / 2;
    const t = (Math.sqrt(Math.max(1, count)) - lo) / (hi - lo);
    return MIN_RADIUS + t * (MAX_RADIUS - MIN_RADIUS);
  };
}

/** Color intensity in [0, 1], strictly monotone in the similarity score. */
export function intensityForScore(score: number): number {
  const clamped = Math.max(0, Math.min(1, score));
  return 0.15 + 0.85 * clamped;
}

export function colorForScore(score: number): string {
  // darker blue = more similar
  const lightness = 88 - 55 * intensityForScore(score);
  return `hsl(210 70% ${lightness.toFixed(1)}%)`;
}

export function applyOptimisticLabel(state: ViewState, word: string,
                                     label: Label): ViewState {
  return { ...state, pending: { ...state.pending, [word]: label } };
}

export function acknowledgeLabel(state: ViewState, word: string,
                                 label: Label): ViewState {
  const pending = { ...state.pending };
  if (pending[word] === label) delete pending[word];
  const labels = { ...state.labels };
  if (label === "unreviewed") delete labels[word];
  else labels[word] = label;
  return { ...state, labels, pending };
}

/** Server truth wins; optimistic entries the server already knows drop out. */
export function reconcileLabels(state: ViewState,
                                serverLabels: Record<string, Label>): ViewState {
  const pending = { ...state.pending };
  for (const [word, label] of Object.entries(serverLabels)) {
    if (pending[word] === label) delete pending[word];
  }
  return { ...state, labels: { ...serverLabels }, pending };
}

export function effectiveLabel(state: ViewState, word: string): Label {
  return state.pending[word] ?? state.labels[word] ?? "unreviewed";
}

export function acceptedWords(state: ViewState): string[] {
  const words = new Set<string>();
  for (const [word, label] of Object.entries(state.labels)) {
    if (label === "accepted") words.add(word);
  }
  for (const [word, label] of Object.entries(state.pending)) {
    if (label === "accepted") words.add(word);
    else words.delete(word);
  }
  return [...words].sort();
}

export function canReseed(state: ViewState): boolean {
  return acceptedWords(state).length > 0;
}

/** State for the reseeded child session; the breadcrumb grows by one. */
export function childState(state: ViewState, newSessionId: string): ViewState {
  return initialViewState(newSessionId, state.k,
                          [...state.lineage, newSessionId]);
}
