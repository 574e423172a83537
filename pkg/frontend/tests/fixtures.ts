/** Canned finished-session fixture: 12 nodes, 15 edges, plus snippets. */

import type { GraphJson, Snippet, WordScore } from "../src/api.js";

export const CANNED_GRAPH: GraphJson = {
  nodes: [
    { word: "cough", depth: 0, discovery_score: 1.0, occurrence_count: 1000 },
    { word: "fever", depth: 1, discovery_score: 0.83, occurrence_count: 640 },
    { word: "throat", depth: 1, discovery_score: 0.82, occurrence_count: 410 },
    { word: "congestion", depth: 1, discovery_score: 0.75, occurrence_count: 120 },
    { word: "headache", depth: 1, discovery_score: 0.71, occurrence_count: 300 },
    { word: "vomiting", depth: 1, discovery_score: 0.84, occurrence_count: 90 },
    { word: "coughing", depth: 2, discovery_score: 0.7, occurrence_count: 210 },
    { word: "asthma", depth: 2, discovery_score: 0.69, occurrence_count: 75 },
    { word: "nausea", depth: 2, discovery_score: 0.63, occurrence_count: 160 },
    { word: "##itis", depth: 2, discovery_score: 0.64, occurrence_count: 48 },
    { word: "##hea", depth: 3, discovery_score: 0.45, occurrence_count: 10 },
    { word: "chills", depth: 3, discovery_score: 0.52, occurrence_count: 33 },
  ],
  edges: [
    { from: "cough", to: "fever", weight: 0.83 },
    { from: "cough", to: "throat", weight: 0.82 },
    { from: "cough", to: "congestion", weight: 0.75 },
    { from: "cough", to: "headache", weight: 0.71 },
    { from: "cough", to: "vomiting", weight: 0.84 },
    { from: "fever", to: "coughing", weight: 0.7 },
    { from: "fever", to: "asthma", weight: 0.69 },
    { from: "fever", to: "nausea", weight: 0.63 },
    { from: "fever", to: "throat", weight: 0.66 },
    { from: "throat", to: "##itis", weight: 0.64 },
    { from: "congestion", to: "nausea", weight: 0.61 },
    { from: "headache", to: "##hea", weight: 0.45 },
    { from: "vomiting", to: "chills", weight: 0.52 },
    { from: "coughing", to: "chills", weight: 0.5 },
    { from: "asthma", to: "##itis", weight: 0.58 },
  ],
};

export const CANNED_RESULTS: WordScore[] = CANNED_GRAPH.nodes
  .filter((n) => n.depth > 0)
  .map((n) => ({
    word: n.word,
    score: n.discovery_score,
    surviving: n.occurrence_count,
    total: n.occurrence_count,
  }))
  .sort((a, b) => b.score - a.score);

export const CANNED_SNIPPETS: Record<string, Snippet[]> = {
  "##hea": [
    {
      doc_id: 17,
      text: "having diarrhea since monday and i am exhausted",
      token_char_start: 12,
      token_char_end: 15,
    },
  ],
  fever: [
    {
      doc_id: 3,
      text: "running a fever all night",
      token_char_start: 10,
      token_char_end: 15,
    },
    { doc_id: 9, text: "fever finally broke", token_char_start: 0, token_char_end: 5 },
  ],
};
