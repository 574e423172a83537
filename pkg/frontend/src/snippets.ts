/** Snippet highlighting from server-provided character offsets. */

import type { Snippet } from "./api.js";

export interface HighlightParts {
  before: string;
  match: string | null;
  after: string;
}

export function splitHighlight(snippet: Snippet): HighlightParts {
  const { text, token_char_start: start, token_char_end: end } = snippet;
  if (start === null || end === null || start < 0 || end > text.length || start >= end) {
    return { before: text, match: null, after: "" };
  }
  return {
    before: text.slice(0, start),
    match: text.slice(start, end),
    after: text.slice(end),
  };
}
