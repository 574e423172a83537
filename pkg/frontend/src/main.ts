/** App wiring: session view, snippet validation panel, accept/reject,
 * k slider, reseed. Session lineage is kept client-side per tab. */

import { ApiClient, ApiError } from "./api.js";
import type { GraphJson, Label, WordScore } from "./api.js";
import {
  ViewState,
  acceptedWords,
  acknowledgeLabel,
  applyOptimisticLabel,
  canReseed,
  childState,
  effectiveLabel,
  initialViewState,
  reconcileLabels,
} from "./model.js";
import { buildScene } from "./scene.js";
import { renderScene, renderSnippets } from "./dom.js";

const api = new ApiClient("");

const el = {
  graph: document.getElementById("graph")!,
  results: document.getElementById("results")!,
  snippets: document.getElementById("snippets")!,
  word: document.getElementById("selected-word")!,
  accept: document.getElementById("accept") as HTMLButtonElement,
  reject: document.getElementById("reject") as HTMLButtonElement,
  reseed: document.getElementById("reseed") as HTMLButtonElement,
  slider: document.getElementById("k-slider") as HTMLInputElement,
  sliderValue: document.getElementById("k-value")!,
  breadcrumb: document.getElementById("breadcrumb")!,
  status: document.getElementById("status")!,
};

let state: ViewState;
let graph: GraphJson = { nodes: [], edges: [] };
let results: WordScore[] = [];

function lineageKey(sessionId: string): string[] {
  try {
    const stored = sessionStorage.getItem(`lineage:${sessionId}`);
    if (stored) return JSON.parse(stored);
  } catch {
    /* storage unavailable */
  }
  return [sessionId];
}

function storeLineage(viewState: ViewState): void {
  try {
    sessionStorage.setItem(`lineage:${viewState.sessionId}`,
                           JSON.stringify(viewState.lineage));
  } catch {
    /* storage unavailable */
  }
}

function setStatus(message: string): void {
  el.status.textContent = message;
}

function drawGraph(): void {
  renderScene(el.graph, buildScene(graph), selectWord, state.selectedWord,
              (word) => effectiveLabel(state, word));
}

function drawBreadcrumb(): void {
  el.breadcrumb.innerHTML = "";
  state.lineage.forEach((id, index) => {
    if (index > 0) el.breadcrumb.appendChild(document.createTextNode(" → "));
    const link = document.createElement("a");
    link.href = `?session=${id}`;
    link.textContent = index === state.lineage.length - 1
      ? `session ${id.slice(0, 8)}`
      : id.slice(0, 8);
    el.breadcrumb.appendChild(link);
  });
}

function drawResults(): void {
  el.results.innerHTML = "";
  for (const ws of results) {
    const row = document.createElement("li");
    row.classList.add(`label-${effectiveLabel(state, ws.word)}`);
    row.textContent = `${ws.word}  ${ws.score.toFixed(3)}`;
    row.addEventListener("click", () => selectWord(ws.word));
    el.results.appendChild(row);
  }
}

function drawControls(): void {
  const selected = state.selectedWord;
  el.word.textContent = selected ?? "select a word";
  el.accept.disabled = selected === null;
  el.reject.disabled = selected === null;
  el.reseed.disabled = !canReseed(state);
  el.reseed.textContent = `Reseed from ${acceptedWords(state).length} accepted`;
  el.sliderValue.textContent = state.k.toFixed(2);
}

function redraw(): void {
  drawGraph();
  drawResults();
  drawControls();
  drawBreadcrumb();
}

async function selectWord(word: string): Promise<void> {
  state = { ...state, selectedWord: word };
  drawControls();
  drawGraph();
  try {
    const snippets = await api.snippets(word, 50);
    renderSnippets(el.snippets, word, snippets);
  } catch (error) {
    renderSnippets(el.snippets, word, []);
    if (!(error instanceof ApiError && error.status === 404)) throw error;
  }
}

async function label(labelValue: Label): Promise<void> {
  const word = state.selectedWord;
  if (!word) return;
  state = applyOptimisticLabel(state, word, labelValue);
  redraw();
  try {
    await api.setLabel(state.sessionId, word, labelValue);
    state = acknowledgeLabel(state, word, labelValue);
  } catch (error) {
    state = reconcileLabels(state, await api.labels(state.sessionId));
    setStatus(`label failed: ${error}`);
  }
  redraw();
}

async function reseed(): Promise<void> {
  if (!canReseed(state)) return;
  const { new_session_id } = await api.reseed(state.sessionId, state.k);
  const next = childState(state, new_session_id);
  storeLineage(next);
  window.location.search = `?session=${new_session_id}`;
}

async function boot(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const sessionId = params.get("session");
  if (!sessionId) {
    setStatus("open with ?session=<id> (create one via POST /sessions)");
    return;
  }
  state = initialViewState(sessionId, Number(el.slider.value),
                           lineageKey(sessionId));
  setStatus("loading…");
  graph = await api.graph(sessionId);
  state = reconcileLabels(state, await api.labels(sessionId));
  try {
    results = await api.results(sessionId);
    setStatus(`${graph.nodes.length} nodes, ${graph.edges.length} edges`);
  } catch (error) {
    if (error instanceof ApiError && error.status === 409) {
      results = [];
      setStatus("session still running; results pending");
    } else {
      throw error;
    }
  }
  redraw();
}

el.accept.addEventListener("click", () => void label("accepted"));
el.reject.addEventListener("click", () => void label("rejected"));
el.reseed.addEventListener("click", () => void reseed());
el.slider.addEventListener("input", () => {
  state = { ...state, k: Number(el.slider.value) };
  drawControls();
});

void boot();
