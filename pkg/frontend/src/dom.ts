/** Thin DOM layer: applies pure specs to SVG/HTML. */

import type { Scene } from "./scene.js";
import type { Snippet, Label } from "./api.js";
import { splitHighlight } from "./snippets.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export function renderScene(container: Element, scene: Scene,
                            onSelect: (word: string) => void,
                            selectedWord: string | null,
                            labelOf: (word: string) => Label): void {
  container.innerHTML = "";
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${scene.width} ${scene.height}`);
  svg.classList.add("graph");

  for (const edge of scene.edges) {
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(edge.x1));
    line.setAttribute("y1", String(edge.y1));
    line.setAttribute("x2", String(edge.x2));
    line.setAttribute("y2", String(edge.y2));
    line.setAttribute("stroke-width", String(edge.width));
    line.classList.add("edge");
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = edge.title;  // weight on hover
    line.appendChild(title);
    svg.appendChild(line);
  }

  for (const node of scene.nodes) {
    const group = document.createElementNS(SVG_NS, "g");
    group.classList.add("node", `label-${labelOf(node.word)}`);
    if (node.word === selectedWord) group.classList.add("selected");
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(node.x));
    circle.setAttribute("cy", String(node.y));
    circle.setAttribute("r", String(node.r));
    circle.setAttribute("fill", node.fill);
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = node.title;
    circle.appendChild(title);
    const text = document.createElementNS(SVG_NS, "text");
    text.setAttribute("x", String(node.x));
    text.setAttribute("y", String(node.y - node.r - 4));
    text.textContent = node.word;
    group.appendChild(circle);
    group.appendChild(text);
    group.addEventListener("click", () => onSelect(node.word));
    svg.appendChild(group);
  }
  container.appendChild(svg);
}

export function renderSnippets(container: Element, word: string,
                               snippets: Snippet[]): void {
  container.innerHTML = "";
  if (!snippets.length) {
    const empty = document.createElement("p");
    empty.classList.add("empty-state");
    empty.textContent = `No source texts found for "${word}".`;
    container.appendChild(empty);
    return;
  }
  for (const snippet of snippets) {
    const item = document.createElement("blockquote");
    const parts = splitHighlight(snippet);
    item.appendChild(document.createTextNode(parts.before));
    if (parts.match !== null) {
      const mark = document.createElement("mark");
      mark.textContent = parts.match;
      item.appendChild(mark);
    }
    item.appendChild(document.createTextNode(parts.after));
    const source = document.createElement("cite");
    source.textContent = `doc ${snippet.doc_id}`;
    item.appendChild(source);
    container.appendChild(item);
  }
}
