/** DOM renderers. Pure functions from state to elements; the caller
 * owns mounting and event dispatch. Every renderer takes the target
 * Document so tests can pass a synthetic one. */

import { citationHref, materialUrl } from "./api.js";
import type { GraphNode } from "./api.js";
import { canSend } from "./chat.js";
import type { ChatState, Turn } from "./chat.js";
import type { GraphViewState } from "./graphview.js";
import { forceLayout } from "./layout.js";

const SVG_NS = "http://www.w3.org/2000/svg";

const CATE_COLOR: Record<string, string> = {
  Formula: "#2563eb",
  Element: "#16a34a",
  Lattice: "#d97706",
  Spacegroup: "#9333ea",
  Pointgroup: "#0891b2",
  TopoClass: "#dc2626",
};

function turnElement(doc: Document, turn: Turn): HTMLElement {
  const item = doc.createElement("div");
  item.className = `turn turn-${turn.role}`;
  const text = doc.createElement("p");
  text.textContent = turn.text;
  item.appendChild(text);
  if (turn.citations.length > 0) {
    const list = doc.createElement("ul");
    list.className = "citations";
    for (const citation of turn.citations) {
      const entry = doc.createElement("li");
      const link = doc.createElement("a");
      link.href = citationHref(citation);
      link.textContent = `${citation.kind}: ${citation.value}`;
      link.target = "_blank";
      link.rel = "noreferrer";
      entry.appendChild(link);
      list.appendChild(entry);
    }
    item.appendChild(list);
  }
  return item;
}

export function renderChat(state: ChatState, doc: Document): HTMLElement {
  const panel = doc.createElement("div");
  panel.className = "chat-panel";
  for (const turn of state.turns) {
    panel.appendChild(turnElement(doc, turn));
  }
  if (state.pending) {
    const waiting = doc.createElement("div");
    waiting.className = "turn turn-pending";
    waiting.textContent = "…";
    panel.appendChild(waiting);
  }
  return panel;
}

export interface ComposerHandlers {
  onSend: (text: string) => void;
}

export function renderComposer(
  state: ChatState,
  draft: string,
  doc: Document,
  handlers: ComposerHandlers,
): HTMLElement {
  const bar = doc.createElement("form");
  bar.className = "composer";
  const input = doc.createElement("input");
  input.type = "text";
  input.value = draft;
  input.placeholder = "Ask about a material…";
  input.disabled = state.pending;
  const button = doc.createElement("button");
  button.type = "submit";
  button.textContent = state.pending ? "Waiting…" : "Send";
  button.disabled = !canSend(state, draft);
  bar.appendChild(input);
  bar.appendChild(button);
  bar.addEventListener("submit", (event) => {
    event.preventDefault();
    if (canSend(state, input.value)) handlers.onSend(input.value);
  });
  input.addEventListener("input", () => {
    button.disabled = !canSend(state, input.value);
  });
  return bar;
}

export function renderRecommended(
  state: ChatState,
  doc: Document,
  onPick: (question: string) => void,
): HTMLElement {
  const box = doc.createElement("div");
  box.className = "recommended";
  for (const question of state.recommended) {
    const chip = doc.createElement("button");
    chip.type = "button";
    chip.className = "recommended-question";
    chip.textContent = question;
    chip.addEventListener("click", () => onPick(question));
    box.appendChild(chip);
  }
  return box;
}

export interface GraphHandlers {
  onExpand: (node: GraphNode) => void;
  onSelect: (id: number) => void;
}

export function renderGraph(
  state: GraphViewState,
  doc: Document,
  handlers: GraphHandlers,
): HTMLElement {
  const wrap = doc.createElement("div");
  wrap.className = "graph-panel";

  if (state.error) {
    const note = doc.createElement("p");
    note.className = "graph-error";
    note.textContent = state.error;
    wrap.appendChild(note);
  }

  const width = 640;
  const height = 420;
  const positions = forceLayout(
    state.nodes.map((n) => n.id),
    state.edges.map((e) => [e.src, e.dst] as const),
    { width, height },
  );

  const svg = doc.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("class", "graph-canvas");

  for (const edge of state.edges) {
    const a = positions.get(edge.src);
    const b = positions.get(edge.dst);
    if (!a || !b) continue;
    const line = doc.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(a.x));
    line.setAttribute("y1", String(a.y));
    line.setAttribute("x2", String(b.x));
    line.setAttribute("y2", String(b.y));
    line.setAttribute("class", `edge edge-${edge.etype}`);
    if (edge.rel_value) line.setAttribute("data-rel-value", edge.rel_value);
    svg.appendChild(line);
  }

  for (const node of state.nodes) {
    const at = positions.get(node.id);
    if (!at) continue;
    const group = doc.createElementNS(SVG_NS, "g");
    group.setAttribute("class", "node");
    group.setAttribute("data-node-id", String(node.id));
    group.setAttribute("data-cate", node.cate);

    const circle = doc.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(at.x));
    circle.setAttribute("cy", String(at.y));
    circle.setAttribute("r", node.id === state.selected ? "14" : "10");
    circle.setAttribute("fill", CATE_COLOR[node.cate] ?? "#64748b");
    group.appendChild(circle);

    const label = doc.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(at.x));
    label.setAttribute("y", String(at.y - 16));
    label.setAttribute("text-anchor", "middle");
    label.textContent = node.name;

    // a Formula node doubles as a link to its material page
    const matID = node.attrs["matID"];
    if (node.cate === "Formula" && typeof matID === "string") {
      const link = doc.createElementNS(SVG_NS, "a");
      link.setAttribute("href", materialUrl(matID));
      link.setAttribute("target", "_blank");
      link.appendChild(label);
      group.appendChild(link);
    } else {
      group.appendChild(label);
    }

    circle.addEventListener("click", () => {
      handlers.onSelect(node.id);
      handlers.onExpand(node);
    });
    svg.appendChild(group);
  }

  wrap.appendChild(svg);
  return wrap;
}

export function renderSearchBox(
  state: GraphViewState,
  doc: Document,
  onSearch: (cate: string, name: string) => void,
): HTMLElement {
  const form = doc.createElement("form");
  form.className = "graph-search";
  const select = doc.createElement("select");
  for (const cate of Object.keys(CATE_COLOR)) {
    const option = doc.createElement("option");
    option.value = cate;
    option.textContent = cate;
    option.selected = cate === state.cate;
    select.appendChild(option);
  }
  const input = doc.createElement("input");
  input.type = "search";
  input.value = state.query;
  input.placeholder = "Node name, e.g. BaSn2";
  const button = doc.createElement("button");
  button.type = "submit";
  button.textContent = "Search";
  form.appendChild(select);
  form.appendChild(input);
  form.appendChild(button);
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    if (input.value.trim()) onSearch(select.value, input.value.trim());
  });
  return form;
}
