/**
 * DOM rendering: bubble diagram into the SVG canvas, toolbar, tooltip,
 * and the linked keyphrase table. Rendering is a pure projection of a
 * ViewModel; every event re-renders from scratch.
 */

import { rowContainsLabel } from "./model";
import { BubbleDatum, InteractionEvent, ViewModel } from "./types";

const SVG_NS = "http://www.w3.org/2000/svg";

export const VIEW_W = 800;
export const VIEW_H = 600;
const PAD = 60;
const SPAN = Math.min(VIEW_W, VIEW_H) - 2 * PAD;

export type Dispatch = (event: InteractionEvent) => void;

export interface Mount {
  svg: SVGSVGElement;
  toolbar: HTMLElement;
  table: HTMLElement;
  tooltip: HTMLDivElement;
}

/** One uniform factor keeps rendered circle area ratios identical to the data. */
export function radiusScale(bubbles: BubbleDatum[]): number {
  let max = 0;
  for (const b of bubbles) max = Math.max(max, b.radius);
  return max > 0 ? SPAN / 5 / max : 1;
}

export function bubbleCenter(b: BubbleDatum): { cx: number; cy: number } {
  return {
    cx: PAD + b.x * SPAN + (VIEW_W - Math.min(VIEW_W, VIEW_H)) / 2,
    cy: VIEW_H - PAD - b.y * SPAN,
  };
}

const SOURCE_FILL: Record<string, string> = {
  ASR: "#4682b4",
  OCR: "#2e8b57",
  VISUAL_CONCEPT: "#b8860b",
};

export function findMount(root: Document): Mount | null {
  const svg = root.getElementById("scholiview-canvas");
  if (!(svg instanceof SVGSVGElement || (svg && svg.tagName.toLowerCase() === "svg"))) {
    return null;
  }
  const diagram = (svg as Element).parentElement ?? root.body;
  let toolbar = root.getElementById("scholiview-toolbar");
  if (!toolbar) {
    toolbar = root.createElement("div");
    toolbar.id = "scholiview-toolbar";
    diagram.appendChild(toolbar);
  }
  let table = root.getElementById("scholiview-table");
  if (!table) {
    table = root.createElement("section");
    table.id = "scholiview-table";
    root.body.appendChild(table);
  }
  let tooltip = root.getElementById("scholiview-tooltip") as HTMLDivElement | null;
  if (!tooltip) {
    tooltip = root.createElement("div") as HTMLDivElement;
    tooltip.id = "scholiview-tooltip";
    tooltip.style.position = "absolute";
    tooltip.style.pointerEvents = "none";
    tooltip.style.background = "rgba(255,255,255,0.95)";
    tooltip.style.border = "1px solid #888";
    tooltip.style.borderRadius = "4px";
    tooltip.style.padding = "2px 6px";
    tooltip.style.fontSize = "12px";
    diagram.appendChild(tooltip);
  }
  return { svg: svg as unknown as SVGSVGElement, toolbar, table, tooltip };
}

function clear(node: Element): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}

function renderDiagram(mount: Mount, model: ViewModel, dispatch: Dispatch): void {
  const doc = mount.svg.ownerDocument;
  clear(mount.svg);
  const { x, y, zoom } = model.viewport;
  const group = doc.createElementNS(SVG_NS, "g");
  group.setAttribute("id", "scholiview-content");
  group.setAttribute("transform", `translate(${x} ${y}) scale(${zoom})`);
  mount.svg.appendChild(group);

  const scale = radiusScale(model.doc.bubbles);
  for (const bubble of model.doc.bubbles) {
    const { cx, cy } = bubbleCenter(bubble);
    const circle = doc.createElementNS(SVG_NS, "circle");
    circle.setAttribute("class", "scholiview-bubble");
    circle.setAttribute("data-label", bubble.label);
    circle.setAttribute("cx", String(cx));
    circle.setAttribute("cy", String(cy));
    circle.setAttribute("r", String(bubble.radius * scale));
    circle.setAttribute("fill", SOURCE_FILL[bubble.source] ?? "#777");
    circle.setAttribute("fill-opacity", model.selected === bubble.label ? "0.8" : "0.45");
    circle.setAttribute("stroke", model.selected === bubble.label ? "#111" : "#456");
    circle.setAttribute("stroke-width", model.selected === bubble.label ? "2.5" : "1");
    circle.addEventListener("mouseenter", () =>
      dispatch({ kind: "hover", label: bubble.label })
    );
    circle.addEventListener("click", (ev) => {
      ev.stopPropagation();
      dispatch({ kind: "click", label: bubble.label });
    });
    group.appendChild(circle);

    const text = doc.createElementNS(SVG_NS, "text");
    text.setAttribute("x", String(cx));
    text.setAttribute("y", String(cy + 4));
    text.setAttribute("text-anchor", "middle");
    text.setAttribute("font-size", "12");
    text.setAttribute("pointer-events", "none");
    text.textContent = bubble.label;
    group.appendChild(text);
  }
}

function renderTooltip(mount: Mount, model: ViewModel): void {
  if (model.hovered === null) {
    mount.tooltip.style.display = "none";
    mount.tooltip.textContent = "";
    return;
  }
  const bubble = model.doc.bubbles.find((b) => b.label === model.hovered);
  if (!bubble) return;
  const { cx, cy } = bubbleCenter(bubble);
  const { x, y, zoom } = model.viewport;
  mount.tooltip.style.display = "block";
  mount.tooltip.style.left = `${((cx * zoom + x) / VIEW_W) * 100}%`;
  mount.tooltip.style.top = `${((cy * zoom + y) / VIEW_H) * 100}%`;
  mount.tooltip.textContent = `${bubble.label} (${bubble.frequency})`;
}

function formatTime(seconds: number): string {
  const minutes = Math.floor(seconds / 60);
  const rest = Math.floor(seconds % 60);
  return `${String(minutes).padStart(2, "0")}:${String(rest).padStart(2, "0")}`;
}

function renderTable(mount: Mount, model: ViewModel): void {
  const doc = mount.table.ownerDocument;
  clear(mount.table);
  const rows = model.doc.keyphrase_table;
  if (!rows.some((row) => row.keyphrases.length > 0)) {
    const placeholder = doc.createElement("p");
    placeholder.className = "placeholder";
    placeholder.textContent = "no keyphrases";
    mount.table.appendChild(placeholder);
    return;
  }
  const table = doc.createElement("table");
  const thead = doc.createElement("thead");
  const headRow = doc.createElement("tr");
  for (const caption of ["segment", "keyphrases"]) {
    const th = doc.createElement("th");
    th.textContent = caption;
    headRow.appendChild(th);
  }
  thead.appendChild(headRow);
  table.appendChild(thead);
  const tbody = doc.createElement("tbody");
  for (const row of rows) {
    const tr = doc.createElement("tr");
    tr.className = "scholiview-row";
    if (model.selected !== null && rowContainsLabel(row.keyphrases, model.selected)) {
      tr.classList.add("highlight");
    }
    const spanCell = doc.createElement("td");
    spanCell.textContent = `${formatTime(row.segment_start)}–${formatTime(row.segment_end)}`;
    const phraseCell = doc.createElement("td");
    phraseCell.textContent = row.keyphrases.join(", ");
    tr.appendChild(spanCell);
    tr.appendChild(phraseCell);
    tbody.appendChild(tr);
  }
  table.appendChild(tbody);
  mount.table.appendChild(table);
}

function renderToolbar(mount: Mount, model: ViewModel, dispatch: Dispatch): void {
  const doc = mount.toolbar.ownerDocument;
  clear(mount.toolbar);
  const buttons: Array<[string, string, InteractionEvent]> = [
    ["zoom-in", "+", { kind: "zoom", factor: 1.25 }],
    ["zoom-out", "−", { kind: "zoom", factor: 0.8 }],
    ["pan", "✋", { kind: "togglePan" }],
    ["reset", "↺", { kind: "reset" }],
  ];
  for (const [name, symbol, event] of buttons) {
    const button = doc.createElement("button");
    button.type = "button";
    button.dataset.action = name;
    button.title = name;
    button.textContent = symbol;
    if (name === "pan") {
      button.setAttribute("aria-pressed", String(model.panMode));
    }
    button.addEventListener("click", () => dispatch(event));
    mount.toolbar.appendChild(button);
  }
}

export function render(mount: Mount, model: ViewModel, dispatch: Dispatch): void {
  renderDiagram(mount, model, dispatch);
  renderTooltip(mount, model);
  renderTable(mount, model);
  renderToolbar(mount, model, dispatch);
}

/** Wire canvas-level events (they never change between renders). */
export function wireCanvas(mount: Mount, dispatch: Dispatch, model: () => ViewModel): void {
  mount.svg.addEventListener("mouseleave", () => dispatch({ kind: "hover", label: null }));
  mount.svg.addEventListener("click", () => dispatch({ kind: "click", label: null }));
  let dragging = false;
  let lastX = 0;
  let lastY = 0;
  mount.svg.addEventListener("mousedown", (ev) => {
    if (!model().panMode) return;
    dragging = true;
    lastX = ev.clientX;
    lastY = ev.clientY;
  });
  mount.svg.addEventListener("mousemove", (ev) => {
    if (!dragging) return;
    dispatch({ kind: "pan", dx: ev.clientX - lastX, dy: ev.clientY - lastY });
    lastX = ev.clientX;
    lastY = ev.clientY;
  });
  const stop = () => {
    dragging = false;
  };
  mount.svg.addEventListener("mouseup", stop);
  mount.svg.addEventListener("mouseleave", stop);
}
