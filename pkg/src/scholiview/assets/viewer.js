"use strict";
(() => {
  // src/types.ts
  var SCHEMA = "scholiview/1";
  var ZOOM_MIN = 0.25;
  var ZOOM_MAX = 8;

  // src/model.ts
  var PAN_LIMIT = 400;
  var SummaryFormatError = class extends Error {
  };
  function fail(message) {
    throw new SummaryFormatError(message);
  }
  function parseSummary(text) {
    let raw;
    try {
      raw = JSON.parse(text);
    } catch {
      fail("not valid JSON");
    }
    if (typeof raw !== "object" || raw === null) fail("document must be an object");
    const doc = raw;
    if (doc.schema !== SCHEMA) {
      fail(`unsupported schema ${JSON.stringify(doc.schema)}; expected "${SCHEMA}"`);
    }
    if (!Array.isArray(doc.bubbles)) fail("bubbles must be an array");
    for (const b of doc.bubbles) {
      if (typeof b.label !== "string" || !b.label) fail("bubble label missing");
      for (const field of ["x", "y", "radius", "frequency"]) {
        if (typeof b[field] !== "number" || !isFinite(b[field])) {
          fail(`bubble field ${field} must be a finite number`);
        }
      }
      if (b.radius <= 0) fail("bubble radius must be positive");
    }
    if (!Array.isArray(doc.keyphrase_table)) fail("keyphrase_table must be an array");
    for (const row of doc.keyphrase_table) {
      if (typeof row.segment_start !== "number" || typeof row.segment_end !== "number") {
        fail("table row needs segment_start and segment_end");
      }
      if (!Array.isArray(row.keyphrases)) fail("table row needs a keyphrases array");
    }
    return raw;
  }
  var INITIAL_VIEWPORT = { x: 0, y: 0, zoom: 1 };
  function createViewModel(doc) {
    return {
      doc,
      hovered: null,
      selected: null,
      panMode: false,
      viewport: { ...INITIAL_VIEWPORT }
    };
  }
  var clamp = (value, lo, hi) => Math.min(hi, Math.max(lo, value));
  function clampViewport(viewport) {
    const zoom = clamp(viewport.zoom, ZOOM_MIN, ZOOM_MAX);
    const limit = PAN_LIMIT * zoom;
    return {
      x: clamp(viewport.x, -limit, limit),
      y: clamp(viewport.y, -limit, limit),
      zoom
    };
  }
  function knownLabel(doc, label) {
    if (label === null) return null;
    return doc.bubbles.some((b) => b.label === label) ? label : null;
  }
  function interact(model, event) {
    switch (event.kind) {
      case "hover":
        return { ...model, hovered: knownLabel(model.doc, event.label) };
      case "click":
        return { ...model, selected: knownLabel(model.doc, event.label) };
      case "pan":
        return {
          ...model,
          viewport: clampViewport({
            x: model.viewport.x + event.dx,
            y: model.viewport.y + event.dy,
            zoom: model.viewport.zoom
          })
        };
      case "zoom":
        return {
          ...model,
          viewport: clampViewport({
            ...model.viewport,
            zoom: model.viewport.zoom * event.factor
          })
        };
      case "togglePan":
        return { ...model, panMode: !model.panMode };
      case "reset":
        return {
          ...model,
          hovered: null,
          selected: null,
          panMode: false,
          viewport: { ...INITIAL_VIEWPORT }
        };
    }
  }
  function rowContainsLabel(keyphrases, label) {
    const needle = label.toLowerCase();
    return keyphrases.some((phrase) => phrase.toLowerCase() === needle);
  }

  // src/render.ts
  var SVG_NS = "http://www.w3.org/2000/svg";
  var VIEW_W = 800;
  var VIEW_H = 600;
  var PAD = 60;
  var SPAN = Math.min(VIEW_W, VIEW_H) - 2 * PAD;
  function radiusScale(bubbles) {
    let max = 0;
    for (const b of bubbles) max = Math.max(max, b.radius);
    return max > 0 ? SPAN / 5 / max : 1;
  }
  function bubbleCenter(b) {
    return {
      cx: PAD + b.x * SPAN + (VIEW_W - Math.min(VIEW_W, VIEW_H)) / 2,
      cy: VIEW_H - PAD - b.y * SPAN
    };
  }
  var SOURCE_FILL = {
    ASR: "#4682b4",
    OCR: "#2e8b57",
    VISUAL_CONCEPT: "#b8860b"
  };
  function findMount(root) {
    const svg = root.getElementById("scholiview-canvas");
    if (!(svg instanceof SVGSVGElement || svg && svg.tagName.toLowerCase() === "svg")) {
      return null;
    }
    const diagram = svg.parentElement ?? root.body;
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
    let tooltip = root.getElementById("scholiview-tooltip");
    if (!tooltip) {
      tooltip = root.createElement("div");
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
    return { svg, toolbar, table, tooltip };
  }
  function clear(node) {
    while (node.firstChild) node.removeChild(node.firstChild);
  }
  function renderDiagram(mount, model, dispatch) {
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
      circle.addEventListener(
        "mouseenter",
        () => dispatch({ kind: "hover", label: bubble.label })
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
  function renderTooltip(mount, model) {
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
    mount.tooltip.style.left = `${(cx * zoom + x) / VIEW_W * 100}%`;
    mount.tooltip.style.top = `${(cy * zoom + y) / VIEW_H * 100}%`;
    mount.tooltip.textContent = `${bubble.label} (${bubble.frequency})`;
  }
  function formatTime(seconds) {
    const minutes = Math.floor(seconds / 60);
    const rest = Math.floor(seconds % 60);
    return `${String(minutes).padStart(2, "0")}:${String(rest).padStart(2, "0")}`;
  }
  function renderTable(mount, model) {
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
      spanCell.textContent = `${formatTime(row.segment_start)}\u2013${formatTime(row.segment_end)}`;
      const phraseCell = doc.createElement("td");
      phraseCell.textContent = row.keyphrases.join(", ");
      tr.appendChild(spanCell);
      tr.appendChild(phraseCell);
      tbody.appendChild(tr);
    }
    table.appendChild(tbody);
    mount.table.appendChild(table);
  }
  function renderToolbar(mount, model, dispatch) {
    const doc = mount.toolbar.ownerDocument;
    clear(mount.toolbar);
    const buttons = [
      ["zoom-in", "+", { kind: "zoom", factor: 1.25 }],
      ["zoom-out", "\u2212", { kind: "zoom", factor: 0.8 }],
      ["pan", "\u270B", { kind: "togglePan" }],
      ["reset", "\u21BA", { kind: "reset" }]
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
  function render(mount, model, dispatch) {
    renderDiagram(mount, model, dispatch);
    renderTooltip(mount, model);
    renderTable(mount, model);
    renderToolbar(mount, model, dispatch);
  }
  function wireCanvas(mount, dispatch, model) {
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

  // src/main.ts
  function showError(doc, message) {
    let banner = doc.getElementById("scholiview-error");
    if (!banner) {
      banner = doc.createElement("p");
      banner.id = "scholiview-error";
      const host = doc.getElementById("scholiview-table") ?? doc.body;
      host.insertBefore(banner, host.firstChild);
    }
    banner.textContent = message;
  }
  function clearError(doc) {
    const banner = doc.getElementById("scholiview-error");
    if (banner && banner.parentNode) banner.parentNode.removeChild(banner);
  }
  var ViewerApp = class {
    constructor(mount, model) {
      this.dispatch = (event) => {
        this.model = interact(this.model, event);
        render(this.mount, this.model, this.dispatch);
      };
      this.mount = mount;
      this.model = model;
      wireCanvas(mount, this.dispatch, () => this.model);
      render(this.mount, this.model, this.dispatch);
    }
  };
  function loadSummary(doc, text) {
    const mount = findMount(doc);
    if (!mount) {
      showError(doc, "viewer mount point not found");
      return null;
    }
    let summary;
    try {
      summary = parseSummary(text);
    } catch (err) {
      const reason = err instanceof SummaryFormatError ? err.message : String(err);
      showError(doc, `cannot display summary: ${reason}`);
      return null;
    }
    clearError(doc);
    return new ViewerApp(mount, createViewModel(summary));
  }
  function offerFileInputs(doc) {
    const host = doc.getElementById("scholiview-table") ?? doc.body;
    const picker = doc.createElement("input");
    picker.type = "file";
    picker.id = "scholiview-file";
    picker.accept = ".json,application/json";
    picker.addEventListener("change", () => {
      const file = picker.files && picker.files[0];
      if (!file) return;
      file.text().then((text) => loadSummary(doc, text));
    });
    const hint = doc.createElement("p");
    hint.className = "placeholder";
    hint.textContent = "open a scholiview/1 JSON document (or drop it anywhere on the page)";
    host.insertBefore(picker, host.firstChild);
    host.insertBefore(hint, picker);
    doc.addEventListener("dragover", (ev) => ev.preventDefault());
    doc.addEventListener("drop", (ev) => {
      ev.preventDefault();
      const file = ev.dataTransfer && ev.dataTransfer.files[0];
      if (file) file.text().then((text) => loadSummary(doc, text));
    });
  }
  function boot(doc) {
    const embedded = doc.getElementById("scholiview-data");
    if (embedded && embedded.textContent) {
      loadSummary(doc, embedded.textContent);
      return;
    }
    offerFileInputs(doc);
  }

  // src/entry.ts
  if (document.readyState === "loading") {
    document.addEventListener("DOMContentLoaded", () => boot(document));
  } else {
    boot(document);
  }
})();
