/**
 * Document parsing and the interaction state machine.
 *
 * `interact` is a pure reducer: the view is a function of the document
 * and the interaction history, so replaying the same events always
 * reproduces the same model.
 */

import {
  InteractionEvent,
  SCHEMA,
  SummaryDoc,
  ViewModel,
  Viewport,
  ZOOM_MAX,
  ZOOM_MIN,
} from "./types";

/** How far (in canvas units, scaled by zoom) the content may be dragged. */
export const PAN_LIMIT = 400;

export class SummaryFormatError extends Error {}

function fail(message: string): never {
  throw new SummaryFormatError(message);
}

export function parseSummary(text: string): SummaryDoc {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch {
    fail("not valid JSON");
  }
  if (typeof raw !== "object" || raw === null) fail("document must be an object");
  const doc = raw as Record<string, unknown>;
  if (doc.schema !== SCHEMA) {
    fail(`unsupported schema ${JSON.stringify(doc.schema)}; expected "${SCHEMA}"`);
  }
  if (!Array.isArray(doc.bubbles)) fail("bubbles must be an array");
  for (const b of doc.bubbles as Record<string, unknown>[]) {
    if (typeof b.label !== "string" || !b.label) fail("bubble label missing");
    for (const field of ["x", "y", "radius", "frequency"]) {
      if (typeof b[field] !== "number" || !isFinite(b[field] as number)) {
        fail(`bubble field ${field} must be a finite number`);
      }
    }
    if ((b.radius as number) <= 0) fail("bubble radius must be positive");
  }
  if (!Array.isArray(doc.keyphrase_table)) fail("keyphrase_table must be an array");
  for (const row of doc.keyphrase_table as Record<string, unknown>[]) {
    if (typeof row.segment_start !== "number" || typeof row.segment_end !== "number") {
      fail("table row needs segment_start and segment_end");
    }
    if (!Array.isArray(row.keyphrases)) fail("table row needs a keyphrases array");
  }
  return raw as SummaryDoc;
}

const INITIAL_VIEWPORT: Viewport = { x: 0, y: 0, zoom: 1 };

export function createViewModel(doc: SummaryDoc): ViewModel {
  return {
    doc,
    hovered: null,
    selected: null,
    panMode: false,
    viewport: { ...INITIAL_VIEWPORT },
  };
}

const clamp = (value: number, lo: number, hi: number) =>
  Math.min(hi, Math.max(lo, value));

function clampViewport(viewport: Viewport): Viewport {
  const zoom = clamp(viewport.zoom, ZOOM_MIN, ZOOM_MAX);
  const limit = PAN_LIMIT * zoom;
  return {
    x: clamp(viewport.x, -limit, limit),
    y: clamp(viewport.y, -limit, limit),
    zoom,
  };
}

function knownLabel(doc: SummaryDoc, label: string | null): string | null {
  if (label === null) return null;
  return doc.bubbles.some((b) => b.label === label) ? label : null;
}

export function interact(model: ViewModel, event: InteractionEvent): ViewModel {
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
          zoom: model.viewport.zoom,
        }),
      };
    case "zoom":
      return {
        ...model,
        viewport: clampViewport({
          ...model.viewport,
          zoom: model.viewport.zoom * event.factor,
        }),
      };
    case "togglePan":
      return { ...model, panMode: !model.panMode };
    case "reset":
      return {
        ...model,
        hovered: null,
        selected: null,
        panMode: false,
        viewport: { ...INITIAL_VIEWPORT },
      };
  }
}

/** Case-insensitive membership of a bubble label in a row's keyphrases. */
export function rowContainsLabel(keyphrases: string[], label: string): boolean {
  const needle = label.toLowerCase();
  return keyphrases.some((phrase) => phrase.toLowerCase() === needle);
}
