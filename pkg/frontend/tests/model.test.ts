import { describe, expect, it } from "vitest";

import {
  createViewModel,
  interact,
  parseSummary,
  rowContainsLabel,
  SummaryFormatError,
  PAN_LIMIT,
} from "../src/model";
import { InteractionEvent, ZOOM_MAX, ZOOM_MIN } from "../src/types";
import { GOLDEN_JSON } from "./golden";

const doc = parseSummary(GOLDEN_JSON);

describe("parseSummary", () => {
  it("accepts the golden document", () => {
    expect(doc.bubbles).toHaveLength(8);
    expect(doc.keyphrase_table).toHaveLength(3);
    expect(doc.video_id).toBe("demo-001");
  });

  it("rejects a newer schema version", () => {
    const altered = GOLDEN_JSON.replace('"scholiview/1"', '"scholiview/2"');
    expect(() => parseSummary(altered)).toThrow(SummaryFormatError);
    expect(() => parseSummary(altered)).toThrow(/schema/);
  });

  it("rejects broken JSON", () => {
    expect(() => parseSummary("{nope")).toThrow(SummaryFormatError);
  });

  it("rejects structurally invalid documents", () => {
    const noBubbles = JSON.stringify({ schema: "scholiview/1", bubbles: "x" });
    expect(() => parseSummary(noBubbles)).toThrow(SummaryFormatError);
  });
});

describe("interact", () => {
  const initial = createViewModel(doc);

  it("hover tracks only existing bubbles", () => {
    const hovered = interact(initial, { kind: "hover", label: "Laufzeit" });
    expect(hovered.hovered).toBe("Laufzeit");
    const unknown = interact(hovered, { kind: "hover", label: "Nope" });
    expect(unknown.hovered).toBeNull();
    const outside = interact(hovered, { kind: "hover", label: null });
    expect(outside.hovered).toBeNull();
  });

  it("click selects and clicking outside clears", () => {
    const selected = interact(initial, { kind: "click", label: "Quicksort" });
    expect(selected.selected).toBe("Quicksort");
    const cleared = interact(selected, { kind: "click", label: null });
    expect(cleared.selected).toBeNull();
  });

  it("zoom is clamped to the documented bounds", () => {
    let model = initial;
    for (let i = 0; i < 30; i++) model = interact(model, { kind: "zoom", factor: 2 });
    expect(model.viewport.zoom).toBe(ZOOM_MAX);
    for (let i = 0; i < 60; i++) model = interact(model, { kind: "zoom", factor: 0.5 });
    expect(model.viewport.zoom).toBe(ZOOM_MIN);
  });

  it("pan is clamped proportionally to zoom", () => {
    let model = initial;
    for (let i = 0; i < 100; i++) model = interact(model, { kind: "pan", dx: 100, dy: -100 });
    expect(model.viewport.x).toBe(PAN_LIMIT);
    expect(model.viewport.y).toBe(-PAN_LIMIT);
  });

  it("reset restores the initial viewport and clears selection", () => {
    let model = initial;
    model = interact(model, { kind: "zoom", factor: 3 });
    model = interact(model, { kind: "pan", dx: 40, dy: 20 });
    model = interact(model, { kind: "click", label: "Laufzeit" });
    model = interact(model, { kind: "togglePan" });
    model = interact(model, { kind: "reset" });
    expect(model.viewport).toEqual(initial.viewport);
    expect(model.selected).toBeNull();
    expect(model.hovered).toBeNull();
    expect(model.panMode).toBe(false);
  });

  it("is a pure function of the event history", () => {
    const events: InteractionEvent[] = [
      { kind: "zoom", factor: 1.25 },
      { kind: "pan", dx: 12, dy: -7 },
      { kind: "hover", label: "Speicher" },
      { kind: "click", label: "Laufzeit" },
      { kind: "zoom", factor: 0.8 },
    ];
    const replay = () => events.reduce(interact, createViewModel(doc));
    expect(replay()).toEqual(replay());
  });

  it("never mutates the previous model", () => {
    const before = JSON.stringify(initial);
    interact(initial, { kind: "zoom", factor: 2 });
    interact(initial, { kind: "click", label: "Laufzeit" });
    expect(JSON.stringify(initial)).toBe(before);
  });
});

describe("rowContainsLabel", () => {
  it("matches case-insensitively", () => {
    expect(rowContainsLabel(["Laufzeit", "Daten"], "laufzeit")).toBe(true);
    expect(rowContainsLabel(["Laufzeit"], "LAUFZEIT")).toBe(true);
    expect(rowContainsLabel(["Laufzeiten"], "Laufzeit")).toBe(false);
  });
});
