/**
 * Bootstrap: read the embedded summary document (emit_html pages), or
 * offer a file picker / drag & drop when opened standalone. Everything
 * runs from the local file; no network requests.
 */

import { createViewModel, interact, parseSummary, SummaryFormatError } from "./model";
import { findMount, Mount, render, wireCanvas } from "./render";
import { InteractionEvent, ViewModel } from "./types";

export function showError(doc: Document, message: string): void {
  let banner = doc.getElementById("scholiview-error");
  if (!banner) {
    banner = doc.createElement("p");
    banner.id = "scholiview-error";
    const host = doc.getElementById("scholiview-table") ?? doc.body;
    host.insertBefore(banner, host.firstChild);
  }
  banner.textContent = message;
}

export function clearError(doc: Document): void {
  const banner = doc.getElementById("scholiview-error");
  if (banner && banner.parentNode) banner.parentNode.removeChild(banner);
}

export class ViewerApp {
  model: ViewModel;
  private mount: Mount;

  constructor(mount: Mount, model: ViewModel) {
    this.mount = mount;
    this.model = model;
    wireCanvas(mount, this.dispatch, () => this.model);
    render(this.mount, this.model, this.dispatch);
  }

  dispatch = (event: InteractionEvent): void => {
    this.model = interact(this.model, event);
    render(this.mount, this.model, this.dispatch);
  };
}

export function loadSummary(doc: Document, text: string): ViewerApp | null {
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

function offerFileInputs(doc: Document): void {
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

export function boot(doc: Document): void {
  const embedded = doc.getElementById("scholiview-data");
  if (embedded && embedded.textContent) {
    loadSummary(doc, embedded.textContent);
    return;
  }
  offerFileInputs(doc);
}
