export const SCHEMA = "scholiview/1";

export const ZOOM_MIN = 0.25;
export const ZOOM_MAX = 8;

export interface BubbleDatum {
  label: string;
  x: number;
  y: number;
  radius: number;
  frequency: number;
  source: string;
}

export interface TableRowDatum {
  segment_start: number;
  segment_end: number;
  keyphrases: string[];
}

export interface SummaryDoc {
  schema: string;
  video_id: string;
  url: string;
  title: string;
  bubbles: BubbleDatum[];
  keyphrase_table: TableRowDatum[];
  generator_config: Record<string, unknown>;
}

export interface Viewport {
  x: number;
  y: number;
  zoom: number;
}

export interface ViewModel {
  doc: SummaryDoc;
  hovered: string | null;
  selected: string | null;
  panMode: boolean;
  viewport: Viewport;
}

export type InteractionEvent =
  | { kind: "hover"; label: string | null }
  | { kind: "click"; label: string | null }
  | { kind: "pan"; dx: number; dy: number }
  | { kind: "zoom"; factor: number }
  | { kind: "togglePan" }
  | { kind: "reset" };
