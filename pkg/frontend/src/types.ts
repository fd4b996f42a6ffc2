// Wire types mirrored from the service's scene and timeline schemas.

export const SCHEMA_VERSION = 1;

export type Complex2 = [number, number];

export interface CircleRecord {
  center: Complex2;
  radius: number;
  word: string;
  offset: [number, number];
  visible: boolean;
  face_class: number;
  color: number;
}

export interface ChordRecord {
  a: Complex2;
  b: Complex2;
  edge_class: number;
  owners: string[];
  offset: [number, number];
}

export interface TangencyRecord {
  point: Complex2;
  words: string[];
  offset: [number, number];
}

export interface Diagnostics {
  status: string;
  status_reason: string | null;
  poincare_passed: boolean;
  pairings_ok: boolean;
  tunnel: string;
  gamma_visible: boolean;
  min_parabolic: string;
  shimizu_ok: boolean;
  face_class_count: number;
  edge_class_count: number;
  vertex_class_count: number;
  face_words: string[];
  dual_counts: [number, number, number] | null;
  marginal_words: string[];
}

export interface Scene {
  schema_version: number;
  params: { a: Complex2; b: Complex2; c: Complex2 };
  window: [number, number, number, number];
  lattice: { a: Complex2; b: Complex2; parallelogram: Complex2[] };
  circles: CircleRecord[];
  chords: ChordRecord[];
  tangencies: TangencyRecord[];
  diagnostics: Diagnostics;
}

export interface TimelineSample {
  t: number;
  status: string;
  faces: string[];
  face_count: number;
  edge_count: number;
  tunnel: string;
  min_parabolic: string;
  poincare_passed: boolean;
  error: string | null;
}

export interface TimelineEvent {
  kind: string;
  bracket: [number, number];
  witnesses: Record<string, unknown>;
}

export interface Timeline {
  schema_version: number;
  t_range: [number, number];
  samples: TimelineSample[];
  events: TimelineEvent[];
  tunnel_certificate: {
    certified: boolean;
    witness_t: number | null;
    samples_checked: number;
  } | null;
}

export interface RepConfig {
  a: Complex2;
  b: Complex2;
  c: Complex2;
}

// polynomial coefficient tables, lowest degree first
export type PolyEntry = Complex2[];
export type PolyMatrix = [[PolyEntry, PolyEntry], [PolyEntry, PolyEntry]];

export interface PathConfig {
  t_range: [number, number];
  samples: number;
  entries: { alpha: PolyMatrix; beta: PolyMatrix; gamma: PolyMatrix };
}

export interface PresetInfo {
  name: string;
  kind: "rep" | "path";
  config: RepConfig | PathConfig;
}
