// shapes exchanged with the annotation/inspection service

export type Reconstructability = "yes" | "partly" | "no";

export interface PairListingEntry {
  pair_id: string;
  dataset: string;
  summary_origin: string;
  n_sentences: number;
  summary: string;
}

export interface GoldInfo {
  votes: number[];
  n_annotators: number;
  binary_sources: boolean[];
}

export interface PairDetail {
  pair_id: string;
  dataset: string;
  summary_origin: string;
  system_name?: string;
  summary: string;
  sentences: string[];
  n_annotations?: number;
  gold?: GoldInfo;
}

export interface ScoreVector {
  pair_id: string;
  method: string;
  scores: number[];
  metadata: Record<string, unknown>;
}

export interface AnnotationPayload {
  pair_id: string;
  annotator_id: string;
  sentence_labels: number[];
  reconstructability: Reconstructability;
}

export interface AgreementReport {
  n_records: number;
  n_pairs_annotated: number;
  sentence_label_alpha: number | null;
  reconstructability_alpha: number | null;
}
