// Annotation session state. One pair at a time: first a contributes/not
// label for every sentence (Q1), only then the reconstructability question
// (Q2), then an explicit submit. Rejections and network failures keep the
// draft untouched; an acknowledged submission wipes it.

import { ApiError, submitAnnotation } from "./api";
import { validateAnnotation } from "./schema";
import type { AnnotationPayload, PairDetail, Reconstructability } from "./types";

export type SessionPhase = "labeling" | "submitting" | "submitted";

export interface SessionSnapshot {
  phase: SessionPhase;
  labels: (0 | 1 | null)[];
  verdict: Reconstructability | null;
  q2Enabled: boolean;
  submitEnabled: boolean;
  unlabeled: number[];
  highlightMissing: boolean;
  error: string | null;
  fieldErrors: Record<string, string>;
  retryOffered: boolean;
}

export class AnnotationSession {
  readonly pair: PairDetail;
  readonly annotatorId: string;
  private labels: (0 | 1 | null)[];
  private verdict: Reconstructability | null = null;
  private phase: SessionPhase = "labeling";
  private error: string | null = null;
  private fieldErrors: Record<string, string> = {};
  private retryOffered = false;
  private highlightMissing = false;
  private post: typeof submitAnnotation;

  constructor(pair: PairDetail, annotatorId: string, post: typeof submitAnnotation = submitAnnotation) {
    this.pair = pair;
    this.annotatorId = annotatorId;
    this.labels = new Array(pair.sentences.length).fill(null);
    this.post = post;
  }

  snapshot(): SessionSnapshot {
    const unlabeled = this.labels.flatMap((v, i) => (v === null ? [i] : []));
    const q2Enabled = unlabeled.length === 0 && this.phase === "labeling";
    return {
      phase: this.phase,
      labels: [...this.labels],
      verdict: this.verdict,
      q2Enabled,
      submitEnabled: q2Enabled && this.verdict !== null,
      unlabeled,
      highlightMissing: this.highlightMissing && unlabeled.length > 0,
      error: this.error,
      fieldErrors: { ...this.fieldErrors },
      retryOffered: this.retryOffered,
    };
  }

  setLabel(index: number, value: 0 | 1): void {
    if (this.phase !== "labeling") return;
    if (index < 0 || index >= this.labels.length) throw new Error(`sentence index ${index} out of range`);
    this.labels[index] = value;
    this.fieldErrors = {};
    this.error = null;
  }

  /** the user tried to answer Q2 while sentences are still unlabeled */
  requestQ2(): void {
    if (this.snapshot().unlabeled.length > 0) this.highlightMissing = true;
  }

  setVerdict(verdict: Reconstructability): void {
    if (this.phase !== "labeling" || !this.snapshot().q2Enabled) return;
    this.verdict = verdict;
  }

  payload(): AnnotationPayload {
    return {
      pair_id: this.pair.pair_id,
      annotator_id: this.annotatorId,
      sentence_labels: this.labels.map((v) => v ?? 0),
      reconstructability: this.verdict ?? "no",
    };
  }

  async submit(): Promise<boolean> {
    const snap = this.snapshot();
    if (!snap.submitEnabled) {
      this.error = "label every sentence and answer the reconstructability question first";
      return false;
    }
    const payload = this.payload();
    const schemaErrors = validateAnnotation(payload);
    if (Object.keys(schemaErrors).length > 0) {
      this.fieldErrors = schemaErrors;
      this.error = "draft does not satisfy the annotation schema";
      return false;
    }
    this.phase = "submitting";
    this.error = null;
    this.retryOffered = false;
    try {
      await this.post(payload);
    } catch (err) {
      // draft survives: labels and verdict are untouched on any failure
      this.phase = "labeling";
      if (err instanceof ApiError) {
        this.fieldErrors = err.fieldErrors;
        this.error = err.message;
      } else {
        this.error = "network failure, nothing was saved";
        this.retryOffered = true;
      }
      return false;
    }
    this.phase = "submitted";
    this.labels = new Array(this.pair.sentences.length).fill(null);
    this.verdict = null;
    return true;
  }
}
