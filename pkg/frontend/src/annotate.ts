// DOM view for the annotation flow. The summary is shown above the document
// and again in a sticky prompt box beside it, so it stays visible while
// scrolling long documents. Each sentence carries a binary choice; the
// reconstructability question unlocks only once every sentence is labeled.

import { listPairs, getPair } from "./api";
import { AnnotationSession } from "./session";
import type { PairDetail, Reconstructability } from "./types";

const Q1_OPTIONS: { value: 0 | 1; label: string }[] = [
  { value: 1, label: "1: contributes to summary" },
  { value: 0, label: "0: doesn't contribute to summary" },
];

const Q2_OPTIONS: { value: Reconstructability; label: string }[] = [
  { value: "yes", label: "Yes, reconstructable" },
  { value: "partly", label: "Partly reconstructable" },
  { value: "no", label: "No, not reconstructable" },
];

export class AnnotateView {
  private root: HTMLElement;
  private session: AnnotationSession | null = null;
  private annotatorId = "";
  private onSubmitted: (() => void) | null = null;

  constructor(root: HTMLElement, onSubmitted?: () => void) {
    this.root = root;
    this.onSubmitted = onSubmitted ?? null;
  }

  async start(annotatorId: string): Promise<void> {
    this.annotatorId = annotatorId;
    await this.advance();
  }

  /** fetch the next pair still open for this annotator, or show the all-done note */
  async advance(): Promise<void> {
    const open = await listPairs(this.annotatorId);
    if (open.length === 0) {
      this.session = null;
      this.root.innerHTML = `<p class="done" data-testid="all-done">No pairs left for ${escapeHtml(this.annotatorId)}. Thank you!</p>`;
      return;
    }
    const pair = await getPair(open[0].pair_id);
    this.startPair(pair);
  }

  startPair(pair: PairDetail): void {
    this.session = new AnnotationSession(pair, this.annotatorId);
    this.render();
  }

  get currentSession(): AnnotationSession | null {
    return this.session;
  }

  render(): void {
    const session = this.session;
    if (!session) return;
    const snap = session.snapshot();
    const pair = session.pair;

    const sentences = pair.sentences
      .map((text, i) => {
        const needsLabel = snap.unlabeled.includes(i) && snap.highlightMissing;
        const options = Q1_OPTIONS.map(
          ({ value, label }) => `
            <label><input type="radio" name="q1-${i}" value="${value}"
              ${snap.labels[i] === value ? "checked" : ""}
              data-testid="label-${i}-${value}"> ${label}</label>`,
        ).join("\n");
        const fieldError = snap.fieldErrors.sentence_labels && snap.labels[i] === null
          ? `<span class="field-error">${escapeHtml(snap.fieldErrors.sentence_labels)}</span>`
          : "";
        return `
          <li class="sentence ${needsLabel ? "needs-label" : ""}" data-testid="sentence-${i}">
            <span class="sentence-text">${escapeHtml(text)}</span>
            <span class="choices">${options}</span>
            ${fieldError}
          </li>`;
      })
      .join("\n");

    const q2Options = Q2_OPTIONS.map(
      ({ value, label }) => `
        <label><input type="radio" name="q2" value="${value}"
          ${snap.verdict === value ? "checked" : ""}
          ${snap.q2Enabled ? "" : "disabled"}
          data-testid="q2-${value}"> ${label}</label>`,
    ).join("\n");

    this.root.innerHTML = `
      <div class="annotate-layout">
        <section class="document-pane">
          <h2>Summary</h2>
          <blockquote class="summary" data-testid="summary-top">${escapeHtml(pair.summary)}</blockquote>
          <h2>Document <small>(${pair.sentences.length} sentences, pair ${escapeHtml(pair.pair_id)})</small></h2>
          <ol class="sentences">${sentences}</ol>
          <fieldset class="q2" data-testid="q2" ${snap.q2Enabled ? "" : "disabled"}>
            <legend>Could you write this summary based solely on the sentences that you identified as important?</legend>
            ${q2Options}
          </fieldset>
          <button class="submit" data-testid="submit" ${snap.submitEnabled ? "" : "disabled"}>Submit annotation</button>
          ${snap.retryOffered ? '<button class="retry" data-testid="retry">Retry</button>' : ""}
          ${snap.error ? `<p class="error" data-testid="error">${escapeHtml(snap.error)}</p>` : ""}
        </section>
        <aside class="prompt-box" data-testid="summary-side">
          <h3>Prompt</h3>
          <p>${escapeHtml(pair.summary)}</p>
        </aside>
      </div>`;

    this.bind();
  }

  private bind(): void {
    const session = this.session;
    if (!session) return;
    session.pair.sentences.forEach((_, i) => {
      for (const { value } of Q1_OPTIONS) {
        const input = this.root.querySelector<HTMLInputElement>(`[data-testid="label-${i}-${value}"]`);
        input?.addEventListener("change", () => {
          session.setLabel(i, value);
          this.render();
        });
      }
    });
    for (const { value } of Q2_OPTIONS) {
      const input = this.root.querySelector<HTMLInputElement>(`[data-testid="q2-${value}"]`);
      input?.addEventListener("change", () => {
        session.setVerdict(value);
        this.render();
      });
    }
    // clicking the locked question points at what is missing
    const q2 = this.root.querySelector<HTMLElement>('[data-testid="q2"]');
    q2?.parentElement?.addEventListener("click", (event) => {
      if (!session.snapshot().q2Enabled && q2.contains(event.target as Node)) {
        session.requestQ2();
        this.render();
      }
    });
    const submit = this.root.querySelector<HTMLButtonElement>('[data-testid="submit"]');
    submit?.addEventListener("click", () => void this.submit());
    const retry = this.root.querySelector<HTMLButtonElement>('[data-testid="retry"]');
    retry?.addEventListener("click", () => void this.submit());
  }

  async submit(): Promise<void> {
    const session = this.session;
    if (!session) return;
    const accepted = await session.submit();
    if (accepted) {
      if (this.onSubmitted) this.onSubmitted();
      await this.advance();
    } else {
      this.render();
    }
  }
}

function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}
