// score inspection: per-method heat shading over the sentences, top-k rank
// badges appended to each sentence, and a gold overlay that marks the
// annotated source sentences

import { getPair, getScores } from "./api";
import { normalize, rankBadges, shadeColor } from "./shading";
import type { PairDetail, ScoreVector } from "./types";

export const INSPECTABLE_METHODS = [
  "rouge",
  "lexrank",
  "bertscore",
  "embedding_cosine",
  "prompt_llm",
  "pmi",
  "cross_attention",
  "perplexity_gain",
];

interface MethodScores {
  vector: ScoreVector | null;
  reason: string;
}

export class InspectView {
  private root: HTMLElement;
  private pair: PairDetail | null = null;
  private selected: string[] = [];
  private scores = new Map<string, MethodScores>();
  private goldOverlay = false;

  constructor(root: HTMLElement) {
    this.root = root;
  }

  async load(pairId: string, methods: string[]): Promise<void> {
    this.pair = await getPair(pairId);
    this.selected = [...methods];
    this.scores.clear();
    for (const method of methods) {
      try {
        const vector = await getScores(pairId, method);
        this.scores.set(method, { vector, reason: "" });
      } catch (err) {
        this.scores.set(method, { vector: null, reason: err instanceof Error ? err.message : String(err) });
      }
    }
    this.render();
  }

  toggleGold(on: boolean): void {
    this.goldOverlay = on;
    this.render();
  }

  /** top-k badge count: the pair's gold source count when known, else 3 */
  badgeCount(): number {
    const gold = this.pair?.gold;
    if (gold) {
      const k = gold.binary_sources.filter(Boolean).length;
      if (k > 0) return k;
    }
    return 3;
  }

  render(): void {
    const pair = this.pair;
    if (!pair) return;
    const k = this.badgeCount();
    const active = this.selected.filter((m) => this.scores.get(m)?.vector);
    const shading = new Map<string, number[]>();
    const badges = new Map<string, (number | null)[]>();
    for (const method of active) {
      const vector = this.scores.get(method)!.vector!;
      shading.set(method, normalize(vector.scores));
      badges.set(method, rankBadges(vector.scores, k));
    }

    const goldSet = new Set<number>();
    if (this.goldOverlay && pair.gold) {
      pair.gold.binary_sources.forEach((isSource, i) => {
        if (isSource) goldSet.add(i);
      });
    }

    const rows = pair.sentences
      .map((text, i) => {
        const cells = active
          .map((method) => {
            const intensity = shading.get(method)![i];
            const rank = badges.get(method)![i];
            const badge = rank === null ? "" : `<span class="badge" data-testid="badge-${method}-${i}">${method}#${rank}</span>`;
            return `<td class="score-cell" data-testid="cell-${method}-${i}"
              style="background:${shadeColor(intensity)}">${badge}</td>`;
          })
          .join("");
        const goldClass = goldSet.has(i) ? "gold-source" : "";
        return `<tr class="${goldClass}" data-testid="row-${i}">
          <td class="sentence-cell">${escapeHtml(text)}</td>${cells}</tr>`;
      })
      .join("\n");

    const unavailable = this.selected
      .filter((m) => !this.scores.get(m)?.vector)
      .map(
        (m) => `<li class="method-unavailable" data-testid="unavailable-${m}">
          ${escapeHtml(m)}: ${escapeHtml(this.scores.get(m)?.reason ?? "no scores")}</li>`,
      )
      .join("\n");

    this.root.innerHTML = `
      <h2>Summary</h2>
      <blockquote class="summary">${escapeHtml(pair.summary)}</blockquote>
      <label class="gold-toggle"><input type="checkbox" data-testid="gold-toggle"
        ${this.goldOverlay ? "checked" : ""} ${pair.gold ? "" : "disabled"}>
        show gold source sentences${pair.gold ? "" : " (no annotations yet)"}</label>
      <table class="inspection">
        <thead><tr><th>sentence</th>${active.map((m) => `<th>${escapeHtml(m)}</th>`).join("")}</tr></thead>
        <tbody>${rows}</tbody>
      </table>
      ${unavailable ? `<ul class="unavailable">${unavailable}</ul>` : ""}`;

    const toggle = this.root.querySelector<HTMLInputElement>('[data-testid="gold-toggle"]');
    toggle?.addEventListener("change", () => this.toggleGold(toggle.checked));
  }
}

function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}
