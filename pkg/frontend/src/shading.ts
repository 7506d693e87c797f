// presentation helpers for score inspection: a monotone score -> color map
// and the service's ranking convention (descending score, earlier sentence
// wins ties) for badge numbers

export function normalize(scores: number[]): number[] {
  const lo = Math.min(...scores);
  const hi = Math.max(...scores);
  if (hi === lo) return scores.map(() => 0.5);
  return scores.map((s) => (s - lo) / (hi - lo));
}

export function shadeColor(intensity: number): string {
  // white -> saturated green, strictly increasing in the score
  const alpha = 0.08 + 0.72 * Math.max(0, Math.min(1, intensity));
  return `rgba(46, 160, 67, ${alpha.toFixed(3)})`;
}

export function ranking(scores: number[]): number[] {
  return scores
    .map((score, index) => ({ score, index }))
    .sort((a, b) => (b.score - a.score) || (a.index - b.index))
    .map((entry) => entry.index);
}

/** rank per sentence (1 = best), limited to the top k; others get null */
export function rankBadges(scores: number[], k: number): (number | null)[] {
  const badges: (number | null)[] = new Array(scores.length).fill(null);
  ranking(scores)
    .slice(0, Math.max(0, k))
    .forEach((sentence, position) => {
      badges[sentence] = position + 1;
    });
  return badges;
}
