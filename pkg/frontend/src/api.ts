// thin client for the service endpoints; every number the UI displays comes
// from here, never from local computation

import type { AgreementReport, AnnotationPayload, PairDetail, PairListingEntry, ScoreVector } from "./types";

export class ApiError extends Error {
  constructor(
    public status: number,
    public fieldErrors: Record<string, string>,
    message: string,
  ) {
    super(message);
  }
}

async function getJson<T>(url: string): Promise<T> {
  const resp = await fetch(url);
  const body = await resp.json();
  if (!resp.ok) {
    throw new ApiError(resp.status, body.errors ?? {}, body.error ?? `GET ${url} failed (${resp.status})`);
  }
  return body as T;
}

export async function listPairs(annotator?: string): Promise<PairListingEntry[]> {
  const query = annotator ? `?annotator=${encodeURIComponent(annotator)}` : "";
  const body = await getJson<{ pairs: PairListingEntry[] }>(`/pairs${query}`);
  return body.pairs;
}

export function getPair(pairId: string): Promise<PairDetail> {
  return getJson<PairDetail>(`/pairs/${encodeURIComponent(pairId)}`);
}

export function getScores(pairId: string, method: string): Promise<ScoreVector> {
  return getJson<ScoreVector>(`/pairs/${encodeURIComponent(pairId)}/scores?method=${encodeURIComponent(method)}`);
}

export function getAgreement(): Promise<AgreementReport> {
  return getJson<AgreementReport>("/agreement");
}

export async function submitAnnotation(payload: AnnotationPayload): Promise<void> {
  const resp = await fetch(`/pairs/${encodeURIComponent(payload.pair_id)}/annotations`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(payload),
  });
  if (resp.status === 201) return;
  const body = await resp.json().catch(() => ({}));
  throw new ApiError(resp.status, body.errors ?? {}, `submission rejected (${resp.status})`);
}
