/**
 * Typed client for the wordvec training service.
 *
 * Thin fetch wrapper: one method per endpoint, JSON in/out, service error
 * bodies ({"error": string}) surfaced as ApiError so the UI can show them
 * inline.
 */

export interface SessionConfig {
  corpus: string;
  architecture?: "cbow" | "skipgram";
  objective?: "softmax" | "hs" | "ns";
  dim?: number;
  window?: number;
  k_negatives?: number;
  eta?: number;
  seed?: number;
  min_count?: number;
}

export interface Snapshot {
  id: string;
  version: number;
  words: string[];
  counts: number[];
  architecture: string;
  objective: string;
  dim: number;
  eta: number;
  epoch: number;
  instances_done: number;
  instances_per_epoch: number;
  input_vectors: number[][];
  output_vectors: number[][];
  weights_hash: string;
}

export interface StepResult {
  version: number;
  n: number;
  mean_loss: number;
  losses: number[];
}

export interface ActivateResult {
  version: number;
  h: number[];
  scores?: number[];
  probabilities?: number[];
  activations?: number[];
}

export interface PcaPayload {
  version: number;
  words: string[];
  input: [number, number][];
  output: [number, number][];
  explained_variance: [number, number];
}

export interface Neighbor {
  word: string;
  similarity: number;
}

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function unwrap<T>(resp: Response): Promise<T> {
  const body = await resp.json();
  if (!resp.ok) {
    const message =
      body && typeof body.error === "string" ? body.error : resp.statusText;
    throw new ApiError(message, resp.status);
  }
  return body as T;
}

export class ApiClient {
  constructor(readonly baseUrl: string) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, "") + path;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return fetch(this.url(path), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    }).then((r) => unwrap<T>(r));
  }

  createSession(config: SessionConfig): Promise<Snapshot> {
    return this.post("/sessions", config);
  }

  step(id: string, n: number): Promise<StepResult> {
    return this.post(`/sessions/${id}/step`, { n });
  }

  activate(id: string, ids: number[]): Promise<ActivateResult> {
    return this.post(`/sessions/${id}/activate`, { ids });
  }

  getState(id: string): Promise<Snapshot> {
    return fetch(this.url(`/sessions/${id}/state`)).then((r) =>
      unwrap<Snapshot>(r),
    );
  }

  getPca(id: string): Promise<PcaPayload> {
    return fetch(this.url(`/sessions/${id}/pca`)).then((r) =>
      unwrap<PcaPayload>(r),
    );
  }

  setEta(id: string, eta: number): Promise<{ eta: number }> {
    return this.post(`/sessions/${id}/eta`, { eta });
  }

  neighbors(id: string, word: string, k: number): Promise<{ word: string; neighbors: Neighbor[] }> {
    const params = new URLSearchParams({ word, k: String(k) });
    return fetch(this.url(`/sessions/${id}/neighbors?${params}`)).then((r) =>
      unwrap(r),
    );
  }

  deleteSession(id: string): Promise<{ deleted: string }> {
    return fetch(this.url(`/sessions/${id}`), { method: "DELETE" }).then((r) =>
      unwrap(r),
    );
  }
}
