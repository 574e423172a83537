/** Typed client for the seedlex HTTP API. The UI performs no similarity
 * math of its own; every number shown comes from the server. */

export interface WordScore {
  word: string;
  score: number;
  surviving: number;
  total: number;
}

export interface GraphNode {
  word: string;
  depth: number;
  discovery_score: number;
  occurrence_count: number;
}

export interface GraphEdge {
  from: string;
  to: string;
  weight: number;
}

export interface GraphJson {
  nodes: GraphNode[];
  edges: GraphEdge[];
}

export type Label = "accepted" | "rejected" | "unreviewed";

export interface Snippet {
  doc_id: number;
  text: string;
  token_char_start: number | null;
  token_char_end: number | null;
}

export interface SessionCreateParams {
  seed: string;
  seed_doc_ids?: number[];
  k?: number;
  n?: number;
  m?: number | null;
  max_depth?: number;
  min_sim?: number;
  min_count?: number;
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private readonly fetchFn: FetchLike;

  constructor(private readonly baseUrl = "", fetchFn?: FetchLike) {
    this.fetchFn = fetchFn ?? ((input, init) => globalThis.fetch(input, init));
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(this.baseUrl + path, init);
    if (!response.ok) {
      let detail = `${response.status}`;
      try {
        const payload = await response.json();
        if (payload && typeof payload.detail === "string") detail = payload.detail;
      } catch {
        /* non-JSON error body */
      }
      throw new ApiError(response.status, detail);
    }
    if (response.status === 204) return undefined as T;
    return (await response.json()) as T;
  }

  healthz(): Promise<{ status: string }> {
    return this.request("GET", "/healthz");
  }

  createSession(params: SessionCreateParams): Promise<{ session_id: string }> {
    return this.request("POST", "/sessions", params);
  }

  runSession(sessionId: string): Promise<{ status: string }> {
    return this.request("POST", `/sessions/${sessionId}/run`);
  }

  stepSession(sessionId: string): Promise<{ discovered: WordScore[]; status: string }> {
    return this.request("POST", `/sessions/${sessionId}/step`);
  }

  graph(sessionId: string): Promise<GraphJson> {
    return this.request("GET", `/sessions/${sessionId}/graph`);
  }

  results(sessionId: string): Promise<WordScore[]> {
    return this.request("GET", `/sessions/${sessionId}/results`);
  }

  labels(sessionId: string): Promise<Record<string, Label>> {
    return this.request("GET", `/sessions/${sessionId}/labels`);
  }

  setLabel(sessionId: string, word: string, label: Label): Promise<void> {
    return this.request("POST", `/sessions/${sessionId}/labels`, { word, label });
  }

  /** Reseed from accepted words; `k` retunes exploration for the child. */
  reseed(sessionId: string, k?: number): Promise<{ new_session_id: string }> {
    return this.request("POST", `/sessions/${sessionId}/reseed`,
                        k === undefined ? {} : { k });
  }

  /** Wordpiece fragments contain '#', so the token must be URL-encoded. */
  snippets(token: string, limit?: number): Promise<Snippet[]> {
    const query = limit === undefined ? "" : `?limit=${limit}`;
    return this.request("GET", `/words/${encodeURIComponent(token)}/snippets${query}`);
  }
}
