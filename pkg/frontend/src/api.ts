/** Typed client for the topochat HTTP API. */

export interface Citation {
  kind: string;
  value: string;
  url: string | null;
}

export interface LiteratureRef {
  doi: string;
  title: string;
  question: string;
  distance: number;
}

export interface ChatAnswerBody {
  answer: string;
  citations: Citation[];
  cypher: string | null;
  kg_rows: Array<Record<string, unknown>>;
  literature: LiteratureRef[];
  trace_id: string;
}

export interface GraphNode {
  id: number;
  cate: string;
  name: string;
  attrs: Record<string, unknown>;
}

export interface GraphEdge {
  id: number;
  src: number;
  dst: number;
  etype: string;
  rel_value: string | null;
}

export interface Neighbor {
  edge: GraphEdge;
  node: GraphNode;
}

export interface SearchResponse {
  node: GraphNode;
  neighbors: Neighbor[];
}

export interface HistoryEntry {
  question: string;
  answer: string;
  trace_id: string;
  timestamp: number;
}

export interface HistoryResponse {
  session_id: string;
  entries: HistoryEntry[];
}

export interface GraphStats {
  nodes: Record<string, number>;
  edges: Record<string, number>;
  total_nodes: number;
  total_edges: number;
}

export const MATERIAL_URL_PREFIX = "http://materiae.iphy.ac.cn/materials/";

export function materialUrl(matID: string): string {
  return MATERIAL_URL_PREFIX + matID;
}

/** Best-effort link for a citation; every kind resolves somewhere. */
export function citationHref(citation: Citation): string {
  if (citation.url) return citation.url;
  if (citation.kind === "doi") return `https://doi.org/${citation.value}`;
  if (citation.kind === "material") return materialUrl(citation.value);
  return citation.value;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
    this.name = "ApiError";
  }
}

async function errorDetail(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { detail?: unknown };
    if (typeof body.detail === "string") return body.detail;
    return JSON.stringify(body);
  } catch {
    return response.statusText || "request failed";
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path, init);
    if (!response.ok) {
      throw new ApiError(response.status, await errorDetail(response));
    }
    return (await response.json()) as T;
  }

  chat(question: string, sessionId: string): Promise<ChatAnswerBody> {
    return this.request<ChatAnswerBody>("/api/chat", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ question, session_id: sessionId }),
    });
  }

  searchNode(cate: string, name: string): Promise<SearchResponse> {
    const params = new URLSearchParams({ cate, name });
    return this.request<SearchResponse>(`/api/graph/search?${params}`);
  }

  /** Expansion reuses the search endpoint keyed by the node's identity. */
  expandNode(node: GraphNode): Promise<SearchResponse> {
    return this.searchNode(node.cate, node.name);
  }

  stats(): Promise<GraphStats> {
    return this.request<GraphStats>("/api/graph/stats");
  }

  recommended(): Promise<string[]> {
    return this.request<string[]>("/api/questions/recommended");
  }

  history(sessionId: string): Promise<HistoryResponse> {
    const params = new URLSearchParams({ session_id: sessionId });
    return this.request<HistoryResponse>(`/api/history?${params}`);
  }

  heights(coupling: string = "SOC"): Promise<Array<Record<string, unknown>>> {
    const params = new URLSearchParams({ coupling });
    return this.request<Array<Record<string, unknown>>>(
      `/api/analysis/heights?${params}`,
    );
  }
}
