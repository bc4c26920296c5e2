/** Graph exploration state. Pure reducer over API responses: a search
 * starts a fresh neighborhood, an expansion merges exactly the
 * server-reported neighbors, never duplicating visible nodes. */

import type { GraphEdge, GraphNode, SearchResponse } from "./api.js";

export interface GraphViewState {
  nodes: GraphNode[];
  edges: GraphEdge[];
  selected: number | null;
  query: string;
  cate: string;
  error: string | null;
}

export type GraphEvent =
  | { type: "query_changed"; text: string }
  | { type: "cate_changed"; cate: string }
  | { type: "search_succeeded"; payload: SearchResponse }
  | { type: "expand_succeeded"; payload: SearchResponse }
  | { type: "search_failed"; status: number; detail: string }
  | { type: "node_selected"; id: number };

export function initialGraphView(): GraphViewState {
  return {
    nodes: [],
    edges: [],
    selected: null,
    query: "",
    cate: "Formula",
    error: null,
  };
}

function payloadNodes(payload: SearchResponse): GraphNode[] {
  return [payload.node, ...payload.neighbors.map((n) => n.node)];
}

function mergeById<T extends { id: number }>(base: T[], extra: T[]): T[] {
  const seen = new Set(base.map((item) => item.id));
  const merged = [...base];
  for (const item of extra) {
    if (!seen.has(item.id)) {
      seen.add(item.id);
      merged.push(item);
    }
  }
  return merged;
}

export function graphReducer(
  state: GraphViewState,
  event: GraphEvent,
): GraphViewState {
  switch (event.type) {
    case "query_changed":
      return { ...state, query: event.text };
    case "cate_changed":
      return { ...state, cate: event.cate };
    case "search_succeeded":
      return {
        ...state,
        nodes: mergeById([], payloadNodes(event.payload)),
        edges: mergeById(
          [],
          event.payload.neighbors.map((n) => n.edge),
        ),
        selected: event.payload.node.id,
        error: null,
      };
    case "expand_succeeded":
      return {
        ...state,
        nodes: mergeById(state.nodes, payloadNodes(event.payload)),
        edges: mergeById(
          state.edges,
          event.payload.neighbors.map((n) => n.edge),
        ),
        selected: event.payload.node.id,
        error: null,
      };
    case "search_failed":
      return {
        ...state,
        error:
          event.status === 404
            ? `Not found: ${event.detail}`
            : `Search failed (${event.status}): ${event.detail}`,
      };
    case "node_selected":
      return { ...state, selected: event.id };
  }
}

export function replayGraph(log: GraphEvent[]): GraphViewState {
  return log.reduce(graphReducer, initialGraphView());
}
