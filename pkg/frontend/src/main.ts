/** Browser entry point: wires the API client to the reducers and
 * re-renders on every event. State lives only in the event fold. */

import { ApiClient, ApiError } from "./api.js";
import type { GraphNode } from "./api.js";
import { chatReducer, initialChat } from "./chat.js";
import type { ChatEvent, ChatState } from "./chat.js";
import { graphReducer, initialGraphView } from "./graphview.js";
import type { GraphEvent, GraphViewState } from "./graphview.js";
import {
  renderChat,
  renderComposer,
  renderGraph,
  renderRecommended,
  renderSearchBox,
} from "./render.js";
import { getOrCreateSessionId } from "./session.js";

function asFailure(err: unknown): { status: number; detail: string } {
  if (err instanceof ApiError) return { status: err.status, detail: err.detail };
  return { status: 0, detail: err instanceof Error ? err.message : String(err) };
}

export function boot(root: HTMLElement): void {
  const doc = root.ownerDocument;
  // same-origin by default; data-api-base lets the static page target
  // an API served elsewhere (the server allows cross-origin reads)
  const api = new ApiClient(root.dataset["apiBase"] ?? "");
  const sessionId = getOrCreateSessionId(window.localStorage);

  let chat: ChatState = initialChat(sessionId);
  let graph: GraphViewState = initialGraphView();
  let draft = "";

  const chatMount = doc.createElement("section");
  chatMount.className = "chat-column";
  const graphMount = doc.createElement("section");
  graphMount.className = "graph-column";
  root.appendChild(chatMount);
  root.appendChild(graphMount);

  function dispatchChat(event: ChatEvent): void {
    chat = chatReducer(chat, event);
    paintChat();
  }

  function dispatchGraph(event: GraphEvent): void {
    graph = graphReducer(graph, event);
    paintGraph();
  }

  function sendQuestion(text: string): void {
    if (chat.pending || !text.trim()) return;
    draft = "";
    dispatchChat({ type: "question_sent", text });
    api
      .chat(text, chat.sessionId)
      .then((body) => dispatchChat({ type: "answer_received", body }))
      .catch((err) =>
        dispatchChat({ type: "request_failed", ...asFailure(err) }),
      );
  }

  function runSearch(cate: string, name: string): void {
    dispatchGraph({ type: "query_changed", text: name });
    dispatchGraph({ type: "cate_changed", cate });
    api
      .searchNode(cate, name)
      .then((payload) => dispatchGraph({ type: "search_succeeded", payload }))
      .catch((err) =>
        dispatchGraph({ type: "search_failed", ...asFailure(err) }),
      );
  }

  function expand(node: GraphNode): void {
    api
      .expandNode(node)
      .then((payload) => dispatchGraph({ type: "expand_succeeded", payload }))
      .catch((err) =>
        dispatchGraph({ type: "search_failed", ...asFailure(err) }),
      );
  }

  function paintChat(): void {
    chatMount.textContent = "";
    chatMount.appendChild(
      renderRecommended(chat, doc, (question) => sendQuestion(question)),
    );
    chatMount.appendChild(renderChat(chat, doc));
    chatMount.appendChild(
      renderComposer(chat, draft, doc, { onSend: (text) => sendQuestion(text) }),
    );
  }

  function paintGraph(): void {
    graphMount.textContent = "";
    graphMount.appendChild(renderSearchBox(graph, doc, runSearch));
    graphMount.appendChild(
      renderGraph(graph, doc, {
        onExpand: (node) => expand(node),
        onSelect: (id) => dispatchGraph({ type: "node_selected", id }),
      }),
    );
  }

  paintChat();
  paintGraph();

  api
    .recommended()
    .then((questions) =>
      dispatchChat({ type: "recommended_loaded", questions }),
    )
    .catch(() => undefined);
  api
    .history(sessionId)
    .then((body) => dispatchChat({ type: "history_loaded", entries: body.entries }))
    .catch(() => undefined);
}
