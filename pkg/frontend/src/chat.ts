/** Chat panel state. Pure reducer: the view is a function of the
 * event log, so replaying the same responses reproduces the UI. */

import type { ChatAnswerBody, Citation, HistoryEntry } from "./api.js";

export interface Turn {
  role: "user" | "assistant" | "error";
  text: string;
  citations: Citation[];
}

export interface ChatState {
  sessionId: string;
  turns: Turn[];
  pending: boolean;
  recommended: string[];
}

export type ChatEvent =
  | { type: "recommended_loaded"; questions: string[] }
  | { type: "history_loaded"; entries: HistoryEntry[] }
  | { type: "question_sent"; text: string }
  | { type: "answer_received"; body: ChatAnswerBody }
  | { type: "request_failed"; status: number; detail: string };

export function initialChat(sessionId: string): ChatState {
  return { sessionId, turns: [], pending: false, recommended: [] };
}

export function failureText(status: number, detail: string): string {
  if (status === 429) return "The server is busy, please retry shortly.";
  return `Request failed (${status}): ${detail}`;
}

export function chatReducer(state: ChatState, event: ChatEvent): ChatState {
  switch (event.type) {
    case "recommended_loaded":
      return { ...state, recommended: [...event.questions] };
    case "history_loaded": {
      // boot-time restore: prior turns come back as user/assistant pairs
      const turns: Turn[] = event.entries.flatMap((entry) => [
        { role: "user" as const, text: entry.question, citations: [] },
        { role: "assistant" as const, text: entry.answer, citations: [] },
      ]);
      return { ...state, turns };
    }
    case "question_sent":
      return {
        ...state,
        pending: true,
        turns: [
          ...state.turns,
          { role: "user", text: event.text, citations: [] },
        ],
      };
    case "answer_received":
      return {
        ...state,
        pending: false,
        turns: [
          ...state.turns,
          {
            role: "assistant",
            text: event.body.answer,
            citations: [...event.body.citations],
          },
        ],
      };
    case "request_failed":
      return {
        ...state,
        pending: false,
        turns: [
          ...state.turns,
          {
            role: "error",
            text: failureText(event.status, event.detail),
            citations: [],
          },
        ],
      };
  }
}

export function canSend(state: ChatState, draft: string): boolean {
  return !state.pending && draft.trim().length > 0;
}

export function replayChat(sessionId: string, log: ChatEvent[]): ChatState {
  return log.reduce(chatReducer, initialChat(sessionId));
}
