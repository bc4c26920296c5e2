/** Session id persistence so a reload resumes the same chat history. */

const STORAGE_KEY = "topochat.session";

interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
}

function freshId(): string {
  const rng = globalThis.crypto;
  if (rng && typeof rng.randomUUID === "function") return rng.randomUUID();
  // last resort for ancient runtimes
  return `s-${Date.now().toString(36)}-${Math.random().toString(36).slice(2, 10)}`;
}

export function getOrCreateSessionId(storage: StorageLike): string {
  const existing = storage.getItem(STORAGE_KEY);
  if (existing && existing.length > 0) return existing;
  const created = freshId();
  storage.setItem(STORAGE_KEY, created);
  return created;
}

export { STORAGE_KEY };
