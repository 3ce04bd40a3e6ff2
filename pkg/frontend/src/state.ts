import type { RoleName } from "./api.js";

export interface SessionInfo {
  token: string;
  role: RoleName;
}

const STORAGE_KEY = "seminar.session";

/**
 * Session lives in memory and survives reloads via sessionStorage; logout
 * clears both. Everything else (themes, queues, schedule) is refetched
 * from the API whenever a view renders.
 */
export class AppState {
  session: SessionInfo | null = null;

  constructor(private readonly storage: Storage | null = defaultStorage()) {
    this.restore();
  }

  restore(): void {
    if (!this.storage) return;
    const raw = this.storage.getItem(STORAGE_KEY);
    if (!raw) return;
    try {
      const parsed = JSON.parse(raw) as SessionInfo;
      if (parsed && typeof parsed.token === "string") this.session = parsed;
    } catch {
      this.storage.removeItem(STORAGE_KEY);
    }
  }

  save(session: SessionInfo): void {
    this.session = session;
    this.storage?.setItem(STORAGE_KEY, JSON.stringify(session));
  }

  clear(): void {
    this.session = null;
    this.storage?.removeItem(STORAGE_KEY);
  }

  get isAdmin(): boolean {
    return this.session?.role === "administrator";
  }
}

function defaultStorage(): Storage | null {
  try {
    return typeof sessionStorage === "undefined" ? null : sessionStorage;
  } catch {
    return null;
  }
}
