import type { SeminarApi } from "./api.js";
import type { AppState } from "./state.js";

export interface ViewContext {
  api: SeminarApi;
  state: AppState;
  /** Change route (and re-render). */
  navigate(hash: string): void;
  /** Re-render the current route from fresh API responses. */
  refresh(): Promise<void>;
}
