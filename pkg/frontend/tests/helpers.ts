import { SeminarApi } from "../src/api.js";
import type { Board, FileRecord, Policy, ThemeRow } from "../src/api.js";
import { AppState } from "../src/state.js";
import type { ViewContext } from "../src/context.js";

export interface RecordedCall {
  method: string;
  path: string;
  body: unknown;
}

type Handler = (call: RecordedCall) => { status?: number; json?: unknown };

/** Route-table fetch stub: the only backend the view tests ever talk to. */
export class FakeBackend {
  calls: RecordedCall[] = [];
  private handlers = new Map<string, Handler>();

  on(method: string, path: string, handler: Handler | unknown): void {
    let fn: Handler;
    if (typeof handler === "function") {
      fn = handler as Handler;
    } else if (
      handler !== null && typeof handler === "object" && !Array.isArray(handler)
      && ("status" in handler || "json" in handler)
    ) {
      fn = () => handler as { status?: number; json?: unknown };
    } else {
      fn = () => ({ json: handler });
    }
    this.handlers.set(`${method} ${path}`, fn);
  }

  fetch = async (input: string, init?: RequestInit): Promise<Response> => {
    const method = init?.method ?? "GET";
    let body: unknown = undefined;
    if (typeof init?.body === "string") {
      try {
        body = JSON.parse(init.body);
      } catch {
        body = init.body;
      }
    }
    const call: RecordedCall = { method, path: input, body };
    this.calls.push(call);
    const handler = this.handlers.get(`${method} ${input}`);
    if (!handler) {
      return jsonResponse(404, { code: "NotFound", message: `no stub for ${method} ${input}` });
    }
    const outcome = handler(call) ?? {};
    const status = outcome.status ?? 200;
    return jsonResponse(status, outcome.json ?? {});
  };

  callsTo(method: string, path: string): RecordedCall[] {
    return this.calls.filter((c) => c.method === method && c.path === path);
  }
}

function jsonResponse(status: number, payload: unknown): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { "content-type": "application/json" },
  });
}

export const defaultPolicy: Policy = {
  max_choices_per_student: 1,
  per_week_capacity: 6,
  num_weeks: 7,
  proposal_open: true,
  selection_opens_at: null,
};

export function makeTheme(id: number, overrides: Partial<ThemeRow> = {}): ThemeRow {
  return {
    id,
    title: `Theme ${id}`,
    summary: `Summary of theme ${id}`,
    keywords: ["news"],
    references: ["Some book"],
    proposer_id: 1,
    status: "approved",
    max_students: 1,
    fixed_week: null,
    deadline_week: null,
    created_at: "2026-03-01T09:00:00+00:00",
    assigned_count: 0,
    remaining_capacity: 1,
    selected_by_me: false,
    ...overrides,
  };
}

/** The pilot-cohort listing: 41 approved themes. */
export function paperThemes(): ThemeRow[] {
  return Array.from({ length: 41 }, (_, i) => makeTheme(i + 1));
}

export function makeFile(id: number, overrides: Partial<FileRecord> = {}): FileRecord {
  return {
    id,
    theme_id: 1,
    uploader_id: 2,
    filename: `upload-${id}.pdf`,
    content_hash: "ab".repeat(32),
    size_bytes: 2048,
    status: "pending",
    created_at: "2026-03-02T10:00:00+00:00",
    ...overrides,
  };
}

export function makeBoard(counts: number[], capacity = 6): Board {
  const weeks: Record<string, Board["weeks"][string]> = {};
  let assignment = 1;
  counts.forEach((count, index) => {
    weeks[String(index + 1)] = Array.from({ length: count }, () => ({
      assignment_id: assignment,
      student_id: assignment,
      student_name: `Student ${assignment}`,
      theme_id: assignment,
      theme_title: `Theme ${assignment++}`,
    }));
  });
  return {
    num_weeks: counts.length,
    per_week_capacity: capacity,
    weeks,
    unscheduled: [],
  };
}

export interface TestContext {
  ctx: ViewContext;
  api: SeminarApi;
  state: AppState;
  backend: FakeBackend;
  refreshes: () => number;
  navigations: string[];
}

export function makeContext(backend: FakeBackend,
                            role: "administrator" | "student" | null,
                            rerender?: (ctx: ViewContext) => Promise<HTMLElement>): TestContext {
  const api = new SeminarApi("", backend.fetch);
  const state = new AppState(null);
  if (role) {
    state.save({ token: "test-token", role });
    api.token = "test-token";
  }
  let refreshCount = 0;
  const navigations: string[] = [];
  const ctx: ViewContext = {
    api,
    state,
    navigate: (hash) => navigations.push(hash),
    refresh: async () => {
      refreshCount += 1;
      if (rerender) await rerender(ctx);
    },
  };
  return { ctx, api, state, backend, refreshes: () => refreshCount, navigations };
}

/** Let queued promise chains inside event handlers settle. */
export async function flush(rounds = 6): Promise<void> {
  for (let i = 0; i < rounds; i += 1) {
    await new Promise((resolve) => setTimeout(resolve, 0));
  }
}
