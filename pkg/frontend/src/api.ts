/**
 * Typed client for the seminar service API. Every call returns the parsed
 * JSON body or throws ApiError carrying the server's (status, code, message).
 */

export type RoleName = "administrator" | "student";

export interface LoginResponse {
  token: string;
  role: RoleName;
  expires_at: string;
}

export interface ThemeRow {
  id: number;
  title: string;
  summary: string;
  keywords: string[];
  references: string[];
  proposer_id: number;
  status: "pending" | "approved" | "rejected" | "deleted";
  max_students: number | null;
  fixed_week: number | null;
  deadline_week: number | null;
  created_at: string;
  assigned_count: number;
  remaining_capacity: number | null;
  selected_by_me: boolean;
}

export interface ThemeDraft {
  title: string;
  summary: string;
  keywords: string[];
  references: string[];
  proposed_week: number | null;
}

export interface FileRecord {
  id: number;
  theme_id: number;
  uploader_id: number;
  filename: string;
  content_hash: string;
  size_bytes: number;
  status: "pending" | "approved" | "rejected";
  created_at: string;
}

export interface Policy {
  max_choices_per_student: number;
  per_week_capacity: number;
  num_weeks: number;
  proposal_open: boolean;
  selection_opens_at: string | null;
}

export interface PlanResult {
  placement: Record<string, number>;
  max_weekly_load: number;
  loads: Record<string, number>;
}

export interface BoardRow {
  assignment_id: number;
  student_id: number;
  student_name: string;
  theme_id: number;
  theme_title: string;
}

export interface Board {
  num_weeks: number;
  per_week_capacity: number;
  weeks: Record<string, BoardRow[]>;
  unscheduled: BoardRow[];
}

export interface UserInfo {
  id: number;
  email: string;
  display_name: string;
  role: RoleName;
  assignment_count?: number;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class SeminarApi {
  token: string | null = null;

  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(
    method: string,
    path: string,
    options: { json?: unknown; form?: FormData } = {},
  ): Promise<T> {
    const headers: Record<string, string> = {};
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    let body: BodyInit | undefined;
    if (options.json !== undefined) {
      headers["Content-Type"] = "application/json";
      body = JSON.stringify(options.json);
    } else if (options.form) {
      body = options.form;
    }
    const response = await this.fetchImpl(this.base + path, { method, headers, body });
    if (response.status === 204) return undefined as T;
    const isJson = (response.headers.get("content-type") ?? "").includes("json");
    const payload = isJson ? await response.json() : await response.text();
    if (!response.ok) {
      const code = typeof payload === "object" && payload ? payload.code : "UnknownError";
      const message =
        typeof payload === "object" && payload ? payload.message : String(payload);
      throw new ApiError(response.status, code ?? "UnknownError", message ?? "request failed");
    }
    return payload as T;
  }

  async login(email: string, password: string): Promise<LoginResponse> {
    const result = await this.request<LoginResponse>("POST", "/api/login", {
      json: { email, password },
    });
    this.token = result.token;
    return result;
  }

  async logout(): Promise<void> {
    await this.request<void>("POST", "/api/logout");
    this.token = null;
  }

  me(): Promise<UserInfo> {
    return this.request("GET", "/api/me");
  }

  patchMe(patch: {
    display_name?: string;
    email?: string;
    new_password?: string;
  }): Promise<UserInfo> {
    return this.request("PATCH", "/api/me", { json: patch });
  }

  getPolicy(): Promise<Policy> {
    return this.request("GET", "/api/policy");
  }

  patchPolicy(patch: Partial<Policy>): Promise<Policy> {
    return this.request("PATCH", "/api/policy", { json: patch });
  }

  listThemes(): Promise<ThemeRow[]> {
    return this.request("GET", "/api/themes");
  }

  propose(draft: ThemeDraft, extra: { max_students?: number; fixed_week?: number } = {}):
      Promise<ThemeRow> {
    return this.request("POST", "/api/themes", { json: { ...draft, ...extra } });
  }

  reviewTheme(
    themeId: number,
    body: {
      decision: "approve" | "reject";
      max_students?: number;
      deadline_week?: number;
      fixed_week?: number;
    },
  ): Promise<ThemeRow> {
    return this.request("POST", `/api/themes/${themeId}/review`, { json: body });
  }

  deleteTheme(themeId: number): Promise<ThemeRow> {
    return this.request("DELETE", `/api/themes/${themeId}`);
  }

  select(themeId: number): Promise<unknown> {
    return this.request("POST", `/api/themes/${themeId}/select`);
  }

  withdraw(themeId: number): Promise<unknown> {
    return this.request("DELETE", `/api/themes/${themeId}/select`);
  }

  listFiles(themeId: number): Promise<FileRecord[]> {
    return this.request("GET", `/api/themes/${themeId}/files`);
  }

  uploadFile(themeId: number, file: File): Promise<FileRecord> {
    const form = new FormData();
    form.append("file", file);
    return this.request("POST", `/api/themes/${themeId}/files`, { form });
  }

  pendingFiles(): Promise<FileRecord[]> {
    return this.request("GET", "/api/files/pending");
  }

  reviewFile(fileId: number, decision: "approve" | "reject"): Promise<FileRecord> {
    return this.request("POST", `/api/files/${fileId}/review`, { json: { decision } });
  }

  plan(): Promise<PlanResult> {
    return this.request("POST", "/api/schedule/plan");
  }

  schedule(): Promise<Board> {
    return this.request("GET", "/api/schedule");
  }
}
