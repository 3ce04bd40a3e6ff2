import { ApiError } from "../api.js";
import type { Policy, ThemeRow } from "../api.js";
import { clear, el, showError } from "../dom.js";
import type { ViewContext } from "../context.js";

interface RowNote {
  themeId: number;
  message: string;
}

/**
 * The theme list: one row per visible theme with capacity, week badges and,
 * for students, Select/Withdraw plus a files panel on held themes. Every
 * mutation refetches the listing so the table always mirrors the API.
 */
export async function renderThemeList(ctx: ViewContext): Promise<HTMLElement> {
  const container = el("section", { class: "themes" });
  await reload(ctx, container);
  return container;
}

async function reload(ctx: ViewContext, container: HTMLElement, note?: RowNote):
    Promise<void> {
  const [themes, policy] = await Promise.all([
    ctx.api.listThemes(),
    ctx.api.getPolicy(),
  ]);
  clear(container);
  container.append(buildTable(ctx, container, themes, policy, note));
}

function buildTable(ctx: ViewContext, container: HTMLElement, themes: ThemeRow[],
                    policy: Policy, note?: RowNote): HTMLElement {
  const isAdmin = ctx.state.isAdmin;
  const held = themes.filter((t) => t.selected_by_me).length;
  const quotaReached = held >= policy.max_choices_per_student;

  const section = el("div", {});
  section.append(
    el("h2", {}, "Themes"),
    el(
      "p",
      { class: "muted" },
      isAdmin
        ? `${themes.length} themes (pending included)`
        : `${themes.length} themes; you hold ${held} of ${policy.max_choices_per_student}`,
    ),
  );

  const body = el("tbody", {});
  for (const theme of themes) {
    body.append(buildRow(ctx, container, theme, quotaReached, isAdmin));
  }
  section.append(
    el(
      "table",
      { class: "theme-table" },
      el(
        "thead",
        {},
        el(
          "tr",
          {},
          el("th", {}, "Week"),
          el("th", {}, "Theme"),
          el("th", {}, "Seats"),
          el("th", {}, isAdmin ? "Status" : "Action"),
        ),
      ),
      body,
    ),
  );
  if (note) {
    const row = section.querySelector<HTMLElement>(
      `[data-theme-row][data-theme-id="${note.themeId}"]`,
    );
    if (row) {
      const cell = row.querySelector<HTMLElement>("[data-action-cell]") ?? row;
      showError(cell, note.message);
    }
  }
  return section;
}

function weekBadge(theme: ThemeRow): HTMLElement | string {
  if (theme.fixed_week !== null) {
    return el("span", { class: "badge week" }, `week ${theme.fixed_week}`);
  }
  if (theme.deadline_week !== null) {
    return el("span", { class: "badge deadline" }, `due by week ${theme.deadline_week}`);
  }
  return "—";
}

function buildRow(ctx: ViewContext, container: HTMLElement, theme: ThemeRow,
                  quotaReached: boolean, isAdmin: boolean): HTMLElement {
  const full = theme.remaining_capacity !== null && theme.remaining_capacity <= 0;

  const titleCell = el(
    "td",
    {},
    el("strong", {}, theme.title),
    theme.summary ? el("p", { class: "muted" }, theme.summary) : null,
    el(
      "span",
      { class: "keywords" },
      ...theme.keywords.map((k) => el("span", { class: "chip" }, k)),
    ),
  );

  const seats =
    theme.max_students === null
      ? el("td", {}, "—")
      : el(
          "td",
          {},
          full
            ? el("span", { class: "badge full", "data-full-badge": "" }, "full")
            : `${theme.remaining_capacity} of ${theme.max_students} free`,
        );

  const actionCell = el("td", { "data-action-cell": "" });
  if (isAdmin) {
    actionCell.append(el("span", { class: `badge status-${theme.status}` }, theme.status));
  } else if (theme.selected_by_me) {
    const withdraw = el("button", { "data-withdraw": "" }, "Withdraw");
    withdraw.addEventListener("click", () => {
      void act(ctx, container, theme.id, () => ctx.api.withdraw(theme.id));
    });
    actionCell.append(
      el("span", { class: "badge mine" }, "yours"),
      withdraw,
      filesPanel(ctx, theme),
    );
  } else {
    const reason = full ? "theme is full" : quotaReached ? "choice limit reached" : null;
    const select = el(
      "button",
      { "data-select": "", disabled: reason !== null, title: reason ?? "take this theme" },
      "Select",
    );
    select.addEventListener("click", () => {
      void act(ctx, container, theme.id, () => ctx.api.select(theme.id));
    });
    actionCell.append(select);
  }

  return el(
    "tr",
    { "data-theme-row": "", "data-theme-id": theme.id },
    el("td", {}, weekBadge(theme)),
    titleCell,
    seats,
    actionCell,
  );
}

/** Run a mutation, then re-render from a fresh GET; failures surface inline
 * on the affected row (which is refreshed too). */
async function act(ctx: ViewContext, container: HTMLElement, themeId: number,
                   operation: () => Promise<unknown>): Promise<void> {
  try {
    await operation();
    await reload(ctx, container);
  } catch (error) {
    if (error instanceof ApiError) {
      if (error.status === 401) throw error;
      await reload(ctx, container, { themeId, message: error.message });
    } else {
      await reload(ctx, container, { themeId, message: "the service is unreachable" });
    }
  }
}

function filesPanel(ctx: ViewContext, theme: ThemeRow): HTMLElement {
  const list = el("ul", { class: "file-list" });
  const details = el("details", { class: "files" });
  const input = el("input", { type: "file" });
  const upload = el("button", {}, "Upload");
  const panel = el("div", {}, el("p", { class: "muted" }, "Approved files"), list,
                   el("div", { class: "upload" }, input, upload));

  async function refreshList(): Promise<void> {
    const files = await ctx.api.listFiles(theme.id);
    clear(list);
    for (const record of files) {
      list.append(el("li", {}, `${record.filename} (${record.size_bytes} bytes)`));
    }
    if (!files.length) list.append(el("li", { class: "muted" }, "none yet"));
  }

  details.addEventListener("toggle", () => {
    if (details.open) void refreshList().catch(() => undefined);
  });
  upload.addEventListener("click", () => {
    const file = input.files?.[0];
    if (!file) {
      showError(panel, "choose a file first");
      return;
    }
    void (async () => {
      try {
        await ctx.api.uploadFile(theme.id, file);
        showError(panel, "uploaded; awaiting administrator approval");
        await refreshList();
      } catch (error) {
        showError(panel, error instanceof ApiError ? error.message : "upload failed");
      }
    })();
  });
  details.append(el("summary", {}, "Files"), panel);
  return details;
}
