import { ApiError } from "../api.js";
import type { FileRecord, Policy, ThemeRow } from "../api.js";
import { el, showError } from "../dom.js";
import type { ViewContext } from "../context.js";
import { renderBoard } from "./board.js";

/**
 * Administrator console: review queues for themes and files, the policy
 * editor, and the planner. Non-admin sessions get a dead end here — and a
 * 403 from the API if they force anything anyway.
 */
export async function renderAdminConsole(ctx: ViewContext): Promise<HTMLElement> {
  if (!ctx.state.isAdmin) {
    return el(
      "section",
      { class: "card", "data-access-denied": "" },
      el("h2", {}, "Access denied"),
      el("p", { class: "muted" }, "The console is for the administrator."),
    );
  }
  const [themes, pendingFiles, policy, board] = await Promise.all([
    ctx.api.listThemes(),
    ctx.api.pendingFiles(),
    ctx.api.getPolicy(),
    ctx.api.schedule(),
  ]);
  const pendingThemes = themes.filter((t) => t.status === "pending");

  const container = el("section", { class: "admin" });
  container.append(
    el("h2", {}, "Administrator console"),
    themeQueue(ctx, pendingThemes, policy),
    fileQueue(ctx, pendingFiles),
    policyForm(ctx, policy),
    planner(ctx, board),
  );
  return container;
}

function themeQueue(ctx: ViewContext, pending: ThemeRow[], policy: Policy): HTMLElement {
  const section = el(
    "div",
    { class: "card", "data-pending-themes": "" },
    el(
      "h3",
      {},
      "Theme proposals ",
      el("span", { class: "badge count", "data-pending-themes-count": "" },
         String(pending.length)),
    ),
  );
  if (!pending.length) {
    section.append(el("p", { class: "muted" }, "nothing waiting"));
    return section;
  }
  for (const theme of pending) {
    const capacity = el("input", {
      type: "number", min: 1, value: 1, "data-capacity-input": "",
    });
    const week = el("input", {
      type: "number", min: 1, max: policy.num_weeks,
      value: theme.deadline_week ?? "", placeholder: "deadline week",
      "data-week-input": "",
    });
    const approve = el("button", { "data-approve": "" }, "Approve");
    const reject = el("button", { "data-reject": "", class: "danger" }, "Reject");
    const row = el(
      "div",
      { class: "queue-row", "data-pending-theme-row": "", "data-theme-id": theme.id },
      el(
        "div",
        {},
        el("strong", {}, theme.title),
        el("p", { class: "muted" }, theme.summary),
        theme.deadline_week !== null
          ? el("p", { class: "muted" }, `requested deadline: week ${theme.deadline_week}`)
          : null,
      ),
      el("label", {}, "seats", capacity),
      el("label", {}, "deadline", week),
      approve,
      reject,
    );
    approve.addEventListener("click", () => {
      void review(ctx, row, theme.id, {
        decision: "approve",
        max_students: Number(capacity.value) || 1,
        deadline_week: week.value ? Number(week.value) : undefined,
      });
    });
    reject.addEventListener("click", () => {
      void review(ctx, row, theme.id, { decision: "reject" });
    });
    section.append(row);
  }
  return section;
}

async function review(ctx: ViewContext, row: HTMLElement, themeId: number,
                      body: { decision: "approve" | "reject"; max_students?: number;
                              deadline_week?: number }): Promise<void> {
  try {
    await ctx.api.reviewTheme(themeId, body);
    await ctx.refresh();
  } catch (error) {
    if (error instanceof ApiError && error.status === 401) throw error;
    showError(row, error instanceof ApiError ? error.message : "request failed");
  }
}

function fileQueue(ctx: ViewContext, pending: FileRecord[]): HTMLElement {
  const section = el(
    "div",
    { class: "card", "data-pending-files": "" },
    el(
      "h3",
      {},
      "Uploaded files ",
      el("span", { class: "badge count", "data-pending-files-count": "" },
         String(pending.length)),
    ),
  );
  if (!pending.length) {
    section.append(el("p", { class: "muted" }, "nothing waiting"));
    return section;
  }
  for (const record of pending) {
    const approve = el("button", { "data-approve-file": "" }, "Approve");
    const reject = el("button", { "data-reject-file": "", class: "danger" }, "Reject");
    const row = el(
      "div",
      { class: "queue-row", "data-pending-file-row": "", "data-file-id": record.id },
      el(
        "div",
        {},
        el("strong", {}, record.filename),
        el("p", { class: "muted" },
           `${record.size_bytes} bytes — theme #${record.theme_id}, `
           + `uploader #${record.uploader_id}`),
      ),
      approve,
      reject,
    );
    const act = (decision: "approve" | "reject") => {
      void (async () => {
        try {
          await ctx.api.reviewFile(record.id, decision);
          await ctx.refresh();
        } catch (error) {
          if (error instanceof ApiError && error.status === 401) throw error;
          showError(row, error instanceof ApiError ? error.message : "request failed");
        }
      })();
    };
    approve.addEventListener("click", () => act("approve"));
    reject.addEventListener("click", () => act("reject"));
    section.append(row);
  }
  return section;
}

function policyForm(ctx: ViewContext, policy: Policy): HTMLElement {
  const choices = el("input", {
    type: "number", min: 1, value: policy.max_choices_per_student,
    "data-policy-choices": "",
  });
  const perWeek = el("input", {
    type: "number", min: 1, value: policy.per_week_capacity, "data-policy-per-week": "",
  });
  const weeks = el("input", {
    type: "number", min: 1, value: policy.num_weeks, "data-policy-weeks": "",
  });
  const open = el("input", { type: "checkbox", "data-policy-open": "" }) as HTMLInputElement;
  open.checked = policy.proposal_open;
  const save = el("button", { "data-save-policy": "" }, "Save policy");
  const section = el(
    "div",
    { class: "card", "data-policy-form": "" },
    el("h3", {}, "Limits"),
    el("label", {}, "Choices per student", choices),
    el("label", {}, "Topics per meeting", perWeek),
    el("label", {}, "Seminar weeks", weeks),
    el("label", { class: "inline" }, open, " proposals open"),
    save,
  );
  save.addEventListener("click", () => {
    void (async () => {
      try {
        await ctx.api.patchPolicy({
          max_choices_per_student: Number(choices.value),
          per_week_capacity: Number(perWeek.value),
          num_weeks: Number(weeks.value),
          proposal_open: open.checked,
        });
        await ctx.refresh();
      } catch (error) {
        if (error instanceof ApiError && error.status === 401) throw error;
        showError(section, error instanceof ApiError ? error.message : "request failed");
      }
    })();
  });
  return section;
}

function planner(ctx: ViewContext, board: import("../api.js").Board): HTMLElement {
  const plan = el("button", { "data-plan": "" }, "Plan schedule");
  const note = el("p", { class: "muted", "data-plan-note": "" });
  const boardHost = el("div", {}, renderBoard(board));
  const section = el(
    "div",
    { class: "card", "data-planner": "" },
    el("h3", {}, "Presentation planning"),
    plan,
    note,
    boardHost,
  );
  plan.addEventListener("click", () => {
    void (async () => {
      try {
        const result = await ctx.api.plan();
        // render from a fresh GET, not from what we think changed
        const fresh = await ctx.api.schedule();
        boardHost.replaceChildren(renderBoard(fresh));
        note.textContent =
          `placed ${Object.keys(result.placement).length} presentations; ` +
          `busiest week holds ${result.max_weekly_load}`;
      } catch (error) {
        if (error instanceof ApiError && error.status === 401) throw error;
        showError(section, error instanceof ApiError ? error.message : "planning failed");
      }
    })();
  });
  return section;
}
