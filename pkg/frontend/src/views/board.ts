import type { Board } from "../api.js";
import { el } from "../dom.js";

/** Week columns with load bars measured against the per-meeting capacity. */
export function renderBoard(board: Board): HTMLElement {
  const columns = el("div", { class: "board", "data-board": "" });
  for (let week = 1; week <= board.num_weeks; week += 1) {
    const rows = board.weeks[String(week)] ?? [];
    const over = rows.length > board.per_week_capacity;
    const ratio = Math.min(rows.length / Math.max(board.per_week_capacity, 1), 1);
    const bar = el("div", {
      class: `load-bar${over ? " over" : ""}`,
      style: `height: ${Math.round(ratio * 60)}px`,
      title: `${rows.length} of ${board.per_week_capacity}`,
    });
    columns.append(
      el(
        "div",
        { class: "week-column", "data-week-column": "", "data-week": week,
          "data-count": rows.length },
        el("h4", {}, `Week ${week}`),
        bar,
        el("p", { class: "muted" }, `${rows.length} / ${board.per_week_capacity}`),
        el(
          "ul",
          {},
          ...rows.map((row) =>
            el("li", {}, el("strong", {}, row.student_name), ` — ${row.theme_title}`),
          ),
        ),
      ),
    );
  }
  if (board.unscheduled.length) {
    columns.append(
      el(
        "div",
        { class: "week-column unscheduled", "data-unscheduled": "" },
        el("h4", {}, "Unscheduled"),
        el(
          "ul",
          {},
          ...board.unscheduled.map((row) =>
            el("li", {}, `${row.student_name} — ${row.theme_title}`),
          ),
        ),
      ),
    );
  }
  return columns;
}
