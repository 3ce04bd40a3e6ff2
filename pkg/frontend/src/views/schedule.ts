import { el } from "../dom.js";
import type { ViewContext } from "../context.js";
import { renderBoard } from "./board.js";

export async function renderSchedule(ctx: ViewContext): Promise<HTMLElement> {
  const board = await ctx.api.schedule();
  return el(
    "section",
    { class: "schedule" },
    el("h2", {}, "Presentation schedule"),
    renderBoard(board),
  );
}
