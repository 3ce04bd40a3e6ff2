import { ApiError } from "../api.js";
import type { Policy, ThemeRow } from "../api.js";
import { clear, el } from "../dom.js";
import type { ViewContext } from "../context.js";

/**
 * Proposal form: title, summary, keyword chips, repeatable reference rows,
 * and a presentation-week dropdown sized by the policy. Client validation
 * mirrors the server's required fields; server rejections land on the
 * matching field.
 */
export async function renderProposeForm(ctx: ViewContext): Promise<HTMLElement> {
  const policy = await ctx.api.getPolicy();
  const container = el("section", { class: "propose card" });

  if (!policy.proposal_open && !ctx.state.isAdmin) {
    container.append(
      el("h2", {}, "Propose a theme"),
      el("p", { class: "muted", "data-proposals-closed": "" },
         "Proposals are closed right now."),
    );
    return container;
  }

  const keywords: string[] = [];
  const title = el("input", { type: "text", name: "title" });
  const summary = el("textarea", { name: "summary", rows: 3 });
  const keywordInput = el("input", { type: "text", placeholder: "add a keyword" });
  const keywordChips = el("div", { class: "chips", "data-keywords": "" });
  const referenceRows = el("div", { class: "references" });
  const week = buildWeekSelect(policy);

  const fieldErrors: Record<string, HTMLElement> = {
    title: el("p", { class: "error field-error", "data-field-error": "title", hidden: true }),
    keywords: el("p", { class: "error field-error", "data-field-error": "keywords", hidden: true }),
  };

  function setFieldError(field: "title" | "keywords", message: string | null): void {
    const node = fieldErrors[field];
    if (message === null) {
      node.setAttribute("hidden", "");
      node.textContent = "";
    } else {
      node.removeAttribute("hidden");
      node.textContent = message;
    }
  }

  function addKeyword(): void {
    const word = keywordInput.value.trim();
    keywordInput.value = "";
    if (!word || keywords.includes(word)) return;
    keywords.push(word);
    const chip = el("span", { class: "chip" }, word);
    const remove = el("button", { type: "button", class: "chip-remove" }, "×");
    remove.addEventListener("click", () => {
      keywords.splice(keywords.indexOf(word), 1);
      chip.remove();
    });
    chip.append(remove);
    keywordChips.append(chip);
    setFieldError("keywords", null);
  }

  const addKeywordButton = el("button", { type: "button", "data-add-keyword": "" }, "Add");
  addKeywordButton.addEventListener("click", addKeyword);
  keywordInput.addEventListener("keydown", (event) => {
    if ((event as KeyboardEvent).key === "Enter") {
      event.preventDefault();
      addKeyword();
    }
  });

  function addReferenceRow(value = ""): void {
    const input = el("input", { type: "text", value, placeholder: "book or article" });
    const remove = el("button", { type: "button" }, "remove");
    const row = el("div", { class: "reference-row", "data-reference-row": "" }, input, remove);
    remove.addEventListener("click", () => row.remove());
    referenceRows.append(row);
  }
  const addReference = el("button", { type: "button", "data-add-reference": "" },
                          "Add reference");
  addReference.addEventListener("click", () => addReferenceRow());
  addReferenceRow();

  const form = el(
    "form",
    {},
    el("h2", {}, "Propose a theme"),
    el("label", {}, "Title", title),
    fieldErrors.title,
    el("label", {}, "Summary", summary),
    el("label", {}, "Keywords", el("div", { class: "keyword-entry" }, keywordInput, addKeywordButton)),
    keywordChips,
    fieldErrors.keywords,
    el("label", {}, "References", referenceRows),
    addReference,
    el("label", {}, "Proposed presentation week", week),
    el("button", { type: "submit", "data-submit-proposal": "" }, "Submit proposal"),
  );

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    // client-side mirror of the server's required fields: no request when invalid
    let valid = true;
    if (!title.value.trim()) {
      setFieldError("title", "title required");
      valid = false;
    } else {
      setFieldError("title", null);
    }
    if (keywords.length === 0) {
      setFieldError("keywords", "at least one keyword required");
      valid = false;
    } else {
      setFieldError("keywords", null);
    }
    if (!valid) return;

    const references = Array.from(
      referenceRows.querySelectorAll<HTMLInputElement>("input"),
    ).map((i) => i.value.trim()).filter(Boolean);

    void (async () => {
      try {
        const theme = await ctx.api.propose({
          title: title.value.trim(),
          summary: summary.value,
          keywords: [...keywords],
          references,
          proposed_week: week.value ? Number(week.value) : null,
        });
        clear(container);
        container.append(successCard(theme));
      } catch (error) {
        if (error instanceof ApiError && error.code === "DuplicateTitle") {
          setFieldError("title", error.message);
        } else if (error instanceof ApiError) {
          if (error.status === 401) throw error;
          setFieldError("title", null);
          form.querySelectorAll("[data-error]").forEach((n) => n.remove());
          form.append(el("p", { class: "error", "data-error": "" }, error.message));
        } else {
          form.append(el("p", { class: "error", "data-error": "" }, "the service is unreachable"));
        }
      }
    })();
  });

  container.append(form);
  return container;
}

function buildWeekSelect(policy: Policy): HTMLSelectElement {
  const select = el("select", { name: "proposed_week" });
  select.append(el("option", { value: "" }, "no preference"));
  for (let weekIndex = 1; weekIndex <= policy.num_weeks; weekIndex += 1) {
    select.append(el("option", { value: weekIndex }, `week ${weekIndex}`));
  }
  return select;
}

function successCard(theme: ThemeRow): HTMLElement {
  const pending = theme.status === "pending";
  return el(
    "div",
    { class: "card", "data-proposal-result": "" },
    el("h2", {}, theme.title),
    el(
      "span",
      {
        class: `badge ${pending ? "pending" : "approved"}`,
        "data-pending-badge": pending ? "" : null,
      },
      pending ? "pending review" : "approved",
    ),
    el("p", { class: "muted" },
       pending
         ? "The administrator will review your proposal."
         : "The theme is on the list."),
  );
}
