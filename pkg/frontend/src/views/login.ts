import { ApiError } from "../api.js";
import { el, showError } from "../dom.js";
import type { ViewContext } from "../context.js";

export function renderLogin(ctx: ViewContext): HTMLElement {
  const email = el("input", { type: "email", name: "email", autocomplete: "username" });
  const password = el("input", {
    type: "password", name: "password", autocomplete: "current-password",
  });
  const form = el(
    "form",
    { class: "login card" },
    el("h2", {}, "Sign in"),
    el("label", {}, "Email", email),
    el("label", {}, "Password", password),
    el("button", { type: "submit" }, "Sign in"),
  );
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void (async () => {
      try {
        const result = await ctx.api.login(email.value, password.value);
        ctx.state.save({ token: result.token, role: result.role });
        ctx.navigate("#/themes");
      } catch (error) {
        if (error instanceof ApiError) {
          showError(form, error.message);
        } else {
          showError(form, "the service is unreachable");
        }
      }
    })();
  });
  return form;
}
