import { beforeEach, describe, expect, it } from "vitest";

import { SeminarApi } from "../src/api.js";
import { AppState } from "../src/state.js";
import { createApp } from "../src/app.js";
import { renderThemeList } from "../src/views/themes.js";
import {
  FakeBackend,
  defaultPolicy,
  flush,
  makeContext,
  makeTheme,
  paperThemes,
} from "./helpers.js";

beforeEach(() => {
  document.body.innerHTML = "";
  window.location.hash = "";
});

describe("student theme list on the pilot fixture", () => {
  it("renders 41 rows and zero admin controls", async () => {
    const backend = new FakeBackend();
    backend.on("GET", "/api/themes", paperThemes());
    backend.on("GET", "/api/policy", defaultPolicy);
    backend.on("GET", "/api/schedule", {
      num_weeks: 7, per_week_capacity: 6, weeks: {}, unscheduled: [],
    });

    // full app shell, exactly what a signed-in student sees
    const root = document.createElement("div");
    document.body.append(root);
    const api = new SeminarApi("", backend.fetch);
    const state = new AppState(null);
    state.save({ token: "t", role: "student" });
    api.token = "t";
    window.location.hash = "#/themes";
    const app = createApp(root, api, state);
    await app.render();
    await flush();

    expect(root.querySelectorAll("[data-theme-row]")).toHaveLength(41);
    expect(root.querySelectorAll("[data-admin-control]")).toHaveLength(0);
    expect(root.querySelectorAll("[data-approve]")).toHaveLength(0);
    expect(root.querySelectorAll("[data-reject]")).toHaveLength(0);
    expect(root.querySelectorAll("[data-capacity-input]")).toHaveLength(0);
  });

  it("disables Select with a full badge when capacity is exhausted", async () => {
    const backend = new FakeBackend();
    backend.on("GET", "/api/themes", [
      makeTheme(1, { remaining_capacity: 0, assigned_count: 1 }),
    ]);
    backend.on("GET", "/api/policy", defaultPolicy);
    const { ctx } = makeContext(backend, "student");

    const view = await renderThemeList(ctx);
    const button = view.querySelector<HTMLButtonElement>("[data-select]");
    expect(button).not.toBeNull();
    expect(button!.hasAttribute("disabled")).toBe(true);
    expect(view.querySelector("[data-full-badge]")).not.toBeNull();
  });

  it("select success re-renders the row from a fresh GET", async () => {
    const backend = new FakeBackend();
    let selected = false;
    backend.on("GET", "/api/themes", () => ({
      json: [
        makeTheme(1, {
          max_students: 2,
          remaining_capacity: selected ? 1 : 2,
          assigned_count: selected ? 1 : 0,
          selected_by_me: selected,
        }),
      ],
    }));
    backend.on("GET", "/api/policy", defaultPolicy);
    backend.on("POST", "/api/themes/1/select", () => {
      selected = true;
      return { status: 201, json: { id: 9, theme_id: 1 } };
    });
    const { ctx } = makeContext(backend, "student");

    const view = await renderThemeList(ctx);
    view.querySelector<HTMLButtonElement>("[data-select]")!.click();
    await flush();

    expect(view.textContent).toContain("1 of 2 free");
    expect(view.querySelector("[data-withdraw]")).not.toBeNull();
  });

  it("forced submission of a disabled Select still renders the server's 409", async () => {
    const backend = new FakeBackend();
    backend.on("GET", "/api/themes", [
      makeTheme(1, { remaining_capacity: 0, assigned_count: 1 }),
    ]);
    backend.on("GET", "/api/policy", defaultPolicy);
    backend.on("POST", "/api/themes/1/select", {
      status: 409,
      json: { code: "ThemeFull", message: "theme already has 1 students" },
    });
    const { ctx, backend: recorded } = makeContext(backend, "student");

    const view = await renderThemeList(ctx);
    const button = view.querySelector<HTMLButtonElement>("[data-select]")!;
    expect(button.hasAttribute("disabled")).toBe(true);

    button.removeAttribute("disabled"); // devtools-style forcing
    button.click();
    await flush();

    // authority stayed server-side: the request went out and was refused
    expect(recorded.callsTo("POST", "/api/themes/1/select")).toHaveLength(1);
    const error = view.querySelector("[data-error]");
    expect(error).not.toBeNull();
    expect(error!.textContent).toContain("theme already has 1 students");
  });

  it("withdraw frees the seat in the re-rendered row", async () => {
    const backend = new FakeBackend();
    let mine = true;
    backend.on("GET", "/api/themes", () => ({
      json: [
        makeTheme(1, {
          remaining_capacity: mine ? 0 : 1,
          assigned_count: mine ? 1 : 0,
          selected_by_me: mine,
        }),
      ],
    }));
    backend.on("GET", "/api/policy", defaultPolicy);
    backend.on("DELETE", "/api/themes/1/select", () => {
      mine = false;
      return { json: { id: 9 } };
    });
    const { ctx } = makeContext(backend, "student");

    const view = await renderThemeList(ctx);
    view.querySelector<HTMLButtonElement>("[data-withdraw]")!.click();
    await flush();

    expect(view.textContent).toContain("1 of 1 free");
    expect(view.querySelector("[data-select]")).not.toBeNull();
  });

  it("a 401 mid-session drops to the login view", async () => {
    const backend = new FakeBackend();
    backend.on("GET", "/api/themes", {
      status: 401, json: { code: "AuthFailed", message: "invalid or expired token" },
    });
    backend.on("GET", "/api/policy", defaultPolicy);

    const root = document.createElement("div");
    document.body.append(root);
    const api = new SeminarApi("", backend.fetch);
    const state = new AppState(null);
    state.save({ token: "stale", role: "student" });
    api.token = "stale";
    window.location.hash = "#/themes";
    const app = createApp(root, api, state);
    await app.render();
    await flush();

    expect(state.session).toBeNull();
    expect(root.querySelector("form.login")).not.toBeNull();
  });
});
