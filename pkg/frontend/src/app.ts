import { ApiError, SeminarApi } from "./api.js";
import { AppState } from "./state.js";
import type { ViewContext } from "./context.js";
import { clear, el } from "./dom.js";
import { renderAdminConsole } from "./views/admin.js";
import { renderLogin } from "./views/login.js";
import { renderProposeForm } from "./views/propose.js";
import { renderSchedule } from "./views/schedule.js";
import { renderThemeList } from "./views/themes.js";

type ViewFactory = (ctx: ViewContext) => HTMLElement | Promise<HTMLElement>;

const ROUTES: Record<string, ViewFactory> = {
  "#/login": renderLogin,
  "#/themes": renderThemeList,
  "#/propose": renderProposeForm,
  "#/schedule": renderSchedule,
  "#/admin": renderAdminConsole,
};

export interface AppHandles {
  render(): Promise<void>;
  navigate(hash: string): void;
}

export function createApp(root: HTMLElement, api: SeminarApi, state: AppState): AppHandles {
  if (state.session) api.token = state.session.token;

  const nav = el("nav", {});
  const main = el("main", {});
  root.append(el("header", {}, el("h1", {}, "Seminar assignments"), nav), main);

  function navigate(hash: string): void {
    if (window.location.hash === hash) {
      void render();
    } else {
      window.location.hash = hash; // hashchange listener re-renders
    }
  }

  const ctx: ViewContext = {
    api,
    state,
    navigate,
    refresh: () => render(),
  };

  function buildNav(): void {
    clear(nav);
    if (!state.session) return;
    nav.append(
      navLink("#/themes", "Themes"),
      navLink("#/propose", "Propose"),
      navLink("#/schedule", "Schedule"),
    );
    if (state.isAdmin) {
      nav.append(navLink("#/admin", "Console", { "data-admin-control": "" }));
    }
    const logout = el("button", { class: "linkish", "data-logout": "" }, "Sign out");
    logout.addEventListener("click", () => {
      void api.logout().catch(() => undefined);
      state.clear();
      api.token = null;
      navigate("#/login");
    });
    nav.append(logout);
  }

  function navLink(hash: string, label: string,
                   attrs: Record<string, unknown> = {}): HTMLElement {
    const link = el("a", { href: hash, ...attrs }, label);
    link.addEventListener("click", (event) => {
      event.preventDefault();
      navigate(hash);
    });
    return link;
  }

  async function render(): Promise<void> {
    buildNav();
    const route = window.location.hash || "#/themes";
    const factory = state.session ? (ROUTES[route] ?? renderThemeList) : renderLogin;
    clear(main);
    try {
      main.append(await factory(ctx));
    } catch (error) {
      if (error instanceof ApiError && error.status === 401) {
        state.clear();
        api.token = null;
        window.location.hash = "#/login";
        clear(main);
        buildNav();
        main.append(renderLogin(ctx));
        return;
      }
      clear(main);
      main.append(
        el("section", { class: "card" },
           el("p", { class: "error", "data-error": "" },
              error instanceof ApiError ? error.message : "something went wrong")),
      );
    }
  }

  window.addEventListener("hashchange", () => void render());
  return { render, navigate };
}
