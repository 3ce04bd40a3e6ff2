import { SeminarApi } from "./api.js";
import { AppState } from "./state.js";
import { createApp } from "./app.js";

const root = document.getElementById("app");
if (root) {
  const app = createApp(root, new SeminarApi(), new AppState());
  void app.render();
}
