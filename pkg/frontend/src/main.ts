// Browser bootstrap: wires DOM events to workbench gestures and repaints
// from the state on every change. All engine values come from the server.

import { ApiClient, fetchTransport } from "./api.js";
import { renderAll } from "./render.js";
import { GraphSnapshot, Workbench } from "./workbench.js";

const BASE_URL = (window as unknown as { ENGINE_URL?: string }).ENGINE_URL
  ?? "http://127.0.0.1:7350";

async function boot() {
  const api = new ApiClient(fetchTransport(BASE_URL));
  const root = document.getElementById("app")!;

  // the graph snapshot ships with the page (static data served alongside);
  // engine state itself is always fetched live
  const graph: GraphSnapshot = JSON.parse(
    document.getElementById("graph-data")?.textContent ?? '{"things":[],"contexts":[]}');

  const bench = new Workbench(api, graph, (state) => {
    root.innerHTML = renderAll(state);
  });

  root.addEventListener("click", (ev) => {
    const el = ev.target as HTMLElement;
    const thing = el.closest<HTMLElement>("[data-thing]")?.dataset.thing;
    const ctx = el.closest<HTMLElement>("section[data-context]")?.dataset.context;
    if (el.matches("button[data-action='switch']")) {
      const i = Number(el.closest<HTMLElement>(".toast")!.dataset.index);
      void bench.acceptSwitch(bench.state.suggestions[i]);
    } else if (el.matches("button[data-action='create']")) {
      const i = Number(el.closest<HTMLElement>(".toast")!.dataset.index);
      const id = prompt("new context id") ?? "";
      if (id) void bench.acceptCreate(bench.state.suggestions[i], id);
    } else if (el.matches("li.thing") && thing) {
      void bench.clickThing(thing);
    } else if (el.matches("section.context h3") && ctx) {
      void bench.selectContext(ctx);
    }
  });

  const controls = document.getElementById("controls")!;
  controls.querySelector("#tick")!.addEventListener("click", () => {
    void bench.advanceClock(1);
  });
  controls.querySelector("#show-forgotten")!.addEventListener("change", () => {
    void bench.toggleShowForgotten();
  });
  controls.querySelector<HTMLInputElement>("#alpha")!.addEventListener("input", (ev) => {
    bench.setAlpha(Number((ev.target as HTMLInputElement).value));
  });
  controls.querySelector<HTMLInputElement>("#tau")!.addEventListener("input", (ev) => {
    bench.setTau(Number((ev.target as HTMLInputElement).value));
  });
  controls.querySelector<HTMLFormElement>("#search-form")!.addEventListener("submit", (ev) => {
    ev.preventDefault();
    const q = controls.querySelector<HTMLInputElement>("#query")!.value;
    if (q.trim()) void bench.runSearch(q);
  });

  // suggestion toasts poll the advisory stream
  window.setInterval(() => void bench.refreshSuggestions(), 2000);

  await bench.refreshView();
}

void boot();
