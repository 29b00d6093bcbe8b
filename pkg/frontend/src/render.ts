// HTML-string renderers. Pure functions of the state so snapshot tests can
// verify that displayed numerics are the server's values verbatim: opacity
// is 1 minus the served hiding value, scores and buoyancy are printed as
// received, never recomputed.

import { WorkbenchState } from "./workbench.js";

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderClock(state: WorkbenchState): string {
  return `<span class="clock">t=${state.clock}</span>`;
}

export function renderContextPanels(state: WorkbenchState): string {
  const hid = new Map(state.view?.items.map((i) => [i.thing, i.hiding]) ?? []);
  const listed = new Set(state.view?.items.map((i) => i.thing) ?? []);
  const panels = state.graph.contexts.map((ctx) => {
    const active = ctx.id === state.activeContext ? " active" : "";
    const rows = ctx.members
      .filter((m) => state.view === null || listed.has(m))
      .map((m) => {
        const hiding = hid.get(m) ?? 0;
        const thing = state.graph.things.find((t) => t.id === m);
        return `<li class="thing" data-thing="${esc(m)}" style="opacity:${1 - hiding}">` +
          `${esc(thing?.label || m)}</li>`;
      })
      .join("");
    return `<section class="context${active}" data-context="${esc(ctx.id)}">` +
      `<h3>${esc(ctx.label || ctx.id)}</h3><ul>${rows}</ul></section>`;
  });
  return panels.join("");
}

export function renderSearchResults(state: WorkbenchState): string {
  if (!state.search) return "";
  const rows = state.search.results
    .map((r) => `<tr data-thing="${esc(r.thing)}"><td>${esc(r.thing)}</td>` +
      `<td>${r.relevance}</td><td>${r.inhibition}</td><td>${r.score}</td></tr>`)
    .join("");
  return `<table class="results"><thead><tr><th>thing</th><th>relevance</th>` +
    `<th>inhibition</th><th>score</th></tr></thead><tbody>${rows}</tbody></table>`;
}

export function renderSparkline(state: WorkbenchState): string {
  if (!state.series) return "";
  const pts = state.series.series;
  const raw = pts.map((p) => `${p.t},${p.mb_raw}`).join(" ");
  const eff = pts.map((p) => `${p.t},${p.mb_effective}`).join(" ");
  return `<figure class="sparkline" data-thing="${esc(state.series.thing)}">` +
    `<data class="raw" value="${raw}"></data>` +
    `<data class="effective" value="${eff}"></data></figure>`;
}

export function renderSuggestionToasts(state: WorkbenchState): string {
  return state.suggestions
    .map((s, i) => {
      if (s.suggestion === "switch_to") {
        return `<div class="toast" data-index="${i}">switch to ` +
          `<b>${esc(s.context ?? "")}</b>? <button data-action="switch">switch</button></div>`;
      }
      const members = (s.members ?? []).map(esc).join(", ");
      return `<div class="toast" data-index="${i}">new context over ` +
        `<b>${members}</b>? <button data-action="create">create context</button></div>`;
    })
    .join("");
}

export function renderErrorBanner(state: WorkbenchState): string {
  if (!state.error) return "";
  return `<div class="banner error">${esc(state.error)}</div>`;
}

export function renderAll(state: WorkbenchState): string {
  return [
    renderErrorBanner(state),
    renderClock(state),
    renderContextPanels(state),
    renderSearchResults(state),
    renderSparkline(state),
    renderSuggestionToasts(state),
  ].join("\n");
}
