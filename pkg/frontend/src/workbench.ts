// Workbench view model and gesture handlers.
//
// Zero-logic rule: every number shown (opacity, score, buoyancy) is stored
// exactly as the server sent it; the client never recomputes buoyancy,
// hiding, or ranking. Each user gesture maps to exactly one documented
// endpoint call; re-renders read only from the last stored responses.

import {
  ApiClient,
  SearchResponse,
  SeriesResponse,
  SuggestionRecord,
  ViewResponse,
} from "./api.js";

export interface GraphSnapshot {
  things: { id: string; label: string; kind: string }[];
  contexts: { id: string; label: string; members: string[] }[];
}

export interface WorkbenchState {
  graph: GraphSnapshot;
  activeContext: string | null;
  clock: number;
  view: ViewResponse | null;
  search: SearchResponse | null;
  series: SeriesResponse | null;
  suggestions: SuggestionRecord[];
  showForgotten: boolean;
  mode: "hide" | "transparency";
  tau: number;
  alpha: number;
  error: string | null;
}

export function initialState(graph: GraphSnapshot): WorkbenchState {
  return {
    graph,
    activeContext: null,
    clock: 0,
    view: null,
    search: null,
    series: null,
    suggestions: [],
    showForgotten: false,
    mode: "transparency",
    tau: 0.5,
    alpha: 0.5,
    error: null,
  };
}

export class Workbench {
  state: WorkbenchState;

  constructor(private api: ApiClient, graph: GraphSnapshot,
              private onChange: (s: WorkbenchState) => void = () => {}) {
    this.state = initialState(graph);
  }

  private commit(patch: Partial<WorkbenchState>) {
    this.state = { ...this.state, ...patch, error: null };
    this.onChange(this.state);
  }

  private fail(err: unknown) {
    this.state = { ...this.state, error: err instanceof Error ? err.message : String(err) };
    this.onChange(this.state);
  }

  // click on a thing -> POST /events/access
  async clickThing(thing: string) {
    try {
      const res = await this.api.accessThing(thing);
      this.commit({ clock: res.clock });
    } catch (err) {
      this.fail(err);
    }
  }

  // context selector -> POST /contexts/{id}/activate
  async selectContext(context: string) {
    try {
      const res = await this.api.activateContext(context);
      this.commit({ clock: res.clock, activeContext: res.active_context });
    } catch (err) {
      this.fail(err);
    }
  }

  // time slider / play button -> POST /clock/tick
  async advanceClock(dt: number) {
    try {
      const res = await this.api.tick(dt);
      this.commit({ clock: res.clock });
    } catch (err) {
      this.fail(err);
    }
  }

  // view refresh and the show-forgotten toggle -> GET /view
  async refreshView(context?: string) {
    try {
      const view = await this.api.view({
        context,
        tau: this.state.tau,
        mode: this.state.mode,
        show_forgotten: this.state.showForgotten,
      });
      this.commit({ view, clock: view.t });
    } catch (err) {
      this.fail(err);
    }
  }

  async toggleShowForgotten(context?: string) {
    this.state = { ...this.state, showForgotten: !this.state.showForgotten };
    await this.refreshView(context);
  }

  // search box with alpha/tau sliders -> GET /search
  async runSearch(q: string) {
    try {
      const search = await this.api.search(
        q, this.state.alpha, this.state.tau, this.state.mode, this.state.showForgotten);
      this.commit({ search });
    } catch (err) {
      this.fail(err);
    }
  }

  // selecting a thing's sparkline -> GET /series/{thing}
  async loadSeries(thing: string, from: number, to: number) {
    try {
      const series = await this.api.series(thing, from, to);
      this.commit({ series });
    } catch (err) {
      this.fail(err);
    }
  }

  // suggestion toasts -> GET /suggestions
  async refreshSuggestions() {
    try {
      const res = await this.api.suggestions();
      this.commit({ suggestions: res.suggestions });
    } catch (err) {
      this.fail(err);
    }
  }

  // one-click "switch" on a switch_to toast
  async acceptSwitch(suggestion: SuggestionRecord) {
    if (suggestion.suggestion !== "switch_to" || !suggestion.context) return;
    await this.selectContext(suggestion.context);
  }

  // one-click "create context" on a create_new toast
  async acceptCreate(suggestion: SuggestionRecord, id: string) {
    if (suggestion.suggestion !== "create_new" || !suggestion.members) return;
    try {
      const res = await this.api.createContext(id, suggestion.members);
      this.commit({ clock: res.clock });
    } catch (err) {
      this.fail(err);
    }
  }

  setAlpha(alpha: number) {
    this.commit({ alpha });
  }

  setTau(tau: number) {
    this.commit({ tau });
  }

  setMode(mode: "hide" | "transparency") {
    this.commit({ mode });
  }
}
