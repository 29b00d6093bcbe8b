// Typed client for the engine's HTTP surface. Every call is appended to a
// log so scripted gesture sequences can be checked against the documented
// endpoint mapping. The transport is injectable for tests.

export interface ViewItem {
  thing: string;
  hiding: number;
}

export interface ViewResponse {
  t: number;
  items: ViewItem[];
}

export interface SearchResult {
  thing: string;
  relevance: number;
  inhibition: number;
  score: number;
}

export interface SearchResponse {
  t: number;
  results: SearchResult[];
}

export interface SeriesPoint {
  t: number;
  mb_raw: number;
  mb_effective: number;
}

export interface SeriesResponse {
  thing: string;
  series: SeriesPoint[];
}

export interface SuggestionRecord {
  t: number;
  suggestion: "switch_to" | "create_new";
  context?: string;
  members?: string[];
  evidence: [string, number][];
}

export interface MutationMeta {
  clock: number;
  visibility_changed: string[];
}

export interface CallLogEntry {
  method: string;
  path: string;
  body?: unknown;
}

export type Transport = (
  method: string,
  path: string,
  body?: unknown
) => Promise<unknown>;

export function fetchTransport(baseUrl: string): Transport {
  return async (method, path, body) => {
    const res = await fetch(baseUrl + path, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!res.ok) {
      const detail = await res.json().catch(() => ({}));
      throw new ApiError(res.status, (detail as { error?: string }).error ?? "HttpError");
    }
    return res.json();
  };
}

export class ApiError extends Error {
  constructor(public status: number, public serverError: string) {
    super(`${status} ${serverError}`);
  }
}

export interface ViewParams {
  context?: string;
  tau: number;
  mode: "hide" | "transparency";
  show_forgotten: boolean;
  t?: number;
}

export class ApiClient {
  readonly callLog: CallLogEntry[] = [];

  constructor(private transport: Transport) {}

  private call<T>(method: string, path: string, body?: unknown): Promise<T> {
    this.callLog.push(body === undefined ? { method, path } : { method, path, body });
    return this.transport(method, path, body) as Promise<T>;
  }

  accessThing(thing: string, t?: number) {
    return this.call<MutationMeta & { wave: unknown }>(
      "POST", "/events/access", t === undefined ? { thing } : { thing, t });
  }

  activateContext(context: string, t?: number) {
    return this.call<MutationMeta & { active_context: string; overlaid: string[] }>(
      "POST", `/contexts/${context}/activate`, t === undefined ? {} : { t });
  }

  completeTask(thing: string, t?: number) {
    return this.call<MutationMeta & { mb_raw: number }>(
      "POST", "/events/complete", t === undefined ? { thing } : { thing, t });
  }

  tick(dt: number) {
    return this.call<MutationMeta>("POST", "/clock/tick", { dt });
  }

  createContext(id: string, members: string[], label = "") {
    return this.call<MutationMeta>("POST", "/contexts", { id, label, members });
  }

  view(params: ViewParams) {
    const q = new URLSearchParams();
    if (params.context) q.set("context", params.context);
    q.set("tau", String(params.tau));
    q.set("mode", params.mode);
    q.set("show_forgotten", String(params.show_forgotten));
    if (params.t !== undefined) q.set("t", String(params.t));
    return this.call<ViewResponse>("GET", `/view?${q.toString()}`);
  }

  search(q: string, alpha: number, tau: number, mode: "hide" | "transparency",
         showForgotten: boolean) {
    const qs = new URLSearchParams({
      q,
      alpha: String(alpha),
      tau: String(tau),
      mode,
      show_forgotten: String(showForgotten),
    });
    return this.call<SearchResponse>("GET", `/search?${qs.toString()}`);
  }

  series(thing: string, from: number, to: number, step = 1) {
    return this.call<SeriesResponse>(
      "GET", `/series/${thing}?from=${from}&to=${to}&step=${step}`);
  }

  suggestions() {
    return this.call<{ suggestions: SuggestionRecord[] }>("GET", "/suggestions");
  }

  digest() {
    return this.call<{ digest: string; clock: number }>("GET", "/state/digest");
  }
}
