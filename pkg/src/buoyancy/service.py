"""HTTP surface over the engine for the workbench and scripts.

All mutations are serialized through one lock and stamped with the session's
logical clock; with autoTick off (the default) state changes only via
explicit requests, so the digest is stable between calls. Every mutating
response reports the post-event clock and which things changed visibility
under the default view.
"""

import json
import threading

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .engine import BuoyancyEngine
from .errors import EngineError, TimeTravel, UnknownContext, UnknownThing
from .graph import SemanticGraph, Thing, dump_graph, load_graph
from .retrieval import Query, RankingConfig, TfIdfIndex, ViewConfig, browse_view, hiding, search
from .trace import EngineConfig, state_digest

DEFAULT_VIEW = ViewConfig(tau=0.5, mode="hide", show_forgotten=False)


class Session:
    """Engine plus logical clock behind a single mutation lock."""

    def __init__(self, engine: BuoyancyEngine):
        self.engine = engine
        self.lock = threading.Lock()
        self.index = TfIdfIndex(engine.graph)

    def rebuild_index(self):
        self.index = TfIdfIndex(self.engine.graph)

    def visible_set(self, t):
        eng = self.engine
        return {tid for tid in eng.graph.things
                if hiding(eng, tid, max(t, eng.states[tid].t_anchor), DEFAULT_VIEW) == 0.0}


def create_app(engine: BuoyancyEngine = None) -> FastAPI:
    session = Session(engine or EngineConfig.from_dict({}).build_engine(SemanticGraph()))
    app = FastAPI(title="memory buoyancy engine")
    app.state.session = session
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
                       allow_headers=["*"])

    @app.exception_handler(EngineError)
    async def engine_error(request: Request, exc: EngineError):
        if isinstance(exc, (UnknownThing, UnknownContext)):
            status = 404
        elif isinstance(exc, TimeTravel):
            status = 409
        else:
            status = 400
        return JSONResponse(status_code=status,
                            content={"error": type(exc).__name__, "detail": str(exc)})

    def mutate(fn, t):
        """Run a mutation under the lock; report clock + visibility diff."""
        eng = session.engine
        with session.lock:
            before = session.visible_set(max(t, eng.clock))
            result = fn()
            after = session.visible_set(eng.clock)
            return result, {"clock": eng.clock,
                            "visibility_changed": sorted(before ^ after)}

    def event_time(body):
        t = body.get("t")
        return session.engine.clock if t is None else int(t)

    # -- graph mutations ------------------------------------------------------

    @app.post("/things")
    async def post_thing(request: Request):
        body = await request.json()
        def run():
            thing = Thing(id=body["id"], label=body.get("label", ""),
                          kind=body.get("kind", "other"),
                          text=tuple(body["text"]) if body.get("text") else None)
            session.engine.add_thing(thing)
            session.rebuild_index()
            return thing.id
        tid, meta = mutate(run, session.engine.clock)
        return {"id": tid, **meta}

    @app.post("/relations")
    async def post_relation(request: Request):
        body = await request.json()
        def run():
            session.engine.graph.add_relation(body["from"], body["to"],
                                              body["weight"], body.get("label"))
        _, meta = mutate(run, session.engine.clock)
        return meta

    @app.post("/contexts")
    async def post_context(request: Request):
        body = await request.json()
        def run():
            session.engine.graph.define_context(body["id"], body.get("label", ""),
                                                body["members"], body.get("nuclei", ()))
        _, meta = mutate(run, session.engine.clock)
        return meta

    # -- events -----------------------------------------------------------------

    @app.post("/events/access")
    async def post_access(request: Request):
        body = await request.json()
        t = event_time(body)
        wave, meta = mutate(lambda: session.engine.record_access(body["thing"], t), t)
        return {"wave": {"origin": wave.origin, "time": wave.time,
                         "reached": wave.reached, "inhibited": sorted(wave.inhibited)},
                **meta}

    @app.post("/contexts/{context_id}/activate")
    async def post_activate(context_id: str, request: Request):
        body = await request.json() if await request.body() else {}
        t = event_time(body)
        overlaid, meta = mutate(
            lambda: session.engine.activate_context(context_id, t), t)
        return {"active_context": context_id, "overlaid": sorted(overlaid), **meta}

    @app.post("/events/complete")
    async def post_complete(request: Request):
        body = await request.json()
        t = event_time(body)
        new_mb, meta = mutate(
            lambda: session.engine.complete_task(body["thing"], t, body.get("kappa")), t)
        return {"thing": body["thing"], "mb_raw": new_mb, **meta}

    @app.post("/clock/tick")
    async def post_tick(request: Request):
        body = await request.json()
        dt = int(body.get("dt", 1))
        _, meta = mutate(lambda: session.engine.tick(dt), session.engine.clock + dt)
        return meta

    # -- reads -----------------------------------------------------------------

    @app.get("/view")
    async def get_view(context: str = None, tau: float = 0.5, mode: str = "hide",
                       show_forgotten: bool = False, t: int = None):
        eng = session.engine
        at = eng.clock if t is None else t
        view = ViewConfig(tau=tau, mode=mode, show_forgotten=show_forgotten)
        rows = browse_view(eng, context or None, at, view)
        return {"t": at, "items": [{"thing": tid, "hiding": h} for tid, h in rows]}

    @app.get("/search")
    async def get_search(q: str, alpha: float = 0.5, tau: float = 0.5,
                         mode: str = "hide", show_forgotten: bool = False,
                         t: int = None):
        eng = session.engine
        at = eng.clock if t is None else t
        results = search(eng, session.index, Query(tuple(q.split())), at,
                         RankingConfig(alpha=alpha),
                         ViewConfig(tau=tau, mode=mode, show_forgotten=show_forgotten))
        return {"t": at,
                "results": [{"thing": r.thing, "relevance": r.relevance,
                             "inhibition": r.inhibition, "score": r.score}
                            for r in results]}

    @app.get("/series/{thing_id}")
    async def get_series(thing_id: str, request: Request, step: int = 1):
        params = request.query_params
        eng = session.engine
        t_from = int(params.get("from", eng.clock))
        t_to = int(params.get("to", eng.clock))
        rows = []
        for t in range(t_from, t_to + 1, max(1, step)):
            rows.append({"t": t, "mb_raw": eng.mb_raw(thing_id, t),
                         "mb_effective": eng.mb_effective(thing_id, t)})
        return {"thing": thing_id, "series": rows}

    @app.get("/suggestions")
    async def get_suggestions():
        out = []
        for t, sug in session.engine.suggestions:
            rec = {"t": t, "suggestion": sug.kind,
                   "evidence": [list(e) for e in sug.evidence]}
            if sug.kind == "switch_to":
                rec["context"] = sug.context
            else:
                rec["members"] = sorted(sug.members)
            out.append(rec)
        return {"suggestions": out}

    @app.get("/state/digest")
    async def get_digest():
        return {"digest": state_digest(session.engine), "clock": session.engine.clock}

    # -- snapshots ---------------------------------------------------------------

    @app.post("/snapshot/save")
    async def snapshot_save(request: Request):
        body = await request.json()
        path = body["path"]
        eng = session.engine
        with session.lock:
            snap = {
                "clock": eng.clock,
                "active_context": eng.graph.active_context,
                "states": {tid: [s.base, s.t_anchor] for tid, s in eng.states.items()},
                "overlays": {tid: [o.t_switch, o.lam, o.floor]
                             for tid, o in eng.overlays.items()},
            }
            with open(path + ".graph.jsonl", "w") as fh:
                fh.write(dump_graph(eng.graph))
            with open(path + ".state.json", "w") as fh:
                json.dump(snap, fh, sort_keys=True)
        return {"saved": path}

    @app.post("/snapshot/load")
    async def snapshot_load(request: Request):
        from .engine import BuoyancyState
        from .inhibition import InhibitionOverlay
        body = await request.json()
        path = body["path"]
        with session.lock:
            with open(path + ".graph.jsonl") as fh:
                graph = load_graph(fh.read())
            with open(path + ".state.json") as fh:
                snap = json.load(fh)
            eng = session.engine
            old = eng  # keep configs
            engine = BuoyancyEngine(graph, decay_params=old.decay_params,
                                    spread_config=old.spread_config,
                                    inhibition_config=old.inhibition_config,
                                    kappa_complete=old.kappa_complete)
            engine.clock = snap["clock"]
            engine.graph.active_context = snap["active_context"]
            for tid, (base, t_anchor) in snap["states"].items():
                engine.states[tid] = BuoyancyState(thing=tid, base=base, t_anchor=t_anchor)
            for tid, (t_switch, lam, floor) in snap["overlays"].items():
                engine.overlays[tid] = InhibitionOverlay(thing=tid, t_switch=t_switch,
                                                         lam=lam, floor=floor)
            session.engine = engine
            session.rebuild_index()
        return {"loaded": path, "clock": session.engine.clock}

    return app
