"""Trace files, deterministic replay, and state digests.

A trace is line-delimited JSON, one timestamped event per line, with
non-decreasing logical ticks. Replaying (graph, config, trace) is a pure
function: the same bytes always produce the same output records and the
same 256-bit digest of the final engine state.
"""

import hashlib
import json
import struct
from dataclasses import dataclass

from .decay import DecayParams
from .engine import BuoyancyEngine, SpreadConfig
from .errors import (
    EngineError,
    NonMonotoneTime,
    ParseError,
    ReplayError,
    UnknownId,
)
from .graph import SemanticGraph, load_graph
from .inhibition import InhibitionConfig, SwitchDetectorConfig
from .retrieval import Query, RankingConfig, TfIdfIndex, ViewConfig, browse_view, search

EVENT_KINDS = {"access", "activate_context", "complete_task", "tick", "probe", "query"}


@dataclass(frozen=True)
class TraceEvent:
    seq: int
    t: int
    kind: str
    payload: dict


@dataclass(frozen=True)
class EngineConfig:
    decay: DecayParams
    spread: SpreadConfig
    inhibition: InhibitionConfig
    detector: SwitchDetectorConfig
    kappa_complete: float = 0.3

    @classmethod
    def from_dict(cls, raw: dict) -> "EngineConfig":
        decay_raw = dict(raw.get("decay", {"kind": "ebbinghaus", "s": 10.0}))
        spread_raw = raw.get("spread", {})
        inh_raw = raw.get("inhibition", {})
        det_raw = raw.get("detector", {})
        return cls(
            decay=DecayParams(kind=decay_raw.get("kind", "ebbinghaus"),
                              alpha=decay_raw.get("alpha", 1.0),
                              s=decay_raw.get("s", 1.0)),
            spread=SpreadConfig(gamma=spread_raw.get("gamma", 0.5),
                                epsilon=spread_raw.get("epsilon", 0.05),
                                max_hops=spread_raw.get("max_hops", 3)),
            inhibition=InhibitionConfig(lam=inh_raw.get("lambda", 0.5),
                                        iota_min=inh_raw.get("iota_min", 0.1)),
            detector=SwitchDetectorConfig(window=det_raw.get("window", 10),
                                          min_hits=det_raw.get("min_hits", 3),
                                          jaccard=det_raw.get("jaccard", 0.5),
                                          min_contexts=det_raw.get("min_contexts", 2)),
            kappa_complete=raw.get("kappa_complete", 0.3),
        )

    @classmethod
    def from_json(cls, text: str) -> "EngineConfig":
        return cls.from_dict(json.loads(text) if text.strip() else {})

    def build_engine(self, graph: SemanticGraph) -> BuoyancyEngine:
        return BuoyancyEngine(graph, decay_params=self.decay,
                              spread_config=self.spread,
                              inhibition_config=self.inhibition,
                              detector_config=self.detector,
                              kappa_complete=self.kappa_complete)


def parse_trace(text: str, graph: SemanticGraph = None) -> list:
    """Parse a JSONL trace; errors carry the 1-based line number."""
    events = []
    last_t = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc}", line=lineno) from None
        if not isinstance(rec, dict) or "t" not in rec or "kind" not in rec:
            raise ParseError("event needs 't' and 'kind'", line=lineno)
        t, kind = rec["t"], rec["kind"]
        if not isinstance(t, int) or t < 0:
            raise ParseError(f"t must be a non-negative integer, got {t!r}", line=lineno)
        if kind not in EVENT_KINDS:
            raise ParseError(f"unknown event kind {kind!r}", line=lineno)
        if last_t is not None and t < last_t:
            raise NonMonotoneTime(f"t={t} after t={last_t}", line=lineno)
        last_t = t
        payload = {k: v for k, v in rec.items() if k not in ("t", "kind")}
        if graph is not None:
            _check_ids(kind, payload, graph, lineno)
        events.append(TraceEvent(seq=len(events) + 1, t=t, kind=kind, payload=payload))
    return events


def _check_ids(kind, payload, graph, lineno):
    if kind in ("access", "complete_task"):
        if payload.get("thing") not in graph.things:
            raise UnknownId(f"unknown thing {payload.get('thing')!r}", line=lineno)
    elif kind == "activate_context":
        if payload.get("context") not in graph.contexts:
            raise UnknownId(f"unknown context {payload.get('context')!r}", line=lineno)
    elif kind == "probe":
        for tid in payload.get("things", ()):
            if tid not in graph.things:
                raise UnknownId(f"unknown thing {tid!r}", line=lineno)


def replay(graph: SemanticGraph, config: EngineConfig, events,
           engine: BuoyancyEngine = None):
    """Apply events in order against a fresh engine; returns (digest, records)."""
    engine = engine or config.build_engine(graph)
    index = TfIdfIndex(graph)
    records = []
    seen_suggestions = 0
    for event in events:
        try:
            _apply(engine, index, event, records)
        except EngineError as exc:
            raise ReplayError(event.seq, exc) from exc
        # surface detector output inline, in event order
        while seen_suggestions < len(engine.suggestions):
            t, sug = engine.suggestions[seen_suggestions]
            seen_suggestions += 1
            rec = {"type": "suggestion", "t": t, "suggestion": sug.kind,
                   "evidence": [list(e) for e in sug.evidence]}
            if sug.kind == "switch_to":
                rec["context"] = sug.context
            else:
                rec["members"] = sorted(sug.members)
            records.append(rec)
    return state_digest(engine), records


def _apply(engine, index, event, records):
    t, kind, payload = event.t, event.kind, event.payload
    if kind == "access":
        engine.record_access(payload["thing"], t)
    elif kind == "activate_context":
        engine.activate_context(payload["context"], t)
    elif kind == "complete_task":
        engine.complete_task(payload["thing"], t, payload.get("kappa"))
    elif kind == "tick":
        engine.advance_to(max(engine.clock, t))
    elif kind == "probe":
        engine.advance_to(max(engine.clock, t))
        for tid in payload["things"]:
            records.append({"type": "probe", "thing_id": tid, "t": t,
                            "mb_raw": engine.mb_raw(tid, t),
                            "mb_effective": engine.mb_effective(tid, t)})
    elif kind == "query":
        engine.advance_to(max(engine.clock, t))
        terms = payload.get("terms") or payload.get("q", "").split()
        ranking = RankingConfig(alpha=payload.get("alpha", 0.5))
        view = ViewConfig(tau=payload.get("tau", 0.5),
                          mode=payload.get("mode", "hide"),
                          show_forgotten=payload.get("show_forgotten", False))
        results = search(engine, index, Query(tuple(terms)), t, ranking, view)
        records.append({"type": "query", "t": t, "terms": list(terms),
                        "results": [{"thing": r.thing, "relevance": r.relevance,
                                     "inhibition": r.inhibition, "score": r.score}
                                    for r in results]})


# -- digest -------------------------------------------------------------------

def _f64(x: float) -> bytes:
    return struct.pack(">d", x)


def state_digest(engine: BuoyancyEngine) -> str:
    """SHA-256 over a canonical, bit-exact serialization of engine state."""
    h = hashlib.sha256()
    h.update(struct.pack(">q", engine.clock))
    h.update((engine.graph.active_context or "").encode())
    h.update(b"\x00")
    for tid in sorted(engine.states):
        state = engine.states[tid]
        h.update(tid.encode())
        h.update(_f64(state.base))
        h.update(struct.pack(">q", state.t_anchor))
    h.update(b"\x01")
    for tid in sorted(engine.overlays):
        ov = engine.overlays[tid]
        h.update(tid.encode())
        h.update(struct.pack(">q", ov.t_switch))
        h.update(_f64(ov.lam))
        h.update(_f64(ov.floor))
    return h.hexdigest()


# -- CSV export ---------------------------------------------------------------

def format_series(records) -> str:
    """CSV of probe rows, 12 significant digits, in emission order."""
    lines = ["thing_id,t,mb_raw,mb_effective"]
    for rec in records:
        if rec.get("type") != "probe":
            continue
        lines.append("%s,%d,%.12g,%.12g" % (
            rec["thing_id"], rec["t"], rec["mb_raw"], rec["mb_effective"]))
    return "\n".join(lines) + "\n"


def export_series(records, path):
    with open(path, "w") as fh:
        fh.write(format_series(records))


def replay_files(graph_path, config_path, trace_path):
    """File-level entry point used by the CLI and the service loader."""
    with open(graph_path) as fh:
        graph = load_graph(fh.read())
    with open(config_path) as fh:
        config = EngineConfig.from_json(fh.read())
    with open(trace_path) as fh:
        events = parse_trace(fh.read(), graph)
    return replay(graph, config, events)
