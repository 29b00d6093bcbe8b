"""The personal semantic network: things, weighted relations, contexts.

Relations are stored once but traversed both ways. Contexts are explicit
member sets with optional nucleus nodes; connectivity of a context is not
enforced (user data is messy) — validate() only warns about it.
"""

import json
from dataclasses import dataclass, field

from .errors import (
    DuplicateId,
    EmptyContext,
    InvalidKind,
    NucleusNotMember,
    SelfLoop,
    UnknownContext,
    UnknownThing,
    WeightOutOfRange,
)

THING_KINDS = {"document", "email", "event", "person", "topic", "task", "bookmark", "other"}


@dataclass
class Thing:
    id: str
    label: str = ""
    kind: str = "other"
    text: tuple = None  # lowercase tokens, None if the thing has no text

    def __post_init__(self):
        if not self.id:
            raise InvalidKind("thing id must be non-empty")
        if self.kind not in THING_KINDS:
            raise InvalidKind(f"unknown thing kind {self.kind!r}")
        if self.text is not None:
            self.text = tuple(tok.lower() for tok in self.text)


@dataclass
class Context:
    id: str
    label: str = ""
    members: frozenset = frozenset()
    nuclei: frozenset = frozenset()


class SemanticGraph:
    """Mutable graph; mutations are serialized by the caller, reads are cheap."""

    def __init__(self):
        self.things = {}             # id -> Thing
        self.adjacency = {}          # id -> {neighbor id -> weight}
        self.contexts = {}           # id -> Context
        self.active_context = None   # ContextId or None
        self._membership = {}        # thing id -> set of context ids

    # -- things -------------------------------------------------------------

    def add_thing(self, thing: Thing):
        if thing.id in self.things:
            raise DuplicateId(f"thing {thing.id!r} already exists")
        self.things[thing.id] = thing
        self.adjacency[thing.id] = {}
        self._membership[thing.id] = set()
        return thing

    def thing(self, thing_id: str) -> Thing:
        try:
            return self.things[thing_id]
        except KeyError:
            raise UnknownThing(f"no thing {thing_id!r}") from None

    # -- relations ----------------------------------------------------------

    def add_relation(self, from_id: str, to_id: str, weight: float, label: str = None):
        if from_id not in self.things or to_id not in self.things:
            raise UnknownThing(f"relation endpoint missing: {from_id!r}-{to_id!r}")
        if from_id == to_id:
            raise SelfLoop(f"self-loop on {from_id!r}")
        if not 0 < weight <= 1:
            raise WeightOutOfRange(f"weight must be in (0,1], got {weight}")
        # duplicate edge replaces the prior weight (idempotent trace replay)
        self.adjacency[from_id][to_id] = weight
        self.adjacency[to_id][from_id] = weight

    def neighbors(self, thing_id: str) -> dict:
        if thing_id not in self.things:
            raise UnknownThing(f"no thing {thing_id!r}")
        return self.adjacency[thing_id]

    # -- contexts -----------------------------------------------------------

    def define_context(self, context_id: str, label: str, members, nuclei=()):
        members = frozenset(members)
        nuclei = frozenset(nuclei)
        if not members:
            raise EmptyContext(f"context {context_id!r} has no members")
        missing = members - self.things.keys()
        if missing:
            raise UnknownThing(f"context {context_id!r} references unknown things {sorted(missing)}")
        if not nuclei <= members:
            raise NucleusNotMember(f"nuclei {sorted(nuclei - members)} not members of {context_id!r}")
        ctx = Context(id=context_id, label=label, members=members, nuclei=nuclei)
        old = self.contexts.get(context_id)
        if old is not None:
            for m in old.members:
                self._membership[m].discard(context_id)
        self.contexts[context_id] = ctx
        for m in members:
            self._membership[m].add(context_id)
        return ctx

    def context(self, context_id: str) -> Context:
        try:
            return self.contexts[context_id]
        except KeyError:
            raise UnknownContext(f"no context {context_id!r}") from None

    def contexts_of(self, thing_id: str) -> frozenset:
        if thing_id not in self.things:
            raise UnknownThing(f"no thing {thing_id!r}")
        return frozenset(self._membership[thing_id])

    # -- validation ---------------------------------------------------------

    def validate(self) -> list:
        """Full-scan integrity check; returns a list of warning strings."""
        warnings = []
        for tid, nbrs in self.adjacency.items():
            for nid, w in nbrs.items():
                assert nid in self.things, f"dangling relation {tid}-{nid}"
                assert self.adjacency[nid].get(tid) == w, f"asymmetric edge {tid}-{nid}"
        for ctx in self.contexts.values():
            if not self._is_connected(ctx.members):
                warnings.append(f"context {ctx.id!r} member set is not connected")
        return warnings

    def _is_connected(self, members: frozenset) -> bool:
        if len(members) <= 1:
            return True
        seen = set()
        stack = [next(iter(members))]
        while stack:
            node = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            stack.extend(n for n in self.adjacency.get(node, ()) if n in members)
        return seen == members


# -- line-delimited JSON import/export ---------------------------------------

def dump_graph(graph: SemanticGraph) -> str:
    """Serialize as JSONL: things, then relations, then contexts."""
    lines = []
    for tid in sorted(graph.things):
        t = graph.things[tid]
        rec = {"type": "thing", "id": t.id, "label": t.label, "kind": t.kind}
        if t.text is not None:
            rec["text"] = list(t.text)
        lines.append(json.dumps(rec))
    seen = set()
    for tid in sorted(graph.adjacency):
        for nid in sorted(graph.adjacency[tid]):
            if (nid, tid) in seen:
                continue
            seen.add((tid, nid))
            lines.append(json.dumps(
                {"type": "relation", "from": tid, "to": nid, "weight": graph.adjacency[tid][nid]}))
    for cid in sorted(graph.contexts):
        c = graph.contexts[cid]
        lines.append(json.dumps(
            {"type": "context", "id": c.id, "label": c.label,
             "members": sorted(c.members), "nuclei": sorted(c.nuclei)}))
    return "\n".join(lines) + ("\n" if lines else "")


def load_graph(text: str) -> SemanticGraph:
    graph = SemanticGraph()
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        rec = json.loads(line)
        kind = rec["type"]
        if kind == "thing":
            graph.add_thing(Thing(id=rec["id"], label=rec.get("label", ""),
                                  kind=rec.get("kind", "other"),
                                  text=tuple(rec["text"]) if rec.get("text") else None))
        elif kind == "relation":
            graph.add_relation(rec["from"], rec["to"], rec["weight"], rec.get("label"))
        elif kind == "context":
            graph.define_context(rec["id"], rec.get("label", ""),
                                 rec["members"], rec.get("nuclei", ()))
        else:
            raise InvalidKind(f"unknown record type {kind!r}")
    return graph
