"""Shared test fixtures and independent oracles.

The oracles deliberately use a different algorithm shape than the engine
(simple-path enumeration, explicit dot products) so agreement is meaningful.
"""

import random

from buoyancy import (
    BuoyancyEngine,
    DecayParams,
    InhibitionConfig,
    SemanticGraph,
    SpreadConfig,
    SwitchDetectorConfig,
    Thing,
)


def make_graph(things, edges=(), contexts=()):
    """things: ids or (id, text) pairs; edges: (a, b, w); contexts: (id, members)."""
    g = SemanticGraph()
    for entry in things:
        if isinstance(entry, tuple):
            tid, text = entry
            g.add_thing(Thing(id=tid, text=tuple(text.split())))
        else:
            g.add_thing(Thing(id=entry))
    for a, b, w in edges:
        g.add_relation(a, b, w)
    for cid, members in contexts:
        g.define_context(cid, cid, members)
    return g


def make_engine(graph, kind="ebbinghaus", alpha=1.0, s=10.0, gamma=0.5,
                epsilon=0.05, max_hops=3, lam=0.5, iota_min=0.1, **kw):
    return BuoyancyEngine(
        graph,
        decay_params=DecayParams(kind=kind, alpha=alpha, s=s),
        spread_config=SpreadConfig(gamma=gamma, epsilon=epsilon, max_hops=max_hops),
        inhibition_config=InhibitionConfig(lam=lam, iota_min=iota_min),
        **kw,
    )


# -- spreading oracle: all simple paths --------------------------------------

def spread_oracle(graph, origin, source_value, config, active_context=None):
    """Enumerate admissible simple paths up to max_hops; per-node max product.

    Returns (reached, inhibited). A path is discarded as soon as it touches a
    node of a foreign context (when a context is active); values at or below
    epsilon are not recorded and the origin is always reached.
    """
    def admissible(node):
        if active_context is None:
            return True
        ctxs = graph.contexts_of(node)
        return not ctxs or active_context in ctxs

    best = {origin: source_value}

    def walk(node, value, hops, visited):
        if hops == config.max_hops:
            return
        for nbr, weight in graph.adjacency[node].items():
            if nbr in visited or not admissible(nbr):
                continue
            v = value * config.gamma * weight
            if v <= config.epsilon:
                continue
            if v > best.get(nbr, 0.0):
                best[nbr] = v
            walk(nbr, v, hops + 1, visited | {nbr})

    walk(origin, source_value, 0, {origin})

    inhibited = set()
    if active_context is not None:
        for node in best:
            for nbr in graph.adjacency[node]:
                if not admissible(nbr):
                    inhibited.add(nbr)
    inhibited.discard(origin)
    return best, inhibited


# -- relevance oracle: explicit dense vectors ---------------------------------

def relevance_oracle(docs, query_terms):
    """docs: {doc_id: token tuple}. Returns {doc_id: cosine} via dense vectors."""
    import math
    vocab = sorted({t for toks in docs.values() for t in toks} | set(query_terms))
    n = len(docs)
    df = {term: sum(1 for toks in docs.values() if term in toks) for term in vocab}

    def vec(tokens):
        return [tokens.count(term) * (math.log((n + 1) / (df[term] + 1)) + 1.0)
                for term in vocab]

    qv = vec(list(query_terms))
    out = {}
    for doc_id, toks in docs.items():
        dv = vec(list(toks))
        dot = sum(a * b for a, b in zip(qv, dv))
        qn = math.sqrt(sum(a * a for a in qv))
        dn = math.sqrt(sum(b * b for b in dv))
        out[doc_id] = 0.0 if dot == 0 else dot / (qn * dn)
    return out


# -- random structures ---------------------------------------------------------

def random_graph(rng: random.Random, max_nodes=12, max_contexts=3):
    n = rng.randint(2, max_nodes)
    ids = [f"n{i}" for i in range(n)]
    g = make_graph(ids)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.35:
                g.add_relation(ids[i], ids[j], round(rng.uniform(0.1, 1.0), 3))
    n_ctx = rng.randint(0, max_contexts)
    for c in range(n_ctx):
        size = rng.randint(1, max(1, n // 2))
        members = rng.sample(ids, size)
        g.define_context(f"c{c}", f"c{c}", members)
    return g


def random_trace_events(rng: random.Random, graph, n_events=50, t_step_max=5):
    """List of (kind, arg, t) tuples with non-decreasing t."""
    things = sorted(graph.things)
    contexts = sorted(graph.contexts)
    events = []
    t = 0
    for _ in range(n_events):
        t += rng.randint(0, t_step_max)
        kinds = ["access", "access", "tick", "complete"]
        if contexts:
            kinds.append("activate")
        kind = rng.choice(kinds)
        if kind == "access" or kind == "complete":
            events.append((kind, rng.choice(things), t))
        elif kind == "activate":
            events.append((kind, rng.choice(contexts), t))
        else:
            events.append((kind, None, t))
    return events


def apply_event(engine, event):
    kind, arg, t = event
    if kind == "access":
        engine.record_access(arg, t)
    elif kind == "complete":
        engine.complete_task(arg, t)
    elif kind == "activate":
        engine.activate_context(arg, t)
    else:
        engine.advance_to(max(engine.clock, t))
