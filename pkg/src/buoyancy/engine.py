"""Memory-buoyancy engine.

Each thing carries (base, t_anchor); its raw buoyancy at time t is
base * decay(t - t_anchor), computed lazily and never stored. Direct access
re-anchors to full vividness and spreads attenuated activation to related
things, confined to the active context. Context switches install reversible
inhibition overlays; effective buoyancy is raw times the overlay factor.
"""

from collections import defaultdict
from dataclasses import dataclass, field

from .decay import DecayParams, decay
from .errors import InvalidConfig, InvalidKappa, TimeTravel, UnknownThing
from .graph import SemanticGraph
from .inhibition import (
    InhibitionConfig,
    InhibitionOverlay,
    SwitchDetector,
    SwitchDetectorConfig,
)


@dataclass
class BuoyancyState:
    thing: str
    base: float = 0.0   # value at the last anchor, in [0,1]
    t_anchor: int = 0


@dataclass(frozen=True)
class SpreadConfig:
    gamma: float = 0.5    # per-hop attenuation
    epsilon: float = 0.05  # propagation floor
    max_hops: int = 3

    def __post_init__(self):
        if not 0 < self.gamma < 1:
            raise InvalidConfig(f"gamma must be in (0,1), got {self.gamma}")
        if not 0 < self.epsilon < 1:
            raise InvalidConfig(f"epsilon must be in (0,1), got {self.epsilon}")
        if self.max_hops < 1:
            raise InvalidConfig(f"max_hops must be >= 1, got {self.max_hops}")


@dataclass
class ActivationWave:
    origin: str
    time: int
    reached: dict       # thing id -> propagated value (> epsilon)
    inhibited: set      # foreign-context nodes the wave bumped into


def spread(graph: SemanticGraph, origin, source_value, config: SpreadConfig,
           active_context=None) -> ActivationWave:
    """Breadth-first activation with per-node max over admissible paths.

    A node receives v_parent * gamma * weight and forwards only while its
    value exceeds epsilon and the hop budget lasts. With an active context,
    nodes of foreign contexts are inhibited: they receive nothing and block
    the paths through them; overlap nodes (also in the active context) and
    context-free nodes pass. The origin is always reached.
    """
    if origin not in graph.things:
        raise UnknownThing(f"no thing {origin!r}")
    if not 0 < source_value <= 1:
        raise InvalidConfig(f"source value must be in (0,1], got {source_value}")

    def admissible(node):
        if active_context is None:
            return True
        ctxs = graph._membership[node]
        return not ctxs or active_context in ctxs

    best = {origin: source_value}
    inhibited = set()
    # frontier per hop level; longer paths can still win on heavier edges,
    # so track the best value seen per node at each level
    frontier = {origin: source_value}
    for _ in range(config.max_hops):
        nxt = defaultdict(float)
        for node, value in frontier.items():
            if value <= config.epsilon:
                continue
            for nbr, weight in graph.adjacency[node].items():
                if not admissible(nbr):
                    inhibited.add(nbr)
                    continue
                candidate = value * config.gamma * weight
                if candidate > config.epsilon and candidate > nxt[nbr]:
                    nxt[nbr] = candidate
        if not nxt:
            break
        frontier = dict(nxt)
        for node, value in frontier.items():
            if value > best.get(node, 0.0):
                best[node] = value

    # foreign-context nodes adjacent to anything reached count as inhibited;
    # the origin is reached by definition even when accessed out of context
    if active_context is not None:
        for node in best:
            for nbr in graph.adjacency[node]:
                if not admissible(nbr):
                    inhibited.add(nbr)
    inhibited.discard(origin)

    return ActivationWave(origin=origin, time=0, reached=best, inhibited=inhibited)


class BuoyancyEngine:
    """Owns all per-thing buoyancy state, overlays, and the logical clock."""

    def __init__(self, graph: SemanticGraph, decay_params: DecayParams = None,
                 spread_config: SpreadConfig = None,
                 inhibition_config: InhibitionConfig = None,
                 detector_config: SwitchDetectorConfig = None,
                 kappa_complete: float = 0.3):
        if not 0 <= kappa_complete < 1:
            raise InvalidKappa(f"kappa must be in [0,1), got {kappa_complete}")
        self.graph = graph
        self.decay_params = decay_params or DecayParams(kind="ebbinghaus", s=10.0)
        self.spread_config = spread_config or SpreadConfig()
        self.inhibition_config = inhibition_config or InhibitionConfig()
        self.kappa_complete = kappa_complete
        self.clock = 0
        self.states = {tid: BuoyancyState(thing=tid) for tid in graph.things}
        self.overlays = {}   # thing id -> InhibitionOverlay
        self.detector = SwitchDetector(detector_config)
        self.suggestions = []  # (t, Suggestion), advisory output stream

    # -- graph delegation (keeps states in sync) -----------------------------

    def add_thing(self, thing):
        self.graph.add_thing(thing)
        self.states[thing.id] = BuoyancyState(thing=thing.id, t_anchor=self.clock)
        return thing

    # -- clock ----------------------------------------------------------------

    def _advance(self, t):
        if t < self.clock:
            raise TimeTravel(f"event at t={t} behind clock {self.clock}")
        self.clock = t

    def advance_to(self, t):
        """Move the clock forward to t without side effects (pure decay)."""
        self._advance(t)
        return self.clock

    def tick(self, dt=1):
        self._advance(self.clock + dt)
        return self.clock

    # -- raw buoyancy ----------------------------------------------------------

    def mb_raw(self, thing_id, t=None) -> float:
        state = self._state(thing_id)
        if t is None:
            t = self.clock
        if t < state.t_anchor:
            raise TimeTravel(f"query at t={t} before anchor {state.t_anchor} of {thing_id!r}")
        if state.base == 0.0:
            return 0.0
        return state.base * decay(self.decay_params, t - state.t_anchor)

    def _state(self, thing_id) -> BuoyancyState:
        try:
            return self.states[thing_id]
        except KeyError:
            raise UnknownThing(f"no thing {thing_id!r}") from None

    # -- events ----------------------------------------------------------------

    def record_access(self, thing_id, t) -> ActivationWave:
        """Direct access: anchor to 1.0, spread, re-anchor raised neighbors.

        All comparisons use the pre-access snapshot, so the wave is atomic
        with respect to the triggering access.
        """
        self._state(thing_id)
        self._advance(t)

        # detector looks at the pre-access overlay status
        overlaid = thing_id in self.overlays
        inhibited_ctxs = set(self.graph._membership[thing_id])
        inhibited_ctxs.discard(self.graph.active_context)
        suggestion = self.detector.observe_access(
            thing_id, t, overlaid, inhibited_ctxs, self.graph.contexts)
        if suggestion is not None:
            self.suggestions.append((t, suggestion))

        wave = spread(self.graph, thing_id, 1.0, self.spread_config,
                      self.graph.active_context)
        wave.time = t

        snapshot = {nid: self.mb_raw(nid, t) for nid in wave.reached if nid != thing_id}
        self.states[thing_id] = BuoyancyState(thing=thing_id, base=1.0, t_anchor=t)
        for nid, value in wave.reached.items():
            if nid == thing_id:
                continue
            if value > snapshot[nid]:
                self.states[nid] = BuoyancyState(thing=nid, base=value, t_anchor=t)
        return wave

    def complete_task(self, thing_id, t, kappa=None) -> float:
        """Explicit forgetting on task completion: scale the value down by kappa."""
        if kappa is None:
            kappa = self.kappa_complete
        if not 0 <= kappa < 1:
            raise InvalidKappa(f"kappa must be in [0,1), got {kappa}")
        state = self._state(thing_id)
        self._advance(t)
        new_base = self.mb_raw(thing_id, t) * kappa
        self.states[thing_id] = BuoyancyState(thing=thing_id, base=new_base, t_anchor=t)
        return new_base

    def activate_context(self, context_id, t) -> set:
        """Switch the active context; overlay newly out-of-context things.

        Members of the activated context are released from inhibition;
        things already overlaid and still out of context keep their original
        t_switch so repeated switching does not restart the penalty.
        Context-free things are never overlaid. Returns the newly overlaid set.
        """
        ctx = self.graph.context(context_id)
        self._advance(t)
        self.graph.active_context = context_id

        for member in ctx.members:
            self.overlays.pop(member, None)

        cfg = self.inhibition_config
        installed = set()
        for tid in self.graph.things:
            if tid in ctx.members or tid in self.overlays:
                continue
            if not self.graph._membership[tid]:
                continue
            if self.mb_raw(tid, t) > 0.0:
                self.overlays[tid] = InhibitionOverlay(
                    thing=tid, t_switch=t, lam=cfg.lam, floor=cfg.iota_min)
                installed.add(tid)
        return installed

    # -- effective buoyancy -----------------------------------------------------

    def mb_effective(self, thing_id, t=None) -> float:
        if t is None:
            t = self.clock
        raw = self.mb_raw(thing_id, t)
        overlay = self.overlays.get(thing_id)
        if overlay is None:
            return raw
        return raw * overlay.factor(t)
