"""Reversible task-switch inhibition and switch-detection heuristics.

Inhibition is a multiplicative overlay on top of raw buoyancy: it never
mutates the underlying state, so removing the overlay restores the raw
trajectory bit-exactly. The detector watches the access stream for hits on
inhibited things and suggests (never performs) context switches or new
contexts.
"""

import math
from collections import deque
from dataclasses import dataclass

from .errors import InvalidConfig


@dataclass(frozen=True)
class InhibitionConfig:
    lam: float = 0.5       # overlay decay rate per tick
    iota_min: float = 0.1  # attenuation floor; inhibition never erases

    def __post_init__(self):
        if self.lam <= 0:
            raise InvalidConfig(f"lambda must be > 0, got {self.lam}")
        if not 0 < self.iota_min < 1:
            raise InvalidConfig(f"iota_min must be in (0,1), got {self.iota_min}")


@dataclass(frozen=True)
class InhibitionOverlay:
    thing: str
    t_switch: int
    lam: float
    floor: float

    def factor(self, t: int) -> float:
        """Attenuation in [floor, 1]; 1 exactly at t_switch, fast decay after."""
        if t <= self.t_switch:
            return 1.0
        return max(self.floor, math.exp(-self.lam * (t - self.t_switch)))


@dataclass(frozen=True)
class SwitchDetectorConfig:
    window: int = 10        # sliding window of recent accesses (W)
    min_hits: int = 3       # inhibited hits needed to speak up (K)
    jaccard: float = 0.5    # below this vs every stored context -> novel (theta)
    min_contexts: int = 2   # distinct inhibited contexts needed for create_new

    def __post_init__(self):
        if self.window < 1 or self.min_hits < 1 or self.min_hits > self.window:
            raise InvalidConfig("need 1 <= min_hits <= window")
        if not 0 < self.jaccard <= 1:
            raise InvalidConfig(f"jaccard must be in (0,1], got {self.jaccard}")
        if self.min_contexts < 2:
            raise InvalidConfig("min_contexts must be >= 2")


@dataclass(frozen=True)
class Suggestion:
    kind: str                  # "switch_to" | "create_new"
    context: str = None        # target context for switch_to
    members: frozenset = None  # proposed member set for create_new
    evidence: tuple = ()       # ((thing_id, t), ...)


class SwitchDetector:
    """Pure observer over the access stream; emitting changes no state."""

    def __init__(self, config: SwitchDetectorConfig = None):
        self.config = config or SwitchDetectorConfig()
        self._window = deque(maxlen=self.config.window)

    def observe_access(self, thing_id, t, overlaid, inhibited_contexts, contexts):
        """Record one access and maybe emit a suggestion.

        `overlaid` is whether the thing carried an overlay at access time,
        `inhibited_contexts` its non-active contexts at that moment, and
        `contexts` the graph's full context map (for the novelty check).
        """
        self._window.append((thing_id, t, overlaid, frozenset(inhibited_contexts)))

        cfg = self.config
        hits = [(thing, t_hit, ctxs) for thing, t_hit, was_overlaid, ctxs in self._window
                if was_overlaid]
        if len(hits) < cfg.min_hits:
            return None
        evidence = tuple((thing, t_hit) for thing, t_hit, _ in hits)
        hit_things = {thing for thing, _, _ in hits}

        # all hits share one inhibited context -> suggest switching to it
        common = None
        for _, _, ctxs in hits:
            common = set(ctxs) if common is None else common & ctxs
        if common:
            target = min(common)
            if hit_things <= contexts[target].members:
                return Suggestion(kind="switch_to", context=target, evidence=evidence)

        # hits spread over several inhibited contexts and match no stored one
        spanned = set()
        for _, _, ctxs in hits:
            spanned |= ctxs
        if len(spanned) >= cfg.min_contexts and \
                self._matches_no_stored_context(hit_things, contexts, cfg.jaccard):
            return Suggestion(kind="create_new", members=frozenset(hit_things),
                              evidence=evidence)
        return None

    @staticmethod
    def _matches_no_stored_context(hit_things, contexts, theta):
        for ctx in contexts.values():
            inter = len(hit_things & ctx.members)
            union = len(hit_things | ctx.members)
            if union and inter / union >= theta:
                return False
        return True
