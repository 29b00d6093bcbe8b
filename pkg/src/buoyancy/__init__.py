"""Memory-buoyancy engine for a personal semantic network.

Models how vivid information items are over time: access anchors an item to
full vividness, time decays it, spreading activation keeps related items
afloat, and context switches reversibly inhibit out-of-context items.
Retrieval combines text relevance with inhibition-aware ranking and hiding.
"""

from .decay import DecayKind, DecayParams, decay, decay_series
from .engine import ActivationWave, BuoyancyEngine, BuoyancyState, SpreadConfig, spread
from .graph import Context, SemanticGraph, Thing, dump_graph, load_graph
from .inhibition import (
    InhibitionConfig,
    InhibitionOverlay,
    Suggestion,
    SwitchDetector,
    SwitchDetectorConfig,
)
from .retrieval import (
    Query,
    RankedResult,
    RankingConfig,
    TfIdfIndex,
    ViewConfig,
    browse_view,
    hiding,
    search,
    tokenize,
)
from .trace import (
    EngineConfig,
    TraceEvent,
    export_series,
    format_series,
    parse_trace,
    replay,
    replay_files,
    state_digest,
)

__all__ = [
    "ActivationWave", "BuoyancyEngine", "BuoyancyState", "Context", "DecayKind",
    "DecayParams", "EngineConfig", "InhibitionConfig", "InhibitionOverlay",
    "Query", "RankedResult", "RankingConfig", "SemanticGraph", "SpreadConfig",
    "Suggestion", "SwitchDetector", "SwitchDetectorConfig", "TfIdfIndex", "Thing",
    "TraceEvent", "ViewConfig", "browse_view", "decay", "decay_series",
    "dump_graph", "export_series", "format_series", "hiding", "load_graph",
    "parse_trace", "replay", "replay_files", "search", "spread", "state_digest",
    "tokenize",
]
