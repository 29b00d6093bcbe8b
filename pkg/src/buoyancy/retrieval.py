"""Relevance scoring, hiding, and inhibition-aware ranking.

Relevance is tf-idf cosine over thing text (bm25 would slot in behind the
same interface). Ranking combines relevance with an inhibition term derived
from effective buoyancy: score = alpha * relevance - beta * (1 - mb_effective),
so vivid items float and inhibited ones sink. Hiding implements both the
binary threshold and the transparency variant.
"""

import math
import re
from collections import Counter
from dataclasses import dataclass

from .errors import EmptyQuery, InvalidRankingConfig, UnknownContext

BINARY_HIDE = "hide"
TRANSPARENCY = "transparency"

_TOKEN_RE = re.compile(r"\w+")


def tokenize(text: str) -> tuple:
    return tuple(_TOKEN_RE.findall(text.lower()))


@dataclass(frozen=True)
class Query:
    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(t.lower() for t in self.terms))
        if not self.terms:
            raise EmptyQuery("query needs at least one term")


@dataclass(frozen=True)
class RankingConfig:
    alpha: float = 0.5
    beta: float = None  # derived as 1 - alpha when omitted
    tie_break: str = "by_effective_mb"  # or "by_id"

    def __post_init__(self):
        if not 0 <= self.alpha <= 1:
            raise InvalidRankingConfig(f"alpha must be in [0,1], got {self.alpha}")
        if self.beta is None:
            object.__setattr__(self, "beta", 1.0 - self.alpha)
        if abs(self.alpha + self.beta - 1.0) > 1e-12:
            raise InvalidRankingConfig(
                f"alpha + beta must be 1, got {self.alpha} + {self.beta}")
        if self.tie_break not in ("by_effective_mb", "by_id"):
            raise InvalidRankingConfig(f"unknown tie break {self.tie_break!r}")


@dataclass(frozen=True)
class ViewConfig:
    tau: float = 0.5
    mode: str = BINARY_HIDE
    show_forgotten: bool = False

    def __post_init__(self):
        if not 0 <= self.tau <= 1:
            raise InvalidRankingConfig(f"tau must be in [0,1], got {self.tau}")
        if self.mode not in (BINARY_HIDE, TRANSPARENCY):
            raise InvalidRankingConfig(f"unknown view mode {self.mode!r}")


@dataclass(frozen=True)
class RankedResult:
    thing: str
    relevance: float
    inhibition: float
    score: float


class TfIdfIndex:
    """Immutable tf-idf index over all things that carry text."""

    def __init__(self, graph):
        self.doc_tfs = {}
        df = Counter()
        for tid, thing in graph.things.items():
            if thing.text is None:
                continue
            tf = Counter(thing.text)
            self.doc_tfs[tid] = tf
            for term in tf:
                df[term] += 1
        self.df = df
        self.n_docs = len(self.doc_tfs)

    def _weight(self, term, count):
        idf = math.log((self.n_docs + 1) / (self.df.get(term, 0) + 1)) + 1.0
        return count * idf

    def _vector(self, tf: Counter) -> dict:
        return {term: self._weight(term, count) for term, count in tf.items()}

    def relevance(self, query: Query, thing_id: str) -> float:
        """Cosine similarity of tf-idf vectors; 0 for text-less things."""
        tf = self.doc_tfs.get(thing_id)
        if tf is None:
            return 0.0
        dv = self._vector(tf)
        qv = self._vector(Counter(query.terms))
        dot = sum(w * dv[term] for term, w in qv.items() if term in dv)
        if dot == 0.0:
            return 0.0
        dnorm = math.sqrt(sum(w * w for w in dv.values()))
        qnorm = math.sqrt(sum(w * w for w in qv.values()))
        return dot / (dnorm * qnorm)


def hiding(engine, thing_id, t, view: ViewConfig) -> float:
    """1 = fully hidden/transparent, 0 = fully visible."""
    if view.show_forgotten:
        engine.mb_raw(thing_id, t)  # still validate the id
        return 0.0
    mb = engine.mb_effective(thing_id, t)
    if view.mode == BINARY_HIDE:
        return 1.0 if mb < view.tau else 0.0
    return 1.0 - mb


def search(engine, index: TfIdfIndex, query: Query, t,
           ranking: RankingConfig = None, view: ViewConfig = None) -> list:
    """Ranked results over all things with positive relevance.

    Under binary hiding (and without show_forgotten) items below the
    threshold are excluded outright; the hiding filter runs before any
    truncation a caller might apply.
    """
    ranking = ranking or RankingConfig()
    view = view or ViewConfig()
    results = []
    for tid in engine.graph.things:
        rel = index.relevance(query, tid)
        if rel <= 0.0:
            continue
        mb = engine.mb_effective(tid, t)
        if view.mode == BINARY_HIDE and not view.show_forgotten and mb < view.tau:
            continue
        inhibition = 1.0 - mb
        score = ranking.alpha * rel - ranking.beta * inhibition
        results.append((score, mb, tid, rel, inhibition))

    if ranking.tie_break == "by_effective_mb":
        results.sort(key=lambda r: (-r[0], -r[1], r[2]))
    else:
        results.sort(key=lambda r: (-r[0], r[2]))
    return [RankedResult(thing=tid, relevance=rel, inhibition=inh, score=score)
            for score, mb, tid, rel, inh in results]


def browse_view(engine, context_id, t, view: ViewConfig) -> list:
    """Per-thing visibility when browsing a context (or the whole graph).

    Returns (thing_id, hiding value) pairs sorted by id. Under binary hiding
    items with hiding = 1 are dropped unless show_forgotten is set, which
    lists the full set fully visible again.
    """
    if context_id is None:
        members = engine.graph.things.keys()
    else:
        members = engine.graph.context(context_id).members
    rows = []
    for tid in sorted(members):
        h = hiding(engine, tid, t, view)
        if view.mode == BINARY_HIDE and not view.show_forgotten and h >= 1.0:
            continue
        rows.append((tid, h))
    return rows
