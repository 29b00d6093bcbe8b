"""Time-decay kernels: polynomial, Ebbinghaus, and Weibull.

All three map an elapsed number of ticks to a retention factor in (0, 1],
with value exactly 1 at delta = 0. Time is a logical integer tick; wall-clock
mapping is the trace loader's job.
"""

import math
from dataclasses import dataclass
from enum import Enum

from .errors import InvalidParams


class DecayKind(str, Enum):
    POLYNOMIAL = "polynomial"
    EBBINGHAUS = "ebbinghaus"
    WEIBULL = "weibull"


@dataclass(frozen=True)
class DecayParams:
    kind: DecayKind
    alpha: float = 1.0  # polynomial: decay rate; weibull: remembering volume
    s: float = 1.0      # ebbinghaus: relative memory strength; weibull: forgetting steepness

    def __post_init__(self):
        object.__setattr__(self, "kind", DecayKind(self.kind))
        if self.alpha <= 0:
            raise InvalidParams(f"alpha must be > 0, got {self.alpha}")
        if self.s <= 0:
            raise InvalidParams(f"s must be > 0, got {self.s}")


def decay(params: DecayParams, delta: float) -> float:
    """Retention after `delta` ticks since the last anchor.

    Values that underflow to 0.0 for very large delta are returned as 0.0;
    downstream treats that as fully forgotten.
    """
    if delta < 0:
        raise InvalidParams(f"delta must be >= 0, got {delta}")
    if delta == 0:
        return 1.0
    kind = params.kind
    try:
        if kind is DecayKind.POLYNOMIAL:
            return 1.0 / (delta ** params.alpha + 1.0)
        if kind is DecayKind.EBBINGHAUS:
            return math.exp(-delta / params.s)
        # Weibull as printed in the source table, including the /s in the
        # exponent even though that parameterization is unconventional.
        return math.exp(-params.alpha * delta ** params.s / params.s)
    except OverflowError:
        return 0.0


def decay_series(params: DecayParams, deltas) -> list:
    """Element-wise decay() over a sequence of deltas."""
    return [decay(params, d) for d in deltas]
