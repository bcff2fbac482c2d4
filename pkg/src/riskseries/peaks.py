"""Extreme-event extraction: block maxima and peaks over threshold.

Peaks over threshold (POT) comes in two shapes. The compact form keeps
only the passing observations with their original indices, so the gap
structure stays visible. The zero-fill form keeps every time slot and
writes 0 where the value failed the threshold, which matters when the
empty slots themselves carry meaning (nothing paid, nothing measured).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DataError, UsageError
from .series import Observation, TimeSeries, reindex

STRICTLY_ABOVE = "strictly-above"
AT_OR_ABOVE = "at-or-above"
_COMPARISONS = (STRICTLY_ABOVE, AT_OR_ABOVE)


@dataclass(frozen=True)
class ThresholdSpec:
    threshold: float
    comparison: str = STRICTLY_ABOVE

    def __post_init__(self):
        if not math.isfinite(float(self.threshold)):
            raise UsageError(f"threshold must be finite, got {self.threshold!r}")
        object.__setattr__(self, "threshold", float(self.threshold))
        if self.comparison not in _COMPARISONS:
            raise UsageError(
                f"comparison must be one of {_COMPARISONS}, got {self.comparison!r}"
            )

    def passes(self, value: float) -> bool:
        if self.comparison == STRICTLY_ABOVE:
            return value > self.threshold
        return value >= self.threshold


@dataclass(frozen=True)
class Provenance:
    """How an event series was extracted from its parent series."""

    method: str  # "block-maxima" | "pot"
    block_size: int | None = None
    threshold: float | None = None
    comparison: str | None = None
    zero_filled: bool = False


@dataclass(frozen=True)
class EventSeries(TimeSeries):
    provenance: Provenance = Provenance(method="pot")


def block_maxima(series: TimeSeries, block_size: int) -> EventSeries:
    """One maximum per block of ``block_size`` consecutive positions.

    Blocking is positional (the series is renumbered 1..n first), the
    last block may be short, and ties keep the earliest position.
    """
    if isinstance(block_size, bool) or not isinstance(block_size, int) or block_size < 1:
        raise UsageError(f"block_size must be a positive integer, got {block_size!r}")
    if len(series) == 0:
        raise DataError("cannot extract block maxima from an empty series")
    positional = reindex(series)
    picked = []
    for start in range(0, len(positional), block_size):
        block = positional.observations[start:start + block_size]
        best = block[0]
        for obs in block[1:]:
            if obs.value > best.value:
                best = obs
        picked.append(best)
    return EventSeries(tuple(picked), Provenance(method="block-maxima", block_size=block_size))


def pot_compact(series: TimeSeries, spec: ThresholdSpec) -> EventSeries:
    """Keep only observations passing the threshold, original indices intact.

    An empty result is legal (threshold above every value).
    """
    kept = tuple(obs for obs in series.observations if spec.passes(obs.value))
    return EventSeries(
        kept,
        Provenance(method="pot", threshold=spec.threshold, comparison=spec.comparison),
    )


def pot_zerofill(series: TimeSeries, spec: ThresholdSpec) -> EventSeries:
    """Same length as the input; failing slots are set to exactly 0.

    Requires contiguous indices: zero-filling needs every time slot to be
    present, so a gapped series must be reindexed (or filled) first.
    """
    indices = series.indices
    first = indices[0] if indices else 1
    for position, index in enumerate(indices):
        if index != first + position:
            raise UsageError(
                "zero-fill needs contiguous indices; "
                f"found index {index} where {first + position} was expected"
            )
    filled = tuple(
        obs if spec.passes(obs.value)
        else Observation(obs.index, 0.0, source_index=obs.source_index)
        for obs in series.observations
    )
    return EventSeries(
        filled,
        Provenance(
            method="pot",
            threshold=spec.threshold,
            comparison=spec.comparison,
            zero_filled=True,
        ),
    )
