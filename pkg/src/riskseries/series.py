"""Core time-series data model, descriptive statistics and reindexing.

A series is an ordered run of (index, value) observations. Indices are
integer event times and may jump (an event record keeps the time slot it
occurred in); values are finite magnitudes such as precipitation in mm.
Everything here is immutable and safe to share between threads.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DataError


@dataclass(frozen=True)
class Observation:
    """One event: integer time index (>= 1) and its magnitude."""

    index: int
    value: float
    source_index: int | None = None

    def __post_init__(self):
        if isinstance(self.index, bool) or not isinstance(self.index, int):
            raise DataError(f"observation index must be an integer, got {self.index!r}")
        if self.index < 1:
            raise DataError(f"observation index must be >= 1, got {self.index}")
        value = float(self.value)
        if not math.isfinite(value):
            raise DataError(f"observation value must be finite, got {self.value!r}")
        object.__setattr__(self, "value", value)


@dataclass(frozen=True)
class TimeSeries:
    """Ordered observations with strictly increasing indices (gaps allowed)."""

    observations: tuple[Observation, ...]

    def __post_init__(self):
        observations = tuple(self.observations)
        object.__setattr__(self, "observations", observations)
        previous = 0
        for obs in observations:
            if obs.index <= previous:
                raise DataError(
                    f"indices must be strictly increasing without duplicates; "
                    f"index {obs.index} follows {previous}"
                )
            previous = obs.index

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, float]]) -> "TimeSeries":
        return cls(tuple(Observation(index, value) for index, value in pairs))

    @classmethod
    def from_values(cls, values: Sequence[float]) -> "TimeSeries":
        """Build a series indexed 1..n from bare values."""
        return cls(tuple(Observation(i + 1, float(v)) for i, v in enumerate(values)))

    def __len__(self) -> int:
        return len(self.observations)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(obs.index for obs in self.observations)

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(obs.value for obs in self.observations)


@dataclass(frozen=True)
class SummaryStats:
    n: int
    mean: float
    variance: float
    std_dev: float
    min: float
    max: float


def summarize(series: TimeSeries) -> SummaryStats:
    """Descriptive statistics over the values (indices ignored).

    Variance uses the sample (n-1) divisor; a single observation gets
    variance 0.
    """
    if len(series) == 0:
        raise DataError("cannot summarize an empty series")
    values = series.values
    n = len(values)
    mean = math.fsum(values) / n
    if n > 1:
        variance = math.fsum((v - mean) ** 2 for v in values) / (n - 1)
    else:
        variance = 0.0
    return SummaryStats(
        n=n,
        mean=mean,
        variance=variance,
        std_dev=math.sqrt(variance),
        min=min(values),
        max=max(values),
    )


def reindex(series: TimeSeries) -> TimeSeries:
    """Renumber observations 1..n in order, keeping values.

    The original index survives as ``source_index`` so reports can still
    show the raw event time.
    """
    if len(series) == 0:
        raise DataError("cannot reindex an empty series")
    renumbered = tuple(
        Observation(
            index=position,
            value=obs.value,
            source_index=obs.source_index if obs.source_index is not None else obs.index,
        )
        for position, obs in enumerate(series.observations, start=1)
    )
    return TimeSeries(renumbered)
