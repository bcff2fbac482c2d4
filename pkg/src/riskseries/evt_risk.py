"""Extreme-value and risk-curve mathematics.

gev_pdf evaluates the generalized extreme value density in its standard
parameterization (Gumbel at shape 0, Frechet for positive shape, Weibull
for negative), returning 0 outside the support.

risk_curve computes the annual frequency R(x) with which loss exceeds x:

    R(x) = integral over s of (1 - P[X <= x | S = s]) * (-dG/ds) ds

where G(s) is the mean annual frequency of excitation exceeding
intensity s and the conditional loss given s is lognormal with median
theta(s) and log-sd beta(s). Between consecutive grid points the hazard
is interpolated exponentially (log-linear) and the conditional
non-exceedance probability linearly; each segment then integrates in
closed form, with the log-slope terms replaced by their series limits
when a segment is nearly flat.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .dist import normal_cdf
from .errors import DataError, UsageError

# Below this, exp(m*ds) terms lose all precision against 1; use series limits.
_FLAT_SEGMENT_EPS = 1e-8


@dataclass(frozen=True)
class GevParams:
    mu: float
    sigma: float
    xi: float

    def __post_init__(self):
        if not self.sigma > 0.0:
            raise UsageError(f"scale must be positive, got {self.sigma!r}")


def gev_pdf(x: float, params: GevParams) -> float:
    """Generalized extreme value density at x; 0 outside the support."""
    z = (x - params.mu) / params.sigma
    xi = params.xi
    if xi == 0.0:
        # Gumbel: exp(-z) * exp(-exp(-z)) / sigma, guarded against overflow.
        if z < -700.0:
            return 0.0
        return math.exp(-z - math.exp(-z)) / params.sigma
    u = 1.0 + xi * z
    if u <= 0.0:
        return 0.0
    log_u = math.log1p(xi * z)
    exponent = -log_u / xi
    if exponent > 700.0:
        return 0.0  # t -> inf, exp(-t) dominates
    t = math.exp(exponent)  # (1 + xi z)^(-1/xi)
    return t / u * math.exp(-t) / params.sigma


def lognormal_params(mean: float, cov: float) -> tuple[float, float]:
    """(median theta, log-sd beta) of a lognormal with given mean and CoV."""
    if not mean > 0.0:
        raise UsageError(f"mean loss must be positive, got {mean!r}")
    if cov < 0.0:
        raise UsageError(f"coefficient of variation must be >= 0, got {cov!r}")
    beta = math.sqrt(math.log1p(cov * cov))
    theta = mean / math.sqrt(1.0 + cov * cov)
    return theta, beta


@dataclass(frozen=True)
class VulnerabilityPoint:
    """Conditional loss distribution at excitation intensity s."""

    s: float
    mean_loss: float
    cov: float
    theta: float = field(init=False)
    beta: float = field(init=False)

    def __post_init__(self):
        theta, beta = lognormal_params(self.mean_loss, self.cov)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "beta", beta)


def conditional_nonexceedance(x: float, point: VulnerabilityPoint) -> float:
    """P[X <= x | S = s] for the lognormal vulnerability at that point."""
    if x < 0.0:
        raise UsageError(f"loss must be non-negative, got {x!r}")
    if x == 0.0:
        return 0.0
    if point.beta == 0.0:
        return 1.0 if x >= point.theta else 0.0  # deterministic loss
    return normal_cdf(math.log(x / point.theta) / point.beta)


@dataclass(frozen=True)
class HazardCurve:
    """Intensity grid with mean annual exceedance frequencies."""

    points: tuple[tuple[float, float], ...]  # (s, G) pairs

    def __post_init__(self):
        points = tuple((float(s), float(g)) for s, g in self.points)
        object.__setattr__(self, "points", points)
        previous_s = -math.inf
        previous_g = math.inf
        for s, g in points:
            if not (math.isfinite(s) and math.isfinite(g)):
                raise DataError("hazard points must be finite")
            if s <= previous_s:
                raise DataError(f"hazard intensities must be strictly increasing at s={s}")
            if g <= 0.0:
                raise DataError(f"hazard frequencies must be positive, got {g} at s={s}")
            if g > previous_g:
                raise DataError(f"hazard frequencies must be non-increasing at s={s}")
            previous_s, previous_g = s, g

    @property
    def s(self) -> tuple[float, ...]:
        return tuple(p[0] for p in self.points)

    @property
    def g(self) -> tuple[float, ...]:
        return tuple(p[1] for p in self.points)

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class RiskSegment:
    """Closed-form quadrature weights for one hazard segment.

    With t = m * delta_s = ln(G_i / G_{i-1}), exponential hazard and a
    linear non-exceedance probability in s give the segment contribution

        (1 - p_{i-1}(x)) * a - (p_i(x) - p_{i-1}(x)) * b

    where a = G_{i-1} - G_i and b = G_{i-1} * ((e^t - 1)/t - e^t).
    """

    delta_s: float
    m: float
    a: float
    b: float
    lower: VulnerabilityPoint
    upper: VulnerabilityPoint

    def contribution(self, x: float) -> float:
        p_lower = conditional_nonexceedance(x, self.lower)
        p_upper = conditional_nonexceedance(x, self.upper)
        return (1.0 - p_lower) * self.a - (p_upper - p_lower) * self.b


def build_segments(
    hazard: HazardCurve, vulnerability: Sequence[VulnerabilityPoint]
) -> tuple[RiskSegment, ...]:
    if len(hazard) < 2:
        raise UsageError(f"need at least 2 hazard points, got {len(hazard)}")
    if len(vulnerability) != len(hazard):
        raise UsageError(
            f"vulnerability has {len(vulnerability)} points, hazard has {len(hazard)}"
        )
    for point, s in zip(vulnerability, hazard.s):
        if point.s != s:
            raise UsageError(
                f"vulnerability grid is misaligned: s={point.s} vs hazard s={s}"
            )
    segments = []
    for i in range(1, len(hazard)):
        s_prev, g_prev = hazard.points[i - 1]
        s_cur, g_cur = hazard.points[i]
        delta_s = s_cur - s_prev
        t = math.log(g_cur / g_prev)  # = m * delta_s
        m = t / delta_s
        a = g_prev - g_cur
        if abs(t) < _FLAT_SEGMENT_EPS:
            # (e^t - 1)/t - e^t = -t/2 - t^2/3 - O(t^3)
            b = g_prev * (-t / 2.0 - t * t / 3.0)
        else:
            b = g_prev * (math.expm1(t) / t - math.exp(t))
        segments.append(
            RiskSegment(
                delta_s=delta_s,
                m=m,
                a=a,
                b=b,
                lower=vulnerability[i - 1],
                upper=vulnerability[i],
            )
        )
    return tuple(segments)


@dataclass(frozen=True)
class RiskCurve:
    losses: tuple[float, ...]
    frequencies: tuple[float, ...]  # annual frequency of exceeding each loss


def risk_curve(
    losses: Sequence[float],
    hazard: HazardCurve,
    vulnerability: Sequence[VulnerabilityPoint],
) -> RiskCurve:
    """Annual loss-exceedance frequencies over a loss grid.

    Contributions outside [s_1, s_n] are truncated, so a loss of 0 maps
    to the total in-range frequency G_1 - G_n.
    """
    segments = build_segments(hazard, vulnerability)
    loss_grid = tuple(float(x) for x in losses)
    frequencies = []
    for x in loss_grid:
        total = math.fsum(segment.contribution(x) for segment in segments)
        frequencies.append(max(total, 0.0))
    return RiskCurve(losses=loss_grid, frequencies=tuple(frequencies))
