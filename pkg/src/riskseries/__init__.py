"""Extreme-event time-series analysis and loss-exceedance risk curves.

The library side covers the full pipeline: peak extraction (block maxima
and peaks over threshold), linear trend fitting and removal, the
Mann-Kendall test, autoregression by least squares with top-down order
selection, residual diagnostics, and the extreme-value / risk-curve
mathematics. ``riskseries.cli`` adds the command-line front end.
"""

from .autoreg import (
    ARModel,
    LaggedDesign,
    OrderSelectionStep,
    OrderSelectionTrace,
    build_lagged_design,
    fit_ar,
    lag_correlation,
    select_order,
)
from .dist import (
    f_upper_tail,
    normal_cdf,
    normal_quantile,
    regularized_incomplete_beta,
    student_t_critical,
    student_t_two_sided_p,
)
from .errors import DataError, NumericalError, RiskSeriesError, UsageError
from .evt_risk import (
    GevParams,
    HazardCurve,
    RiskCurve,
    RiskSegment,
    VulnerabilityPoint,
    build_segments,
    conditional_nonexceedance,
    gev_pdf,
    lognormal_params,
    risk_curve,
)
from .linreg import AnovaBlock, CoefficientStat, DesignMatrix, RegressionReport, fit_ols
from .peaks import (
    EventSeries,
    Provenance,
    ThresholdSpec,
    block_maxima,
    pot_compact,
    pot_zerofill,
)
from .residuals import (
    ResidualReport,
    ResidualRow,
    percentile_column,
    plot_data,
    residual_analysis,
)
from .series import Observation, SummaryStats, TimeSeries, reindex, summarize
from .trend import MKResult, TrendLine, detrend, fit_trend, mann_kendall

__version__ = "0.1.0"

__all__ = [
    "ARModel",
    "AnovaBlock",
    "CoefficientStat",
    "DataError",
    "DesignMatrix",
    "EventSeries",
    "GevParams",
    "HazardCurve",
    "LaggedDesign",
    "MKResult",
    "NumericalError",
    "Observation",
    "OrderSelectionStep",
    "OrderSelectionTrace",
    "Provenance",
    "RegressionReport",
    "ResidualReport",
    "ResidualRow",
    "RiskCurve",
    "RiskSegment",
    "RiskSeriesError",
    "SummaryStats",
    "ThresholdSpec",
    "TimeSeries",
    "TrendLine",
    "UsageError",
    "VulnerabilityPoint",
    "block_maxima",
    "build_lagged_design",
    "build_segments",
    "conditional_nonexceedance",
    "detrend",
    "f_upper_tail",
    "fit_ar",
    "fit_ols",
    "fit_trend",
    "gev_pdf",
    "lag_correlation",
    "lognormal_params",
    "mann_kendall",
    "normal_cdf",
    "normal_quantile",
    "percentile_column",
    "plot_data",
    "pot_compact",
    "pot_zerofill",
    "regularized_incomplete_beta",
    "reindex",
    "residual_analysis",
    "risk_curve",
    "select_order",
    "student_t_critical",
    "student_t_two_sided_p",
    "summarize",
]
