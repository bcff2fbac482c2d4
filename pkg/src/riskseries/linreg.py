"""Ordinary least-squares engine with a full spreadsheet-style report.

fit_ols solves by QR factorization rather than raw normal equations, so
near-collinear lagged designs stay well behaved, and reports the
coefficient table (estimate, standard error, t, two-sided p, 95% CI)
plus the ANOVA block (sums of squares, F, significance F) and the R
statistics exactly as spreadsheet regression output lays them out.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dist import f_upper_tail, student_t_critical, student_t_two_sided_p
from .errors import DataError, NumericalError, UsageError

RANK_TOLERANCE = 1e-10
CI_ALPHA = 0.05


@dataclass(frozen=True)
class DesignMatrix:
    """Regression design with a leading all-ones intercept column."""

    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=float)
        if entries.ndim != 2:
            raise UsageError("design matrix must be two-dimensional")
        object.__setattr__(self, "entries", entries)
        n, k = entries.shape
        if n <= k:
            raise UsageError(f"need more rows than columns, got n={n}, k={k}")
        if not np.all(np.isfinite(entries)):
            raise DataError("design matrix contains non-finite entries")
        if not np.all(entries[:, 0] == 1.0):
            raise UsageError("first design column must be all ones (intercept)")

    @classmethod
    def from_regressors(cls, n: int, regressors: Sequence[Sequence[float]]) -> "DesignMatrix":
        columns = [np.ones(n)]
        columns.extend(np.asarray(r, dtype=float) for r in regressors)
        return cls(np.column_stack(columns))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def k(self) -> int:
        return self.entries.shape[1]


@dataclass(frozen=True)
class CoefficientStat:
    estimate: float
    std_error: float
    t_stat: float
    p_value: float
    ci_lower_95: float
    ci_upper_95: float


@dataclass(frozen=True)
class AnovaBlock:
    regression_ss: float
    residual_ss: float
    total_ss: float
    df_regression: int
    df_residual: int
    regression_ms: float
    residual_ms: float
    f_stat: float
    significance_f: float


@dataclass(frozen=True)
class RegressionReport:
    coefficients: tuple[CoefficientStat, ...]  # intercept first, then caller order
    anova: AnovaBlock
    r_multiple: float
    r_squared: float
    r_squared_adj: float
    std_error_regression: float
    n: int


def _column_label(j: int) -> str:
    return "intercept" if j == 0 else f"x{j}"


def _raise_rank_deficient(x: np.ndarray, singular_values: np.ndarray):
    # Name the last caller column that participates in the null direction;
    # the structural intercept is only blamed when nothing else is involved.
    _, _, vt = np.linalg.svd(x)
    null_direction = np.abs(vt[-1])
    involved = np.flatnonzero(null_direction > 0.1 * null_direction.max())
    offending = int(involved[-1])
    raise NumericalError(
        f"design matrix is rank-deficient near column '{_column_label(offending)}' "
        f"(smallest singular value {singular_values[-1]:.3e} vs largest "
        f"{singular_values[0]:.3e})"
    )


def fit_ols(y: Sequence[float], regressors: Sequence[Sequence[float]]) -> RegressionReport:
    """Least-squares fit of y on an intercept plus the given regressors."""
    if len(regressors) == 0:
        raise UsageError("at least one regressor is required")
    y_vec = np.asarray(y, dtype=float)
    if y_vec.ndim != 1:
        raise UsageError("y must be a one-dimensional vector")
    n = y_vec.shape[0]
    for j, column in enumerate(regressors, start=1):
        if len(column) != n:
            raise UsageError(
                f"regressor x{j} has length {len(column)}, expected {n} to match y"
            )
    if not np.all(np.isfinite(y_vec)):
        raise DataError("y contains non-finite entries")
    design = DesignMatrix.from_regressors(n, regressors)
    x = design.entries
    k = design.k

    singular_values = np.linalg.svd(x, compute_uv=False)
    if singular_values[-1] <= RANK_TOLERANCE * singular_values[0]:
        _raise_rank_deficient(x, singular_values)

    q, r = np.linalg.qr(x)
    coef = np.linalg.solve(r, q.T @ y_vec)
    fitted = x @ coef
    residuals = y_vec - fitted

    y_mean = math.fsum(y_vec) / n
    residual_ss = math.fsum(e * e for e in residuals)
    total_ss = math.fsum((v - y_mean) ** 2 for v in y_vec)
    regression_ss = math.fsum((f - y_mean) ** 2 for f in fitted)

    df_residual = n - k
    df_regression = k - 1
    residual_ms = residual_ss / df_residual
    regression_ms = regression_ss / df_regression

    # (X'X)^-1 diagonal from the R factor: (R^-1)(R^-1)'.
    r_inv = np.linalg.solve(r, np.eye(k))
    xtx_inv_diag = np.sum(r_inv * r_inv, axis=1)
    std_errors = np.sqrt(residual_ms * xtx_inv_diag)

    t_critical = student_t_critical(CI_ALPHA, df_residual)
    stats = []
    for estimate, std_error in zip(coef, std_errors):
        estimate = float(estimate)
        std_error = float(std_error)
        if std_error > 0.0:
            t_stat = estimate / std_error
            p_value = student_t_two_sided_p(t_stat, df_residual)
        else:
            # Exact fit: the coefficient is determined with no sampling noise.
            t_stat = math.copysign(math.inf, estimate) if estimate != 0.0 else 0.0
            p_value = 0.0 if estimate != 0.0 else 1.0
        half_width = t_critical * std_error
        stats.append(
            CoefficientStat(
                estimate=estimate,
                std_error=std_error,
                t_stat=t_stat,
                p_value=p_value,
                ci_lower_95=estimate - half_width,
                ci_upper_95=estimate + half_width,
            )
        )

    if total_ss > 0.0:
        r_squared = 1.0 - residual_ss / total_ss
        if residual_ms > 0.0:
            f_stat = regression_ms / residual_ms
        else:
            f_stat = math.inf
        significance_f = f_upper_tail(f_stat, df_regression, df_residual)
    else:
        # Constant response: nothing to explain.
        r_squared = 0.0
        f_stat = 0.0
        significance_f = 1.0

    anova = AnovaBlock(
        regression_ss=regression_ss,
        residual_ss=residual_ss,
        total_ss=total_ss,
        df_regression=df_regression,
        df_residual=df_residual,
        regression_ms=regression_ms,
        residual_ms=residual_ms,
        f_stat=f_stat,
        significance_f=significance_f,
    )
    return RegressionReport(
        coefficients=tuple(stats),
        anova=anova,
        r_multiple=math.sqrt(max(r_squared, 0.0)),
        r_squared=r_squared,
        r_squared_adj=1.0 - (1.0 - r_squared) * (n - 1) / (n - k),
        std_error_regression=math.sqrt(residual_ms),
        n=n,
    )
