"""Risk/return metrics for equity curves and daily return series.

Two conventions are deliberate and load-bearing for comparability:
cumulative return is the plain arithmetic sum of per-period returns (not
geometrically compounded), and the Sharpe ratio assumes a zero risk-free
rate by default.  Standard deviations are the sample estimator (ddof=1)
throughout, matching the t-tests in :mod:`tautrade.stats`.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ArgumentError, DegenerateSeriesError

TRADING_DAYS_PER_YEAR = 252


def sharpe(returns, risk_free: float = 0.0) -> float:
    """Per-period Sharpe ratio: mean(R - rf) / sample std(R).

    Raises DegenerateSeriesError on zero variance instead of returning
    +/-inf; callers that want a sentinel must choose it explicitly.
    """
    r = np.asarray(returns, dtype=float)
    if r.size < 2:
        raise ArgumentError(f"sharpe needs >= 2 returns, got {r.size}")
    if not np.isfinite(r).all():
        raise ArgumentError("sharpe input contains non-finite values")
    std = float(r.std(ddof=1))
    if std == 0.0:
        raise DegenerateSeriesError("zero return variance: Sharpe ratio undefined")
    return float((r.mean() - risk_free) / std)


def annualize_sharpe(daily_sr: float) -> float:
    return daily_sr * math.sqrt(TRADING_DAYS_PER_YEAR)


def annualized_sharpe(returns, risk_free: float = 0.0) -> float:
    return annualize_sharpe(sharpe(returns, risk_free))


def max_drawdown(equity) -> float:
    """Largest fractional fall from a running peak, in [0, 1].

    Zero iff the curve is nondecreasing.  Equity must be positive.
    """
    eq = np.asarray(equity, dtype=float)
    if eq.size < 1:
        raise ArgumentError("max_drawdown needs at least one equity point")
    if (eq <= 0).any():
        raise ArgumentError("max_drawdown requires positive equity values")
    peaks = np.maximum.accumulate(eq)
    return float(((peaks - eq) / peaks).max())


def cumulative_return(returns) -> float:
    """Arithmetic sum of per-period returns (benchmark-comparable convention)."""
    r = np.asarray(returns, dtype=float)
    return float(r.sum()) if r.size else 0.0


def equity_to_returns(equity) -> np.ndarray:
    """Per-step simple returns of an equity curve."""
    eq = np.asarray(equity, dtype=float)
    if eq.size < 2:
        raise ArgumentError("need >= 2 equity points to form returns")
    return eq[1:] / eq[:-1] - 1.0
