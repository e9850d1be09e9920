"""Rolling technical analytics over daily bars.

Column names are fixed strings consumed by the strategist prompt templates
("20MA", "RSI", "MACD_Strength", ...), so renaming them is a breaking
change.  All outputs are causal: the value at t uses only bars at
indices <= t, with NaN over each indicator's warm-up prefix.

Conventions (documented rather than configurable):
  * RSI/ATR use Wilder smoothing seeded with the simple mean of the first
    period; RSI degenerate cases: no gains and no losses -> 50, gains with
    zero losses -> 100, losses with zero gains -> 0.
  * MACD EMAs are seeded with the SMA of their first period.
  * Slopes are least-squares fits against the step index, not endpoint
    differences.
  * Historical volatility is the sample std (ddof=1) of log returns,
    annualized by sqrt(252).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import pandas as pd

from .errors import ArgumentError, DataError, WindowError

TRADING_DAYS_PER_YEAR = 252
WEEK_BARS = 5  # one trading week


@dataclass(frozen=True)
class IndicatorConfig:
    sma_windows: tuple[int, ...] = (20, 50, 100, 200)
    rsi_period: int = 14
    macd_fast: int = 12
    macd_slow: int = 26
    macd_signal: int = 9
    atr_period: int = 14
    rolling_window: int = 20
    slope_lookback: int = 5

    def __post_init__(self):
        periods = (
            *self.sma_windows,
            self.rsi_period,
            self.macd_fast,
            self.macd_slow,
            self.macd_signal,
            self.atr_period,
            self.rolling_window,
            self.slope_lookback,
        )
        if any(p < 2 for p in periods):
            raise ArgumentError("all indicator periods must be >= 2")


def sma(values, window: int) -> np.ndarray:
    series = pd.Series(np.asarray(values, dtype=float))
    return series.rolling(window).mean().to_numpy()


def _ema_sma_seeded(values: np.ndarray, period: int) -> np.ndarray:
    """EMA whose first defined value is the SMA of the first `period` points."""
    out = np.full(len(values), np.nan)
    if len(values) < period:
        return out
    alpha = 2.0 / (period + 1.0)
    out[period - 1] = values[:period].mean()
    for t in range(period, len(values)):
        out[t] = alpha * values[t] + (1.0 - alpha) * out[t - 1]
    return out


def rsi(closes, period: int = 14) -> np.ndarray:
    closes = np.asarray(closes, dtype=float)
    out = np.full(len(closes), np.nan)
    if len(closes) <= period:
        return out
    delta = np.diff(closes)
    gains = np.clip(delta, 0.0, None)
    losses = np.clip(-delta, 0.0, None)
    avg_gain = gains[:period].mean()
    avg_loss = losses[:period].mean()

    def _score(g: float, l: float) -> float:
        if g == 0.0 and l == 0.0:
            return 50.0
        if l == 0.0:
            return 100.0
        return 100.0 - 100.0 / (1.0 + g / l)

    out[period] = _score(avg_gain, avg_loss)
    for t in range(period + 1, len(closes)):
        avg_gain = (avg_gain * (period - 1) + gains[t - 1]) / period
        avg_loss = (avg_loss * (period - 1) + losses[t - 1]) / period
        out[t] = _score(avg_gain, avg_loss)
    return out


def macd(closes, fast: int = 12, slow: int = 26, signal: int = 9):
    """Returns (value, signal_line, strength) with strength = value - signal."""
    closes = np.asarray(closes, dtype=float)
    ema_fast = _ema_sma_seeded(closes, fast)
    ema_slow = _ema_sma_seeded(closes, slow)
    value = ema_fast - ema_slow
    defined = ~np.isnan(value)
    signal_line = np.full(len(closes), np.nan)
    if defined.any():
        start = int(np.argmax(defined))
        signal_line[start:] = _ema_sma_seeded(value[start:], signal)
    strength = value - signal_line
    return value, signal_line, strength


def atr(bars: pd.DataFrame, period: int = 14) -> np.ndarray:
    high = bars["high"].to_numpy(dtype=float)
    low = bars["low"].to_numpy(dtype=float)
    close = bars["close"].to_numpy(dtype=float)
    tr = np.empty(len(bars))
    tr[0] = high[0] - low[0]
    prev_close = close[:-1]
    tr[1:] = np.maximum.reduce(
        [high[1:] - low[1:], np.abs(high[1:] - prev_close), np.abs(low[1:] - prev_close)]
    )
    out = np.full(len(bars), np.nan)
    if len(bars) < period:
        return out
    out[period - 1] = tr[:period].mean()
    for t in range(period, len(bars)):
        out[t] = (out[t - 1] * (period - 1) + tr[t]) / period
    return out


def rolling_slope(series, lookback: int) -> np.ndarray:
    """Least-squares slope of the last `lookback` values against 0..lookback-1."""
    if lookback < 2:
        raise ArgumentError("slope lookback must be >= 2")
    values = np.asarray(series, dtype=float)
    out = np.full(len(values), np.nan)
    if len(values) < lookback:
        return out
    x = np.arange(lookback, dtype=float)
    xc = x - x.mean()
    denom = float(np.dot(xc, xc))
    windows = np.lib.stride_tricks.sliding_window_view(values, lookback)
    out[lookback - 1 :] = (windows - windows.mean(axis=1, keepdims=True)) @ xc / denom
    return out


def rolling_zscore(series, window: int) -> np.ndarray:
    """(x[t] - rolling mean) / rolling sample std; zero-variance windows give 0."""
    if window < 2:
        raise ArgumentError("z-score window must be >= 2")
    values = pd.Series(np.asarray(series, dtype=float))
    mean = values.rolling(window).mean()
    std = values.rolling(window).std(ddof=1)
    z = (values - mean) / std
    z[(std == 0.0) & mean.notna()] = 0.0
    return z.to_numpy()


def weekly_past_returns(closes, t: int) -> np.ndarray:
    """Percentage change over the four trailing 5-bar weeks ending at t."""
    closes = np.asarray(closes, dtype=float)
    if t < 4 * WEEK_BARS:
        raise WindowError(f"weekly_past_returns needs t >= {4 * WEEK_BARS}, got {t}")
    if t >= len(closes):
        raise WindowError(f"index {t} out of range for series of length {len(closes)}")
    out = np.empty(4)
    for k in range(1, 5):
        newer = closes[t - WEEK_BARS * (k - 1)]
        older = closes[t - WEEK_BARS * k]
        out[k - 1] = newer / older - 1.0
    return out


def historical_volatility(closes, window: int = 20) -> np.ndarray:
    """Annualized sample std of log returns over a trailing window."""
    if window < 2:
        raise ArgumentError("volatility window must be >= 2")
    closes = np.asarray(closes, dtype=float)
    if (closes <= 0).any():
        raise DataError("non-positive close in volatility input")
    out = np.full(len(closes), np.nan)
    if len(closes) <= window:
        return out
    log_ret = np.diff(np.log(closes))
    std = pd.Series(log_ret).rolling(window).std(ddof=1).to_numpy()
    out[window:] = std[window - 1 :] * np.sqrt(TRADING_DAYS_PER_YEAR)
    return out


def vwap_proxy(bars: pd.DataFrame, window: int = 20) -> np.ndarray:
    # Daily proxy: rolling volume-weighted typical price (no intraday data).
    tp = (bars["high"] + bars["low"] + bars["close"]).to_numpy(dtype=float) / 3.0
    vol = bars["volume"].to_numpy(dtype=float)
    num = pd.Series(tp * vol).rolling(window).sum()
    den = pd.Series(vol).rolling(window).sum()
    out = (num / den.where(den != 0.0)).to_numpy()
    return out


def technical_indicators(bars: pd.DataFrame, cfg: IndicatorConfig = IndicatorConfig()) -> pd.DataFrame:
    """Compute the full analytics block for one instrument.

    Raises WindowError naming the indicator with the longest requirement
    when the bar history is too short to define it at least once.
    """
    n = len(bars)
    requirements = {f"SMA({w})": w for w in cfg.sma_windows}
    requirements["RSI"] = cfg.rsi_period + 1
    requirements["MACD"] = cfg.macd_slow + cfg.macd_signal - 1
    requirements["ATR"] = cfg.atr_period
    requirements["HV_Close"] = cfg.rolling_window + 1
    worst = max(requirements, key=requirements.get)
    if n <= requirements[worst]:
        raise WindowError(f"{worst} needs more than {requirements[worst]} bars, got {n}")

    closes = bars["close"].to_numpy(dtype=float)
    cols: dict[str, np.ndarray] = {}
    for w in cfg.sma_windows:
        cols[f"{w}MA"] = sma(closes, w)
        cols[f"{w}MA_Slope"] = rolling_slope(cols[f"{w}MA"], cfg.slope_lookback)
    cols["RSI"] = rsi(closes, cfg.rsi_period)
    value, signal_line, strength = macd(closes, cfg.macd_fast, cfg.macd_slow, cfg.macd_signal)
    cols["MACD"] = value
    cols["Signal_Line"] = signal_line
    cols["MACD_Strength"] = strength
    cols["ATR"] = atr(bars, cfg.atr_period)
    cols["HV_Close"] = historical_volatility(closes, cfg.rolling_window)
    cols["Close_ZScore"] = rolling_zscore(closes, cfg.rolling_window)
    cols["VWAP"] = vwap_proxy(bars, cfg.rolling_window)
    return pd.DataFrame(cols, index=bars.index)
