"""Loading, validation and timestamp alignment of market data inputs.

All tabular data in the package is carried as pandas DataFrames indexed by
timezone-naive trading dates (a "feature frame"): the index is strictly
increasing with no duplicates, every column has full index length, and
missing values are explicit NaN.  Bar data (OHLCV) is a feature frame with
the canonical columns ``open, high, low, close, volume``.

File formats accepted: CSV with a header row, comma separators, ISO-8601
dates and "." decimals; or a JSON list of records with the same field
names.  News input is a JSON list of ``{date, headline, body}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
import pandas as pd

from .errors import AlignmentError, DataError, SchemaError

OHLCV_COLUMNS = ("open", "high", "low", "close", "volume")

MACRO_FREQUENCIES = ("daily", "monthly", "quarterly")


def _read_table(path: str | Path) -> pd.DataFrame:
    path = Path(path)
    if not path.exists():
        raise SchemaError(f"input file does not exist: {path}")
    if path.suffix.lower() == ".json":
        records = json.loads(path.read_text())
        return pd.DataFrame.from_records(records)
    return pd.read_csv(path)


def _to_date_index(raw: Iterable, *, source: str) -> pd.DatetimeIndex:
    try:
        idx = pd.DatetimeIndex(pd.to_datetime(list(raw), format="ISO8601"))
    except (ValueError, TypeError) as exc:
        raise DataError(f"{source}: unparseable date: {exc}") from exc
    if idx.tz is not None:
        idx = idx.tz_localize(None)
    return idx


def validate_feature_frame(frame: pd.DataFrame, *, source: str = "frame") -> pd.DataFrame:
    """Check the feature-frame invariants; returns the frame unchanged."""
    if not isinstance(frame.index, pd.DatetimeIndex):
        raise DataError(f"{source}: index must be datetimes")
    if frame.index.has_duplicates:
        dup = frame.index[frame.index.duplicated()][0]
        raise DataError(f"{source}: duplicate date {dup.date()}")
    if not frame.index.is_monotonic_increasing:
        raise DataError(f"{source}: index not sorted ascending")
    return frame


def load_ohlcv(path: str | Path) -> pd.DataFrame:
    """Load an OHLCV file into a validated bar frame sorted by date.

    Raises SchemaError when a required column is missing and DataError for
    non-positive prices, negative volume, duplicate dates, or bars whose
    low/high do not bound open/close.  Rows arriving out of order are
    sorted; row count is preserved.
    """
    raw = _read_table(path)
    raw.columns = [str(c).strip().lower() for c in raw.columns]
    missing = [c for c in ("date",) + OHLCV_COLUMNS if c not in raw.columns]
    if missing:
        raise SchemaError(f"{path}: missing column(s) {missing}")

    idx = _to_date_index(raw["date"], source=str(path))
    bars = pd.DataFrame(
        {c: pd.to_numeric(raw[c], errors="coerce").to_numpy(dtype=float) for c in OHLCV_COLUMNS},
        index=idx,
    )
    bars = bars.sort_index()
    if bars.index.has_duplicates:
        dup = bars.index[bars.index.duplicated()][0]
        raise DataError(f"{path}: duplicate date {dup.date()}")

    prices = bars[["open", "high", "low", "close"]].to_numpy()
    if np.isnan(prices).any():
        raise DataError(f"{path}: non-numeric price value")
    if (prices <= 0).any():
        raise DataError(f"{path}: non-positive price")
    vol = bars["volume"].to_numpy()
    if np.isnan(vol).any() or (vol < 0).any():
        raise DataError(f"{path}: invalid volume")
    low_ok = bars["low"] <= bars[["open", "close"]].min(axis=1)
    high_ok = bars["high"] >= bars[["open", "close"]].max(axis=1)
    if not bool(low_ok.all()) or not bool(high_ok.all()):
        bad = bars.index[~(low_ok & high_ok)][0]
        raise DataError(f"{path}: low/high does not bound open/close on {bad.date()}")
    bars.index.name = "date"
    return bars


def save_ohlcv(bars: pd.DataFrame, path: str | Path) -> None:
    """Write a bar frame back to CSV; load(save(x)) round-trips bit-identically."""
    out = bars.copy()
    out.insert(0, "date", out.index.strftime("%Y-%m-%d"))
    out.to_csv(path, index=False)


def load_feature_csv(path: str | Path) -> pd.DataFrame:
    """Load a generic date-indexed feature table (CSV or JSON records)."""
    raw = _read_table(path)
    raw.columns = [str(c).strip() for c in raw.columns]
    cols = {c.lower(): c for c in raw.columns}
    if "date" not in cols:
        raise SchemaError(f"{path}: missing 'date' column")
    idx = _to_date_index(raw[cols["date"]], source=str(path))
    frame = raw.drop(columns=[cols["date"]])
    frame.index = idx
    frame = frame.sort_index().astype(float)
    frame.index.name = "date"
    return validate_feature_frame(frame, source=str(path))


def load_news(path: str | Path) -> list[dict]:
    """Load news JSON: a list of ``{date, headline, body}``, sorted by date."""
    path = Path(path)
    if not path.exists():
        raise SchemaError(f"news file does not exist: {path}")
    items = json.loads(path.read_text())
    if not isinstance(items, list):
        raise SchemaError(f"{path}: expected a JSON list of articles")
    out = []
    for i, item in enumerate(items):
        missing = [k for k in ("date", "headline", "body") if k not in item]
        if missing:
            raise SchemaError(f"{path}: article {i} missing field(s) {missing}")
        out.append(
            {
                "date": pd.Timestamp(item["date"]),
                "headline": str(item["headline"]),
                "body": str(item["body"]),
            }
        )
    out.sort(key=lambda a: a["date"])
    return out


@dataclass(frozen=True)
class MacroSeries:
    """A named macro/fundamental series at its native frequency."""

    name: str
    frequency: str  # one of MACRO_FREQUENCIES
    observations: pd.Series  # date-indexed values, sorted, no duplicates

    def __post_init__(self):
        if self.frequency not in MACRO_FREQUENCIES:
            raise DataError(f"{self.name}: unknown frequency {self.frequency!r}")
        idx = self.observations.index
        if idx.has_duplicates:
            raise DataError(f"{self.name}: duplicate observation date")
        if not idx.is_monotonic_increasing:
            raise DataError(f"{self.name}: observations not sorted by date")

    def to_frame(self) -> pd.DataFrame:
        return self.observations.rename(self.name).to_frame()


def load_macro_csv(path: str | Path, name: str, frequency: str) -> MacroSeries:
    raw = _read_table(path)
    raw.columns = [str(c).strip().lower() for c in raw.columns]
    if "date" not in raw.columns or "value" not in raw.columns:
        raise SchemaError(f"{path}: macro file needs 'date' and 'value' columns")
    idx = _to_date_index(raw["date"], source=str(path))
    series = pd.Series(pd.to_numeric(raw["value"]).to_numpy(dtype=float), index=idx)
    series = series.sort_index()
    return MacroSeries(name=name, frequency=frequency, observations=series)


def align_by_timestamp(frames: Sequence[pd.DataFrame], policy: str = "inner") -> pd.DataFrame:
    """Merge feature frames onto a common date index.

    policy="inner" keeps the intersection of all indices (empty
    intersection is an AlignmentError).  policy="forward_fill" takes the
    union of indices and carries lower-frequency series forward from
    their last observation, so a quarterly value repeats on every later
    trading day until the next release; dates before a series' first
    observation stay NaN.
    """
    frames = [f for f in frames if f is not None]
    if not frames or all(len(f) == 0 for f in frames):
        raise AlignmentError("no non-empty frames to align")
    for f in frames:
        validate_feature_frame(f)
    names = [c for f in frames for c in f.columns]
    dupes = {c for c in names if names.count(c) > 1}
    if dupes:
        raise AlignmentError(f"duplicate column names across frames: {sorted(dupes)}")

    if policy == "inner":
        index = frames[0].index
        for f in frames[1:]:
            index = index.intersection(f.index)
        if len(index) == 0:
            raise AlignmentError("inner alignment produced an empty index")
        merged = pd.concat([f.loc[index] for f in frames], axis=1)
    elif policy == "forward_fill":
        index = frames[0].index
        for f in frames[1:]:
            index = index.union(f.index)
        merged = pd.concat([f.reindex(index).ffill() for f in frames], axis=1)
    else:
        raise AlignmentError(f"unknown alignment policy {policy!r}")
    merged.index.name = "date"
    return validate_feature_frame(merged, source="aligned frame")


def pct_change_period(series, lag: int) -> np.ndarray:
    """Relative change over ``lag`` steps: out[t] = x[t]/x[t-lag] - 1.

    The first ``lag`` entries are NaN (warm-up), and a zero denominator
    yields NaN at that position rather than +/-inf: downstream prompt
    rendering must never see a non-finite number, so missingness is the
    explicit marker.
    """
    values = np.asarray(series, dtype=float)
    if lag < 1:
        raise DataError("lag must be a positive integer")
    if lag >= len(values):
        raise DataError(f"lag {lag} >= series length {len(values)}")
    out = np.full(len(values), np.nan)
    base = values[:-lag]
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = values[lag:] / base
    ratio[base == 0] = np.nan
    out[lag:] = ratio - 1.0
    return out
