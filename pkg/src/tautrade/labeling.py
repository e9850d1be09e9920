"""Hindsight trade labels from blended forward returns.

A label at date t blends the 10-bar and 20-bar forward returns
(0.4/0.6 weights) and goes LONG when the blend is >= 0, SHORT otherwise.
Labels deliberately use future prices: they are proxy expert actions for
prompt-tuning exemplars and must never reach the trading environment or
the agent's observations, so nothing in this module is imported by
``tautrade.env`` or ``tautrade.agent``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd

from .errors import HorizonError

SHORT, LONG = 0, 1

H_SHORT_BARS = 10
H_LONG_BARS = 20
W_SHORT = 0.4
W_LONG = 0.6


@dataclass(frozen=True)
class TradeLabel:
    date: pd.Timestamp
    action: int  # LONG=1, SHORT=0
    r10: float
    r20: float
    r_weighted: float


def expert_label(closes, t: int, dates=None) -> TradeLabel:
    """Label one index; needs both forward horizons inside the series."""
    closes = np.asarray(closes, dtype=float)
    if t < 0 or t + H_LONG_BARS >= len(closes):
        raise HorizonError(
            f"index {t} needs {H_LONG_BARS} future bars in a series of length {len(closes)}"
        )
    r10 = closes[t + H_SHORT_BARS] / closes[t] - 1.0
    r20 = closes[t + H_LONG_BARS] / closes[t] - 1.0
    r_weighted = W_SHORT * r10 + W_LONG * r20
    action = LONG if r_weighted >= 0.0 else SHORT
    date = dates[t] if dates is not None else pd.Timestamp(0) + pd.Timedelta(days=t)
    return TradeLabel(date=pd.Timestamp(date), action=action, r10=r10, r20=r20, r_weighted=r_weighted)


def label_series(closes, dates=None) -> list[TradeLabel]:
    """Label every index with full forward coverage; the final 20 stay unlabeled."""
    closes = np.asarray(closes, dtype=float)
    if len(closes) <= H_LONG_BARS:
        raise HorizonError(f"need more than {H_LONG_BARS} closes, got {len(closes)}")
    return [expert_label(closes, t, dates) for t in range(len(closes) - H_LONG_BARS)]


def labels_to_frame(labels: list[TradeLabel]) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "date": [lb.date.strftime("%Y-%m-%d") for lb in labels],
            "action": [lb.action for lb in labels],
            "r10": [lb.r10 for lb in labels],
            "r20": [lb.r20 for lb in labels],
            "r_weighted": [lb.r_weighted for lb in labels],
        }
    )


def save_labels(labels: list[TradeLabel], path: str | Path) -> None:
    """Write the exemplar-pool CSV consumed by the prompt tuner."""
    labels_to_frame(labels).to_csv(path, index=False)


def load_labels(path: str | Path) -> list[TradeLabel]:
    frame = pd.read_csv(path)
    return [
        TradeLabel(
            date=pd.Timestamp(row.date),
            action=int(row.action),
            r10=float(row.r10),
            r20=float(row.r20),
            r_weighted=float(row.r_weighted),
        )
        for row in frame.itertuples()
    ]
