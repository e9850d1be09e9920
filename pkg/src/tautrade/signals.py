"""Strategy parsing and the guidance-signal algebra.

A monthly strategy is a discrete direction (LONG/SHORT), a 1-3 Likert
confidence, a rationale, and weighted features.  The scalar fed to the
trading agent is built in four steps:

    mu_conf  = likert / 3                      confidence in (0, 1]
    C        = eps + (1 - eps) * (1 - H)       entropy-adjusted certainty
    strength = mu_conf * C                     in (0, 1]
    tau      = (2*direction - 1) * strength    signed, never exactly 0

with eps = 0.01 for numerical stability and H the generation entropy
normalized to [0, 1].  Entropy is measured per token over the top-5
probabilities plus one tail bucket, so the normalizer is ln(6), the
maximum entropy of a 6-bucket distribution.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from .errors import ArgumentError, ValidationError

SHORT, LONG = 0, 1
TOP_K = 5
ENTROPY_BUCKETS = TOP_K + 1  # top-k tokens plus one tail bucket
MAX_TOKEN_ENTROPY = math.log(ENTROPY_BUCKETS)
CERTAINTY_EPS = 0.01

FEATURE_DIRECTIONS = ("LONG", "SHORT", "NEUTRAL")

GUIDANCE_MODES = ("off", "dir_only", "conf_dir", "tau")


@dataclass(frozen=True)
class TokenDistribution:
    """Top-k probabilities of one generated token plus the unobserved tail mass."""

    top_probs: tuple[float, ...]
    p_tail: float
    chosen_logprob: float = 0.0

    def __post_init__(self):
        probs = (*self.top_probs, self.p_tail)
        if any(p < 0.0 or p > 1.0 for p in probs):
            raise ArgumentError("token probabilities must lie in [0, 1]")
        total = sum(self.top_probs) + self.p_tail
        if abs(total - 1.0) > 1e-9:
            raise ArgumentError(f"top-k mass + tail must sum to 1, got {total!r}")


@dataclass(frozen=True)
class WeightedFeature:
    feature: str
    direction: str  # LONG | SHORT | NEUTRAL
    weight: int  # 1..3


@dataclass(frozen=True)
class Strategy:
    direction: int  # LONG=1, SHORT=0
    confidence_likert: int  # 1..3
    explanation: str
    features_used: tuple[WeightedFeature, ...] = ()
    date: Optional[pd.Timestamp] = None


@dataclass(frozen=True)
class SignalFeature:
    """One month of guidance, fully derived and ready for the environment."""

    date: pd.Timestamp
    direction: int  # LONG=1, SHORT=0
    confidence_likert: int
    h_norm: float
    certainty: float
    strength: float
    tau: float


def perplexity(token_logprobs: Sequence[float]) -> float:
    """exp of the negative mean token log-probability; always >= 1."""
    lps = np.asarray(token_logprobs, dtype=float)
    if lps.size == 0:
        raise ArgumentError("perplexity needs at least one token log-probability")
    if (lps > 0).any():
        raise ArgumentError("log-probabilities must be <= 0")
    return float(math.exp(-lps.mean()))


def _entropy_term(p: float) -> float:
    return 0.0 if p == 0.0 else -p * math.log(p)


def truncated_entropy(dists: Sequence[TokenDistribution]) -> float:
    """Mean per-token entropy over top-k buckets plus the tail (nats).

    Uses the 0*ln(0) := 0 continuity convention.
    """
    if len(dists) == 0:
        raise ArgumentError("truncated_entropy needs at least one token")
    total = 0.0
    for dist in dists:
        total += sum(_entropy_term(p) for p in dist.top_probs) + _entropy_term(dist.p_tail)
    return total / len(dists)


def normalize_entropy(h_raw: float) -> float:
    """Map raw bucket entropy to [0, 1]; the normalizer is ln(k + 1) = ln 6."""
    if h_raw < 0.0:
        raise ArgumentError("entropy cannot be negative")
    return min(1.0, h_raw / MAX_TOKEN_ENTROPY)


def signal_strength(confidence_likert: int, h_norm: float) -> float:
    """Entropy-adjusted confidence in (0, 1]; floors at eps/3 when H = 1."""
    if confidence_likert not in (1, 2, 3):
        raise ArgumentError(f"Likert confidence must be 1, 2 or 3, got {confidence_likert!r}")
    if not 0.0 <= h_norm <= 1.0:
        raise ArgumentError(f"normalized entropy must lie in [0, 1], got {h_norm!r}")
    mu_conf = confidence_likert / 3.0
    certainty = CERTAINTY_EPS + (1.0 - CERTAINTY_EPS) * (1.0 - h_norm)
    return mu_conf * certainty


def interaction_term(direction: int, strength: float) -> float:
    """Signed guidance scalar: direction remapped {0,1} -> {-1,+1} times strength."""
    if direction not in (SHORT, LONG):
        raise ArgumentError(f"direction must be 0 (SHORT) or 1 (LONG), got {direction!r}")
    if not 0.0 < strength <= 1.0:
        raise ArgumentError(f"strength must lie in (0, 1], got {strength!r}")
    return (2 * direction - 1) * strength


def make_signal_feature(strategy: Strategy, h_norm: float) -> SignalFeature:
    """Assemble the per-month guidance record from a parsed strategy."""
    strength = signal_strength(strategy.confidence_likert, h_norm)
    certainty = strength / (strategy.confidence_likert / 3.0)
    return SignalFeature(
        date=strategy.date if strategy.date is not None else pd.Timestamp(0),
        direction=strategy.direction,
        confidence_likert=strategy.confidence_likert,
        h_norm=h_norm,
        certainty=certainty,
        strength=strength,
        tau=interaction_term(strategy.direction, strength),
    )


def guidance_scalar(sf: SignalFeature, mode: str = "tau") -> float:
    """Ablation switch over guidance variants; "tau" is the default product form."""
    if mode not in GUIDANCE_MODES:
        raise ArgumentError(f"unknown guidance mode {mode!r}")
    sign = 2 * sf.direction - 1
    if mode == "off":
        return 0.0
    if mode == "dir_only":
        return float(sign)
    if mode == "conf_dir":
        return sign * (sf.confidence_likert / 3.0)
    return sf.tau


def _strip_fences(payload: str) -> str:
    text = payload.strip()
    if text.startswith("```"):
        lines = text.splitlines()
        if lines[-1].strip() == "```":
            lines = lines[1:-1]
        else:
            lines = lines[1:]
        text = "\n".join(lines)
    return text


def parse_strategy(payload: str, date: Optional[pd.Timestamp] = None) -> Strategy:
    """Validate a strategy JSON payload.

    Required fields: action (LONG|SHORT only: there is deliberately no
    HOLD/neutral signal), action_confidence (1..3), explanation,
    features_used (list of {feature, direction, weight}).
    """
    try:
        obj = json.loads(_strip_fences(payload))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"strategy payload is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ValidationError("strategy payload must be a JSON object")

    for key in ("action", "action_confidence", "explanation", "features_used"):
        if key not in obj:
            raise ValidationError(f"strategy missing required field {key!r}")

    action = str(obj["action"]).strip().upper()
    if action not in ("LONG", "SHORT"):
        raise ValidationError(f"action must be LONG or SHORT, got {obj['action']!r}")
    confidence = obj["action_confidence"]
    if not isinstance(confidence, int) or confidence not in (1, 2, 3):
        raise ValidationError(f"action_confidence must be an integer in 1..3, got {confidence!r}")

    features = []
    if not isinstance(obj["features_used"], list):
        raise ValidationError("features_used must be a list")
    for i, item in enumerate(obj["features_used"]):
        if not isinstance(item, dict):
            raise ValidationError(f"features_used[{i}] must be an object")
        for key in ("feature", "direction", "weight"):
            if key not in item:
                raise ValidationError(f"features_used[{i}] missing field {key!r}")
        fdir = str(item["direction"]).strip().upper()
        if fdir not in FEATURE_DIRECTIONS:
            raise ValidationError(f"features_used[{i}].direction invalid: {item['direction']!r}")
        weight = item["weight"]
        if not isinstance(weight, int) or weight not in (1, 2, 3):
            raise ValidationError(f"features_used[{i}].weight must be 1..3, got {weight!r}")
        features.append(WeightedFeature(str(item["feature"]), fdir, weight))

    return Strategy(
        direction=LONG if action == "LONG" else SHORT,
        confidence_likert=confidence,
        explanation=str(obj["explanation"]),
        features_used=tuple(features),
        date=date,
    )


SIGNAL_CSV_COLUMNS = ("date", "dir", "likert", "H_norm", "C", "strength", "tau")


def signals_to_frame(signals: Sequence[SignalFeature]) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "date": [s.date.strftime("%Y-%m-%d") for s in signals],
            "dir": [s.direction for s in signals],
            "likert": [s.confidence_likert for s in signals],
            "H_norm": [s.h_norm for s in signals],
            "C": [s.certainty for s in signals],
            "strength": [s.strength for s in signals],
            "tau": [s.tau for s in signals],
        }
    )


def save_signals(signals: Sequence[SignalFeature], path: str | Path) -> None:
    """Write the signal contract CSV consumed by the trading environment."""
    signals_to_frame(signals).to_csv(path, index=False)


def load_signals(path: str | Path) -> list[SignalFeature]:
    frame = pd.read_csv(path)
    missing = [c for c in SIGNAL_CSV_COLUMNS if c not in frame.columns]
    if missing:
        raise ValidationError(f"{path}: signal CSV missing column(s) {missing}")
    return [
        SignalFeature(
            date=pd.Timestamp(row.date),
            direction=int(row.dir),
            confidence_likert=int(row.likert),
            h_norm=float(row.H_norm),
            certainty=float(row.C),
            strength=float(row.strength),
            tau=float(row.tau),
        )
        for row in frame.itertuples()
    ]
