"""Database preprocessing and database-level statistics (item frequencies, WAM, thresholds)."""
from __future__ import annotations

from collections import Counter
from typing import Dict

from .model import (
    Event,
    InvalidParamsError,
    MiningParams,
    Thresholds,
    UncertainDatabase,
    UncertainSequence,
    WeightTable,
)


def preprocess_sequence(seq: UncertainSequence) -> UncertainSequence:
    # Backward scan: each occurrence takes the max over itself and all later occurrences.
    running: Dict[str, float] = {}
    events = []
    for event in reversed(seq.events):
        new = {}
        for item, p in event.items():
            best = max(p, running.get(item, 0.0))
            running[item] = best
            new[item] = best
        events.append(Event(new))
    return UncertainSequence(seq.sid, tuple(reversed(events)))


def preprocess(db: UncertainDatabase) -> UncertainDatabase:
    """Replace every item probability with the maximum over that occurrence and
    all later occurrences of the same item in its sequence."""
    return UncertainDatabase(tuple(preprocess_sequence(s) for s in db))


def frequencies(db: UncertainDatabase) -> Counter:
    """Count every (event, item) incidence in the database."""
    counts: Counter = Counter()
    for seq in db:
        for event in seq.events:
            counts.update(event.keys())
    return counts


def wam(freq, weights: WeightTable) -> float:
    """Frequency-weighted arithmetic mean of item weights."""
    total = sum(freq.values())
    if total == 0:
        raise InvalidParamsError("WAM is undefined for an empty frequency table")
    return sum(weights[item] * f for item, f in sorted(freq.items())) / total


def thresholds(params: MiningParams, db_size: int, wam_value: float, lwes=None) -> Thresholds:
    if db_size < 0:
        raise InvalidParamsError("database size must be non-negative")
    min_wes = params.min_sup * db_size * wam_value * params.wgt_fct
    return Thresholds(wam=wam_value, min_wes=min_wes, min_wes_semi=min_wes * params.mu, lwes=lwes)


def local_threshold(params: MiningParams, delta_size: int, wam_value: float) -> float:
    """Threshold for locally frequent patterns of one increment."""
    return params.gamma * params.mu * params.min_sup * delta_size * wam_value * params.wgt_fct
