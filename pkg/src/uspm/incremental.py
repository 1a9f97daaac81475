"""Maintenance of frequent, semi-frequent and promising patterns as a database grows.

Two update rules are provided. ``uwsinc`` only refreshes the supports of patterns it
already tracks. ``uwsinc_plus`` also mines every increment locally and keeps a second
trie of promising patterns, so patterns that were not frequent earlier can still surface later.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import List, Optional, Set, Union

from .miner import CAP, fuws, mine_with_threshold
from .model import (
    FS,
    LFS,
    PFS,
    SFS,
    ClassifiedPattern,
    InvalidParamsError,
    MalformedDataError,
    MiningParams,
    Thresholds,
    UncertainDatabase,
    WeightTable,
    passes,
    sorted_listing,
)
from .preprocess import frequencies, local_threshold, thresholds, wam
from .trie import USeqTrie

LWES_DELTA = "delta"
LWES_CUMULATIVE = "cumulative"

LwesMode = Union[str, float]


def check_lwes_mode(mode: LwesMode) -> LwesMode:
    if mode in (LWES_DELTA, LWES_CUMULATIVE):
        return mode
    try:
        value = float(mode)
    except (TypeError, ValueError):
        raise InvalidParamsError(
            f"lwes mode must be 'delta', 'cumulative' or a positive number, got {mode!r}") from None
    if not value > 0:
        raise InvalidParamsError(f"explicit LWES must be positive, got {value}")
    return value


@dataclass
class IncrementalState:
    params: MiningParams
    weights: WeightTable
    db_size: int = 0
    freq: Counter = field(default_factory=Counter)
    seq_trie: USeqTrie = field(default_factory=USeqTrie)
    pfs_trie: USeqTrie = field(default_factory=USeqTrie)
    thresholds: Thresholds = field(default_factory=lambda: Thresholds(0.0, 0.0, 0.0))
    lwes_mode: LwesMode = LWES_DELTA
    bound: str = CAP
    seen_ids: Set[int] = field(default_factory=set)
    steps: int = 0

    def listing(self) -> List[ClassifiedPattern]:
        """Tracked patterns with their current classes (FS, SFS, then PFS)."""
        rows = []
        for pattern, value in self.seq_trie.enumerate():
            rows.append(ClassifiedPattern(pattern, value, FS if passes(value, self.thresholds.min_wes) else SFS))
        rows.extend(ClassifiedPattern(p, v, PFS) for p, v in self.pfs_trie.enumerate())
        return sorted_listing(rows)


@dataclass
class IncrementReport:
    step: int
    algorithm: str
    delta_size: int
    thresholds: Thresholds
    wam_delta: Optional[float]
    fs: List[ClassifiedPattern]
    sfs: List[ClassifiedPattern]
    pfs: List[ClassifiedPattern]
    lfs: List[ClassifiedPattern]
    promoted: int = 0
    demoted: int = 0
    deleted: int = 0
    inserted: int = 0

    @property
    def rows(self) -> List[ClassifiedPattern]:
        return self.fs + self.sfs + self.pfs + self.lfs

    def summary(self) -> str:
        th = self.thresholds
        lwes = "NA" if th.lwes is None else f"{th.lwes:.6f}"
        wd = "NA" if self.wam_delta is None else f"{self.wam_delta:.6f}"
        return (f"step={self.step} algo={self.algorithm} delta={self.delta_size} "
                f"wam={th.wam:.6f} wam_delta={wd} min_wes={th.min_wes:.6f} "
                f"min_wes_semi={th.min_wes_semi:.6f} lwes={lwes} "
                f"fs={len(self.fs)} sfs={len(self.sfs)} pfs={len(self.pfs)} lfs={len(self.lfs)} "
                f"promoted={self.promoted} demoted={self.demoted} deleted={self.deleted} "
                f"inserted={self.inserted}")


def _register_ids(state: IncrementalState, db: UncertainDatabase) -> None:
    ids = [s.sid for s in db]
    dup = {i for i in ids if i in state.seen_ids} | {i for i in ids if ids.count(i) > 1}
    if dup:
        raise MalformedDataError(f"sequence ids already used: {sorted(dup)[:10]}")
    state.seen_ids.update(ids)


def _refresh_thresholds(state: IncrementalState, lwes: Optional[float] = None) -> Thresholds:
    wam_value = wam(state.freq, state.weights) if state.freq else 0.0
    state.thresholds = thresholds(state.params, state.db_size, wam_value, lwes=lwes)
    return state.thresholds


def initial_mining(db: UncertainDatabase, weights: WeightTable, params: MiningParams,
                   lwes_mode: LwesMode = LWES_DELTA, bound: str = CAP) -> IncrementalState:
    """Mine ``db`` once and keep its frequent and semi-frequent patterns for later updates."""
    state = IncrementalState(params=params, weights=weights, lwes_mode=check_lwes_mode(lwes_mode),
                             bound=bound)
    weights.require(db.alphabet)
    _register_ids(state, db)
    state.db_size = len(db)
    state.freq = frequencies(db)
    if len(db):
        result = fuws(db, weights, params, bound=bound)
        state.thresholds = result.thresholds
        for row in result.patterns:
            state.seq_trie.insert(row.pattern, row.wes)
    return state


def _absorb(state: IncrementalState, delta: UncertainDatabase) -> Counter:
    state.weights.require(delta.alphabet)
    _register_ids(state, delta)
    delta_freq = frequencies(delta)
    state.db_size += len(delta)
    state.freq.update(delta_freq)
    state.steps += 1
    return delta_freq


def _split_seq(state: IncrementalState):
    fs, sfs = [], []
    for pattern, value in state.seq_trie.enumerate():
        if passes(value, state.thresholds.min_wes):
            fs.append(ClassifiedPattern(pattern, value, FS))
        else:
            sfs.append(ClassifiedPattern(pattern, value, SFS))
    return sorted_listing(fs), sorted_listing(sfs)


def uwsinc(state: IncrementalState, delta: UncertainDatabase) -> IncrementReport:
    """Update tracked supports with ``delta`` and drop whatever falls below the semi-frequent threshold."""
    _absorb(state, delta)
    th = _refresh_thresholds(state)
    state.seq_trie.sup_calc(delta, state.weights)
    deleted = 0
    for pattern, value in state.seq_trie.enumerate():
        if not passes(value, th.min_wes_semi):
            state.seq_trie.remove(pattern)
            deleted += 1
    fs, sfs = _split_seq(state)
    return IncrementReport(step=state.steps, algorithm="uwsinc", delta_size=len(delta), thresholds=th,
                           wam_delta=None, fs=fs, sfs=sfs, pfs=[], lfs=[], deleted=deleted)


def _local_threshold(state: IncrementalState, delta: UncertainDatabase, delta_freq: Counter):
    wam_delta = wam(delta_freq, state.weights) if delta_freq else 0.0
    mode = state.lwes_mode
    if mode == LWES_DELTA:
        return local_threshold(state.params, len(delta), wam_delta), wam_delta
    if mode == LWES_CUMULATIVE:
        return local_threshold(state.params, len(delta), state.thresholds.wam), wam_delta
    return float(mode), wam_delta


def uwsinc_plus(state: IncrementalState, delta: UncertainDatabase) -> IncrementReport:
    """Update with ``delta``, mining it locally to promote, demote and discover patterns."""
    delta_freq = _absorb(state, delta)
    _refresh_thresholds(state)
    lwes, wam_delta = _local_threshold(state, delta, delta_freq)
    th = _refresh_thresholds(state, lwes=lwes)

    local = mine_with_threshold(delta, state.weights, lwes, state.params.wgt_fct, bound=state.bound) \
        if len(delta) else []
    seq, pfs = state.seq_trie, state.pfs_trie
    seq.sup_calc(delta, state.weights)
    pfs.sup_calc(delta, state.weights)

    promoted = demoted = deleted = inserted = 0
    for pattern, value in seq.enumerate():
        if passes(value, th.min_wes_semi):
            continue
        seq.remove(pattern)
        if passes(value, lwes):
            pfs.insert(pattern, value)
            demoted += 1
        else:
            deleted += 1
    for pattern, value in pfs.enumerate():
        if passes(value, th.min_wes_semi):
            pfs.remove(pattern)
            seq.insert(pattern, value)
            promoted += 1
        elif not passes(value, lwes):
            pfs.remove(pattern)
            deleted += 1
    for pattern, value in local:
        if pattern in seq or pattern in pfs:
            continue
        if passes(value, th.min_wes_semi):
            seq.insert(pattern, value)
        else:
            pfs.insert(pattern, value)
        inserted += 1

    fs, sfs = _split_seq(state)
    return IncrementReport(
        step=state.steps, algorithm="uwsinc+", delta_size=len(delta), thresholds=th, wam_delta=wam_delta,
        fs=fs, sfs=sfs,
        pfs=sorted_listing(ClassifiedPattern(p, v, PFS) for p, v in pfs.enumerate()),
        lfs=sorted_listing(ClassifiedPattern(p, v, LFS) for p, v in local),
        promoted=promoted, demoted=demoted, deleted=deleted, inserted=inserted,
    )


ALGORITHMS = {"uwsinc": uwsinc, "uwsinc+": uwsinc_plus}


def replay(db: UncertainDatabase, deltas, weights: WeightTable, params: MiningParams,
           algorithm: str = "uwsinc+", lwes_mode: LwesMode = LWES_DELTA, bound: str = CAP):
    """Run initial mining and then every delta in order; returns ``(state, reports)``."""
    try:
        step = ALGORITHMS[algorithm]
    except KeyError:
        raise InvalidParamsError(f"unknown algorithm {algorithm!r}; expected one of {sorted(ALGORITHMS)}") from None
    state = initial_mining(db, weights, params, lwes_mode=lwes_mode, bound=bound)
    return state, [step(state, d) for d in deltas]
