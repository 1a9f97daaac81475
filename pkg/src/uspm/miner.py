"""Pattern-growth miner over a preprocessed database with an exact verification pass."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Tuple

from .measures import I_EXT, S_EXT, BoundContext, exp_sup_cap, exp_support_top, wgt_cap
from .model import (
    FS,
    SFS,
    ClassifiedPattern,
    InvalidParamsError,
    MiningParams,
    Pattern,
    Thresholds,
    UncertainDatabase,
    WeightTable,
    passes,
    sorted_listing,
)
from .preprocess import frequencies, preprocess, thresholds, wam
from .trie import USeqTrie

CAP = "cap"
TOP = "top"


class ExtStat(NamedTuple):
    total: float  # sum over sequences of the per-sequence max probability
    max_pr: float  # max over sequences
    support: int  # number of sequences where the extension is possible
    item_max_pr: float  # max of the extension item's own probability


class Projection:
    """Pseudo-projection of a preprocessed database on a prefix.

    ``entries`` holds ``(sequence index, event index)`` of the earliest match of
    the prefix in every sequence that contains it. Events after that point are
    s-extension positions; the match event and any later event holding the
    prefix's whole last itemset are i-extension positions.
    """

    __slots__ = ("sequences", "entries", "last_itemset", "_stats")

    def __init__(self, sequences, entries, last_itemset=()):
        self.sequences = sequences
        self.entries = entries
        self.last_itemset = tuple(last_itemset)
        self._stats = None

    @classmethod
    def root(cls, db: UncertainDatabase) -> "Projection":
        seqs = tuple(s.events for s in db)
        return cls(seqs, [(i, -1) for i in range(len(seqs))])

    def __len__(self):
        return len(self.entries)

    def extension_stats(self) -> Dict[Tuple[str, str], ExtStat]:
        """Per ``(kind, item)`` extension: sums, maxima and support over the projection.

        For an i-extension the per-event value is the joint probability of the whole
        last itemset plus the new item; for an s-extension it is the item's own
        (processed) probability.
        """
        if self._stats is not None:
            return self._stats
        total: Dict[Tuple[str, str], float] = {}
        top: Dict[Tuple[str, str], float] = {}
        item_top: Dict[Tuple[str, str], float] = {}
        count: Dict[Tuple[str, str], int] = {}
        last = self.last_itemset
        for s, pos in self.entries:
            events = self.sequences[s]
            local: Dict[Tuple[str, str], float] = {}
            local_item: Dict[Tuple[str, str], float] = {}
            if last:
                last_item = last[-1]
                for k in range(pos, len(events)):
                    ev = events[k]
                    joint = 1.0
                    for x in last:
                        p = ev.get(x)
                        if p is None:
                            joint = 0.0
                            break
                        joint *= p
                    if joint == 0.0:
                        continue
                    for item, p in ev.items():
                        if item > last_item:
                            key = (I_EXT, item)
                            if joint * p > local.get(key, 0.0):
                                local[key] = joint * p
                            if p > local_item.get(key, 0.0):
                                local_item[key] = p
            for k in range(pos + 1, len(events)):
                for item, p in events[k].items():
                    key = (S_EXT, item)
                    if p > local.get(key, 0.0):
                        local[key] = p
                        local_item[key] = p
            for key, p in local.items():
                total[key] = total.get(key, 0.0) + p
                count[key] = count.get(key, 0) + 1
                if p > top.get(key, 0.0):
                    top[key] = p
                if local_item[key] > item_top.get(key, 0.0):
                    item_top[key] = local_item[key]
        self._stats = {k: ExtStat(total[k], top[k], count[k], item_top[k]) for k in total}
        return self._stats

    def extend(self, item: str, kind: str) -> "Projection":
        entries = []
        if kind == S_EXT:
            for s, pos in self.entries:
                events = self.sequences[s]
                for k in range(pos + 1, len(events)):
                    if item in events[k]:
                        entries.append((s, k))
                        break
            return Projection(self.sequences, entries, (item,))
        itemset = self.last_itemset + (item,)
        for s, pos in self.entries:
            events = self.sequences[s]
            for k in range(pos, len(events)):
                ev = events[k]
                if all(x in ev for x in itemset):
                    entries.append((s, k))
                    break
        return Projection(self.sequences, entries, itemset)

    def weight_profile(self, weights: WeightTable) -> Tuple[float, int]:
        """``(heaviest item, most items)`` that can still be appended in any sequence."""
        best = 0.0
        most = 0
        last_item = self.last_itemset[-1] if self.last_itemset else None
        for s, pos in self.entries:
            events = self.sequences[s]
            n_items = 0
            if pos >= 0 and last_item is not None:
                for item in events[pos]:
                    if item > last_item:
                        n_items += 1
                        best = max(best, weights[item])
            for k in range(pos + 1, len(events)):
                n_items += len(events[k])
                for item in events[k]:
                    best = max(best, weights[item])
            most = max(most, n_items)
        return best, most

    def max_weight(self, weights: WeightTable) -> float:
        return self.weight_profile(weights)[0]


@dataclass(frozen=True)
class CandidateRecord:
    """Bound values computed when a candidate was generated."""

    pattern: Pattern
    exp_sup_cap: float
    exp_support_top: float
    wgt_cap: float
    bound: float  # the value compared against the generation threshold


@dataclass
class MiningResult:
    fs: List[ClassifiedPattern]
    sfs: List[ClassifiedPattern]
    candidate_count: int
    thresholds: Thresholds
    candidates: List[CandidateRecord] = field(default_factory=list)
    stats: Dict[str, float] = field(default_factory=dict)

    @property
    def patterns(self) -> List[ClassifiedPattern]:
        return self.fs + self.sfs


def _grow(db: UncertainDatabase, weights: WeightTable, theta: float, bound: str):
    """Generate candidates from the preprocessed database; returns (trie, records)."""
    pdb = preprocess(db)
    trie = USeqTrie()
    records: List[CandidateRecord] = []

    def rec(prefix: Pattern, proj: Projection, ctx: BoundContext):
        stats = proj.extension_stats()
        for kind, item in sorted(stats, key=lambda k: (k[0] != I_EXT, k[1])):
            stat = stats[(kind, item)]
            esc = exp_sup_cap(ctx, item, proj, kind)
            top = exp_support_top(ctx.prefix_max_pr, stat.item_max_pr, stat.support)
            child = proj.extend(item, kind)
            child_ctx = ctx.extend(kind, stat.max_pr, weights[item])
            wcap = wgt_cap(child_ctx, child, weights)
            value = (esc if bound == CAP else top) * wcap
            if not passes(value, theta):
                continue
            if kind == S_EXT:
                pattern = Pattern(prefix + ((item,),))
            else:
                pattern = Pattern(prefix[:-1] + (prefix[-1] + (item,),))
            trie.insert(pattern)
            records.append(CandidateRecord(pattern, esc, top, wcap, value))
            rec(pattern, child, child_ctx)

    rec(Pattern(), Projection.root(pdb), BoundContext())
    return trie, records


def _check_inputs(db: UncertainDatabase, weights: WeightTable, bound: str):
    if bound not in (CAP, TOP):
        raise InvalidParamsError(f"unknown bound {bound!r}; expected 'cap' or 'top'")
    weights.require(db.alphabet)


def fuws(db: UncertainDatabase, weights: WeightTable, params: MiningParams, bound: str = CAP,
         min_wes: Optional[float] = None, min_wes_semi: Optional[float] = None) -> MiningResult:
    """Mine frequent (FS) and semi-frequent (SFS) weighted patterns.

    Candidates whose bound reaches ``minWES * mu`` are generated on the
    preprocessed database, then their exact WES is computed on ``db`` and
    classified. ``min_wes``/``min_wes_semi`` override the data-derived thresholds.
    """
    _check_inputs(db, weights, bound)
    t0 = time.perf_counter()
    if len(db):
        th = thresholds(params, len(db), wam(frequencies(db), weights))
    else:
        th = Thresholds(wam=0.0, min_wes=0.0, min_wes_semi=0.0)
    if min_wes is not None or min_wes_semi is not None:
        mw = th.min_wes if min_wes is None else float(min_wes)
        ms = mw * params.mu if min_wes_semi is None else float(min_wes_semi)
        if ms > mw:
            raise InvalidParamsError("semi-frequent threshold exceeds the frequent threshold")
        th = Thresholds(wam=th.wam, min_wes=mw, min_wes_semi=ms)

    trie, records = _grow(db, weights, th.min_wes_semi, bound)
    t1 = time.perf_counter()
    trie.reset_wes()
    trie.sup_calc(db, weights)
    fs, sfs = [], []
    for pattern, value in trie.enumerate():
        cls = th.classify(value)
        if cls == FS:
            fs.append(ClassifiedPattern(pattern, value, FS))
        elif cls == SFS:
            sfs.append(ClassifiedPattern(pattern, value, SFS))
    t2 = time.perf_counter()
    return MiningResult(
        fs=sorted_listing(fs),
        sfs=sorted_listing(sfs),
        candidate_count=len(records),
        thresholds=th,
        candidates=records,
        stats={"node_count": trie.node_count, "growth_seconds": t1 - t0,
               "verify_seconds": t2 - t1, "seconds": t2 - t0},
    )


def mine_with_threshold(db: UncertainDatabase, weights: WeightTable, absolute_threshold: float,
                        wgt_fct: float = 1.0, bound: str = CAP) -> List[Tuple[Pattern, float]]:
    """Every pattern of ``db`` whose exact WES reaches ``absolute_threshold``.

    ``wgt_fct`` is accepted for call-site symmetry with ``fuws``; the threshold is already absolute.
    """
    _check_inputs(db, weights, bound)
    if len(db) == 0:
        return []
    trie, _ = _grow(db, weights, absolute_threshold, bound)
    trie.reset_wes()
    trie.sup_calc(db, weights)
    return [(p, v) for p, v in trie.enumerate() if passes(v, absolute_threshold)]
