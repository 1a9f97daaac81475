"""Brute-force reference miner.

Shares no code with the bound or trie machinery: every embedding of a pattern is
enumerated explicitly, and the only pruning is that expected support never grows
under extension, so ``exp_sup * heaviest weight`` caps every descendant.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import prod
from typing import Iterable, List, Tuple

from .model import InvalidParamsError, Pattern, UncertainDatabase, USPMError, WeightTable

DEFAULT_MAX_LEN = 6
NODE_LIMIT = 10_000_000


class OracleLimitError(USPMError, RuntimeError):
    pass


@dataclass(frozen=True)
class OracleParams:
    threshold: float
    max_len: int = DEFAULT_MAX_LEN
    node_limit: int = NODE_LIMIT

    def __post_init__(self):
        if self.max_len < 1:
            raise InvalidParamsError("max_len must be at least 1")
        if self.threshold < 0:
            raise InvalidParamsError("threshold must be non-negative")


def embedding_max(pattern: Pattern, events) -> float:
    best = 0.0
    for slots in combinations(range(len(events)), len(pattern)):
        p = 1.0
        for itemset, k in zip(pattern, slots):
            ev = events[k]
            if not all(x in ev for x in itemset):
                p = 0.0
                break
            p *= prod(ev[x] for x in itemset)
        best = max(best, p)
    return best


def brute_exp_sup(pattern: Pattern, db: UncertainDatabase) -> float:
    return sum(embedding_max(pattern, s.events) for s in db)


def brute_wes(pattern: Pattern, db: UncertainDatabase, weights: WeightTable) -> float:
    items = pattern.items()
    return brute_exp_sup(pattern, db) * sum(weights[i] for i in items) / len(items)


def oracle_mine(db: UncertainDatabase, weights: WeightTable, params: OracleParams
                ) -> List[Tuple[Pattern, float]]:
    """All patterns up to ``params.max_len`` items whose exact WES reaches ``params.threshold``."""
    alphabet = sorted(db.alphabet)
    weights.require(alphabet)
    if not alphabet:
        return []
    heaviest = max(weights[i] for i in alphabet)
    slack = 1e-9
    found: List[Tuple[Pattern, float]] = []
    visited = 0

    def visit(pattern: Pattern):
        nonlocal visited
        visited += 1
        if visited > params.node_limit:
            raise OracleLimitError(f"oracle exceeded {params.node_limit} nodes")
        support = brute_exp_sup(pattern, db)
        if support * heaviest < params.threshold - slack:
            return
        items = pattern.items()
        value = support * sum(weights[i] for i in items) / len(items)
        if value >= params.threshold - slack:
            found.append((pattern, value))
        if len(items) >= params.max_len:
            return
        last = pattern[-1]
        for item in alphabet:
            if item > last[-1]:
                visit(Pattern(pattern[:-1] + (last + (item,),)))
        for item in alphabet:
            visit(Pattern(pattern + ((item,),)))

    for item in alphabet:
        visit(Pattern(((item,),)))
    return sorted(found, key=lambda pv: pv[0])


def completeness(reported: Iterable, truth: Iterable) -> float:
    truth = set(truth)
    if not truth:
        return 1.0
    return len(truth & set(reported)) / len(truth)
