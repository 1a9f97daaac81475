"""Weighted sequential pattern mining in uncertain sequence databases."""
from .estimators import IncrementalSequenceMiner, WeightedSequenceMiner
from .incremental import IncrementalState, IncrementReport, initial_mining, replay, uwsinc, uwsinc_plus
from .measures import exp_sup, max_pr_s, s_weight, wes
from .miner import CAP, TOP, MiningResult, fuws, mine_with_threshold
from .model import (
    ClassifiedPattern,
    Event,
    MiningParams,
    Pattern,
    Thresholds,
    UncertainDatabase,
    UncertainSequence,
    USPMError,
    WeightTable,
    canonicalize,
)
from .oracle import OracleParams, completeness, oracle_mine
from .trie import USeqTrie

__all__ = [
    "CAP", "TOP", "ClassifiedPattern", "Event", "IncrementReport", "IncrementalSequenceMiner",
    "IncrementalState", "MiningParams", "MiningResult", "OracleParams", "Pattern", "Thresholds",
    "USPMError", "USeqTrie", "UncertainDatabase", "UncertainSequence", "WeightTable",
    "WeightedSequenceMiner", "canonicalize", "completeness", "exp_sup", "fuws", "initial_mining",
    "max_pr_s", "mine_with_threshold", "oracle_mine", "replay", "s_weight", "uwsinc", "uwsinc_plus", "wes",
]
