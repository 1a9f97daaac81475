"""scikit-learn style wrappers around the batch and incremental miners.

``transform`` maps each input sequence to a row of per-pattern embedding
probabilities (``max_pr_s``), one column per mined pattern, so the mined
patterns can feed a downstream pipeline as features.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .incremental import ALGORITHMS, LWES_DELTA, check_lwes_mode, initial_mining
from .measures import max_pr_s
from .miner import CAP, fuws
from .model import InvalidParamsError
from .validation import check_database, check_params, check_weights


def _features(db, patterns) -> np.ndarray:
    out = np.zeros((len(db), len(patterns)), dtype=float)
    for i, seq in enumerate(db):
        for j, pattern in enumerate(patterns):
            out[i, j] = max_pr_s(pattern, seq)
    return out


class _PatternFeatures(TransformerMixin):
    def _check_fitted(self):
        if not hasattr(self, "patterns_"):
            raise NotFittedError(f"{type(self).__name__} is not fitted yet; call fit first")

    def transform(self, X):
        self._check_fitted()
        return _features(check_database(X), self.patterns_)

    def get_feature_names_out(self, input_features=None):
        self._check_fitted()
        return np.array([str(p) for p in self.patterns_], dtype=object)


class WeightedSequenceMiner(_PatternFeatures, BaseEstimator):
    """Batch miner.

    Parameters
    ----------
    min_sup, mu, wgt_fct : mining parameters; ``mu < 1`` also keeps semi-frequent patterns.
    weights : mapping item -> weight, or None for uniform weight 1.0.
    bound : ``"cap"`` (default) or ``"top"``.
    include_semi : whether semi-frequent patterns become feature columns.

    Fitted attributes: ``fs_``, ``sfs_``, ``patterns_``, ``thresholds_``,
    ``candidate_count_``, ``stats_``.
    """

    def __init__(self, min_sup=0.2, mu=1.0, wgt_fct=1.0, weights=None, bound=CAP, include_semi=False):
        self.min_sup = min_sup
        self.mu = mu
        self.wgt_fct = wgt_fct
        self.weights = weights
        self.bound = bound
        self.include_semi = include_semi

    def fit(self, X, y=None):
        db = check_database(X)
        weights = check_weights(self.weights, db.alphabet)
        params = check_params(self.min_sup, self.mu, self.wgt_fct)
        result = fuws(db, weights, params, bound=self.bound)
        self.fs_ = result.fs
        self.sfs_ = result.sfs
        rows = result.fs + (result.sfs if self.include_semi else [])
        self.patterns_ = [r.pattern for r in rows]
        self.thresholds_ = result.thresholds
        self.candidate_count_ = result.candidate_count
        self.stats_ = result.stats
        return self


class IncrementalSequenceMiner(_PatternFeatures, BaseEstimator):
    """Incremental miner: ``fit`` mines the initial database, ``partial_fit`` absorbs one increment.

    ``algorithm`` is ``"uwsinc+"`` (default) or ``"uwsinc"``; ``lwes`` selects the local
    threshold (``"delta"``, ``"cumulative"`` or a number). Raw sequences passed to
    ``partial_fit`` are numbered after the highest id seen so far.
    """

    def __init__(self, min_sup=0.2, mu=0.7, wgt_fct=1.0, gamma=2.0, weights=None,
                 algorithm="uwsinc+", lwes=LWES_DELTA, bound=CAP):
        self.min_sup = min_sup
        self.mu = mu
        self.wgt_fct = wgt_fct
        self.gamma = gamma
        self.weights = weights
        self.algorithm = algorithm
        self.lwes = lwes
        self.bound = bound

    def _step(self):
        if self.algorithm not in ALGORITHMS:
            raise InvalidParamsError(f"unknown algorithm {self.algorithm!r}")
        return ALGORITHMS[self.algorithm]

    def fit(self, X, y=None):
        self._step()
        db = check_database(X)
        weights = check_weights(self.weights, db.alphabet)
        params = check_params(self.min_sup, self.mu, self.wgt_fct, self.gamma)
        self.state_ = initial_mining(db, weights, params, lwes_mode=check_lwes_mode(self.lwes),
                                     bound=self.bound)
        self.reports_ = []
        self._sync()
        return self

    def partial_fit(self, X, y=None):
        if not hasattr(self, "state_"):
            return self.fit(X)
        state = self.state_
        delta = check_database(X, start_id=max(state.seen_ids, default=0) + 1)
        if self.weights is None:
            for item in delta.alphabet:
                state.weights.setdefault(item, 1.0)
        self.reports_.append(self._step()(state, delta))
        self._sync()
        return self

    def _sync(self):
        listing = self.state_.listing()
        self.fs_ = [r for r in listing if r.cls == "FS"]
        self.sfs_ = [r for r in listing if r.cls == "SFS"]
        self.pfs_ = [r for r in listing if r.cls == "PFS"]
        self.thresholds_ = self.state_.thresholds
        self.patterns_ = [r.pattern for r in self.fs_]
