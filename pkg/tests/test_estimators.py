import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import StandardScaler

from uspm.estimators import IncrementalSequenceMiner, WeightedSequenceMiner
from uspm.model import InvalidParamsError


def test_batch_miner_fit_transform(toy):
    db, weights, _ = toy
    miner = WeightedSequenceMiner(min_sup=0.2, mu=0.7, weights=dict(weights), include_semi=True)
    X = miner.fit_transform(db)
    assert X.shape == (6, 5)
    assert list(miner.get_feature_names_out()) == ["(a)", "(b)", "(c)", "(a)(a)", "(a c)"]
    assert X[0, 0] == pytest.approx(0.9)
    assert miner.candidate_count_ == 8
    assert miner.thresholds_.min_wes == pytest.approx(1.0529, abs=1e-4)
    assert [str(r.pattern) for r in miner.sfs_] == ["(a)(a)", "(a c)"]


def test_batch_miner_frequent_columns_only(toy):
    db, weights, _ = toy
    miner = WeightedSequenceMiner(min_sup=0.2, mu=0.7, weights=weights).fit(db)
    assert miner.transform(db).shape == (6, 3)


def test_params_round_trip_and_clone():
    miner = WeightedSequenceMiner(min_sup=0.3, bound="top")
    assert miner.get_params()["bound"] == "top"
    twin = clone(miner.set_params(mu=0.5))
    assert twin.get_params()["mu"] == 0.5


def test_uniform_weights_and_raw_lists():
    rows = [[{"a": 1.0}, {"b": 0.9}], [{"a": 0.8}], [{"b": 0.7, "a": 0.6}]]
    miner = WeightedSequenceMiner(min_sup=0.5).fit(rows)
    assert [str(p) for p in miner.patterns_] == ["(a)", "(b)"]
    pipe = make_pipeline(WeightedSequenceMiner(min_sup=0.5), StandardScaler())
    assert pipe.fit_transform(rows).shape == (3, 2)


def test_not_fitted():
    with pytest.raises(NotFittedError):
        WeightedSequenceMiner().transform([[{"a": 1.0}]])
    with pytest.raises(NotFittedError):
        IncrementalSequenceMiner().get_feature_names_out()


def test_incremental_miner_replays_toy(toy):
    db, weights, deltas = toy
    miner = IncrementalSequenceMiner(min_sup=0.2, mu=0.7, weights=weights).fit(db)
    for d in deltas:
        miner.partial_fit(d)
    assert [str(r.pattern) for r in miner.fs_] == ["(a)", "(a)(a)", "(c)", "(c)(a)", "(d)", "(f)"]
    assert len(miner.pfs_) == 6 and len(miner.reports_) == 2
    assert miner.transform(db).shape == (6, 6)


def test_incremental_partial_fit_renumbers_raw_rows():
    miner = IncrementalSequenceMiner(min_sup=0.5, mu=0.5, gamma=1.0)
    miner.partial_fit([[{"a": 1.0}], [{"a": 0.9}]])
    miner.partial_fit([[{"a": 0.9}, {"b": 1.0}], [{"b": 0.8}]])
    assert miner.state_.seen_ids == {1, 2, 3, 4}
    assert "(a)" in list(miner.get_feature_names_out())
    assert isinstance(miner.transform([[{"a": 0.2}]]), np.ndarray)


def test_incremental_bad_algorithm(toy):
    db, weights, _ = toy
    with pytest.raises(InvalidParamsError):
        IncrementalSequenceMiner(weights=weights, algorithm="other").fit(db)
