import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import databases, patterns, weight_tables
from uspm.measures import wes
from uspm.model import MissingWeightError, Pattern, UncertainDatabase, WeightTable
from uspm.trie import USeqTrie

P = Pattern.parse


def test_insert_enumerate_round_trip():
    t = USeqTrie()
    t.insert(P("(a)(b c)"), 0.5)
    assert t.enumerate() == [(P("(a)(b c)"), 0.5)]
    assert t.node_count == 3


def test_insert_overwrites_and_counts():
    t = USeqTrie()
    t.insert(P("(a)"), 1.0)
    t.insert(P("(a)(b)"), 2.0)
    t.insert(P("(a)"), 3.0)
    assert len(t) == 2 and t.node_count == 2
    assert t.get(P("(a)")) == 3.0


def test_remove_semantics():
    t = USeqTrie()
    t.insert(P("(a)"))
    t.remove(P("(a)"))
    assert t.enumerate() == [] and t.node_count == 0
    t.insert(P("(a)"))
    t.insert(P("(a)(b)"))
    t.remove(P("(a)"))
    assert t.patterns() == [P("(a)(b)")]
    assert P("(a)") not in t
    t.remove(P("(z)"))
    t.remove(P("(a)"))
    assert t.patterns() == [P("(a)(b)")]
    t.remove(P("(a)(b)"))
    assert t.node_count == 0


def test_set_and_get():
    t = USeqTrie()
    t.insert(P("(a b)"))
    t.set(P("(a b)"), 4.0)
    assert t.get(P("(a b)")) == 4.0
    assert t.get(P("(a)"), "none") == "none"
    with pytest.raises(KeyError):
        t.set(P("(a)"), 1.0)


def test_enumeration_order_s_before_i():
    t = USeqTrie()
    for text in ("(b)", "(a b)", "(a)(b)", "(a)", "(a)(a)"):
        t.insert(P(text))
    assert [str(p) for p in t.patterns()] == ["(a)", "(a)(a)", "(a)(b)", "(a b)", "(b)"]


def test_reset_wes():
    t = USeqTrie()
    t.insert(P("(a)"), 2.0)
    t.reset_wes()
    assert t.get(P("(a)")) == 0.0


def test_sup_calc_figure_scenario():
    weights = WeightTable({"a": 0.8, "b": 1.0, "c": 0.9, "d": 0.9})
    seq = UncertainDatabase.from_lists([[{"a": 0.8}, {"b": 0.7}, {"a": 0.9, "b": 0.6}, {"c": 0.3}, {"d": 0.9}]])
    t = USeqTrie()
    for text in ("(a)", "(b)", "(a b)", "(c)", "(b)(c)", "(d)", "(c d)", "(c)(d)"):
        t.insert(P(text))
    t.sup_calc(seq, weights)
    assert t.get(P("(b)(c)")) == pytest.approx(0.1995)
    assert t.get(P("(c d)")) == 0.0
    for p, v in t.enumerate():
        assert v == pytest.approx(wes(p, seq, weights), abs=1e-12)


def test_sup_calc_on_first_increment(toy):
    _, weights, (d1, _) = toy
    t = USeqTrie()
    t.insert(P("(a)(a)"), 1.032)
    t.insert(P("(a c)"), 1.02)
    t.sup_calc(d1, weights)
    assert t.get(P("(a)(a)")) == pytest.approx(1.90, abs=0.01)
    assert t.get(P("(a c)")) == pytest.approx(1.99, abs=0.01)


def test_sup_calc_empty_chunk_and_missing_weight():
    t = USeqTrie()
    t.insert(P("(q)"), 1.5)
    t.sup_calc([], WeightTable({"q": 1.0}))
    assert t.get(P("(q)")) == 1.5
    with pytest.raises(MissingWeightError):
        t.sup_calc(UncertainDatabase.from_lists([[{"q": 0.5}]]), WeightTable({"a": 1.0}))
    assert t.get(P("(q)")) == 1.5


def test_dump_format():
    t = USeqTrie()
    t.insert(P("(a b)"), 0.25)
    assert t.dump() == "S a 0.000000 ~\n  I b 0.250000\n"


@settings(max_examples=60, deadline=None)
@given(databases, weight_tables, st.lists(patterns, min_size=1, max_size=8), st.integers(0, 5))
def test_sup_calc_matches_wes_and_is_additive(db, weights, pats, cut):
    whole, split = USeqTrie(), USeqTrie()
    for p in pats:
        whole.insert(p)
        split.insert(p)
    whole.sup_calc(db, weights)
    split.sup_calc(db.sequences[:cut], weights)
    split.sup_calc(db.sequences[cut:], weights)
    for p in set(pats):
        assert whole.get(p) == pytest.approx(wes(p, db, weights), abs=1e-9)
        assert split.get(p) == whole.get(p)
