import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import databases, patterns, weight_tables
from uspm.datasets import load_toy
from uspm.io import (
    GenConfig,
    ParseError,
    XorShift64Star,
    generate,
    parse_patterns,
    parse_spmf,
    parse_split_spec,
    parse_usf,
    parse_weights,
    split_increments,
    synthesize,
    write_patterns,
    write_usf,
    write_weights,
)
from uspm.model import ClassifiedPattern, Pattern


def test_parse_usf_lines():
    db = parse_usf("(a:0.9,c:0.6)(a:0.7)(b:0.3)(d:0.7)\n")
    seq = db.sequences[0]
    assert seq.sid == 1
    assert [dict(e) for e in seq.events] == [{"a": 0.9, "c": 0.6}, {"a": 0.7}, {"b": 0.3}, {"d": 0.7}]
    db = parse_usf("# comment\n\n8|(c:0.6,a:0.4)(c:0.8)(a:0.6)(f:0.5)(g:0.4,c:0.7)\n9|( b : 0.5 )\n")
    assert [s.sid for s in db] == [8, 9]
    assert list(db.sequences[0].events[0]) == ["a", "c"]
    assert parse_usf("(a:1)\n(b:1)", start_id=5).sequences[1].sid == 6


@pytest.mark.parametrize("text, line", [
    ("(a:1.2)", 1), ("(a:0.5)\n(a:0)", 2), ("(a:0.5,a:0.4)", 1), ("(a0.5)", 1), ("a:0.5", 1),
    ("()", 1), ("x|(a:0.5)", 1), ("1|(a:0.5)\n1|(b:0.5)", 2), ("(a:zz)", 1),
])
def test_parse_usf_errors_carry_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_usf(text)
    assert info.value.line == line


def test_toy_files_load():
    initial, weights, (d1, d2) = load_toy()
    assert (len(initial), len(d1), len(d2)) == (6, 4, 3)
    assert [s.sid for s in d2] == [11, 12, 13]
    assert dict(weights) == {"a": 0.8, "b": 1.0, "c": 0.9, "d": 0.9, "e": 0.7, "f": 0.9, "g": 0.8}


def test_parse_weights_errors():
    assert parse_weights("# w\na 0.8\n\nb 1.0\n") == {"a": 0.8, "b": 1.0}
    for text in ("a 0.5\na 0.6", "a 0", "a 1.5", "a", "a x"):
        with pytest.raises(ParseError):
            parse_weights(text)


def test_parse_spmf():
    assert parse_spmf("1 3 -1 2 -1 -2\n") == [[["1", "3"], ["2"]]]
    assert parse_spmf("") == []
    with pytest.raises(ParseError):
        parse_spmf("1 3 -1 2 -1")


def test_xorshift_first_step():
    rng = XorShift64Star(1)
    out = rng.next_u64()
    assert rng.state == (1 << 25) + 1
    assert out == ((1 << 25) + 1) * 0x2545F4914F6CDD1D % (1 << 64)
    assert 0.0 <= XorShift64Star(5).random() < 1.0
    assert XorShift64Star(0).next_u64() != 0


def test_generate_is_deterministic_and_clamped():
    precise = synthesize(20, 5, 6, seed=3)
    a = generate(precise, GenConfig(seed=9))
    assert a == generate(precise, GenConfig(seed=9))
    assert a != generate(precise, GenConfig(seed=10))
    flat = generate(precise, GenConfig(prob_sd=0.0, wgt_sd=0.0))
    assert {p for s in flat[0] for e in s.events for p in e.values()} == {0.5}
    wide = generate(precise, GenConfig(prob_sd=5.0, wgt_sd=5.0, seed=1))
    probs = [p for s in wide[0] for e in s.events for p in e.values()]
    assert min(probs) == 0.01 and max(probs) == 1.0
    assert all(0.05 <= w <= 1.0 for w in wide[1].values())
    with pytest.raises(ValueError):
        GenConfig(prob_sd=-1)


def test_synthesize_shape():
    precise = synthesize(10, 5, 6, seed=1)
    assert len(precise) == 10
    assert all(1 <= len(s) <= 5 for s in precise)
    assert {i for s in precise for e in s for i in e} <= set("abcdef")
    assert synthesize(1, 1, 30, seed=2)[0][0][0].startswith("i")


def test_split_increments(toy):
    db, _, (d1, d2) = toy
    full = db + d1 + d2
    initial, deltas = split_increments(full, [6, 4, 3])
    assert initial == db and deltas == [d1, d2]
    assert split_increments(full, [1.0]) == (full, [])
    initial, deltas = split_increments(full, [0.5, 0.25, 0.25])
    assert [len(initial)] + [len(d) for d in deltas] == [6, 3, 4]
    with pytest.raises(ValueError):
        split_increments(full, [10, 10])
    assert parse_split_spec("50%,25%,25%") == [0.5, 0.25, 0.25]
    assert parse_split_spec("6,4,3") == [6, 4, 3]


def _rows():
    return [ClassifiedPattern(Pattern.parse("(a)(a c)"), 1.0201234, "SFS"),
            ClassifiedPattern(Pattern.parse("(a)"), 2.24, "FS"),
            ClassifiedPattern(Pattern.parse("(f)(c)"), 0.96, "PFS")]


def test_write_patterns_formats():
    assert write_patterns(_rows(), "tsv") == "(a)\t2.240000\tFS\n(a)(a c)\t1.020123\tSFS\n(f)(c)\t0.960000\tPFS\n"
    first = json.loads(write_patterns(_rows(), "jsonl").splitlines()[0])
    assert first == {"pattern": [["a"]], "wes": 2.24, "class": "FS"}
    with pytest.raises(ValueError):
        write_patterns(_rows(), "xml")


@pytest.mark.parametrize("fmt", ["tsv", "jsonl"])
def test_pattern_listing_round_trip(fmt):
    back = parse_patterns(write_patterns(_rows(), fmt), fmt)
    assert [(r.pattern, r.cls) for r in back] == [(r.pattern, r.cls) for r in sorted(_rows(), key=ClassifiedPattern.sort_key)]
    assert [round(r.wes, 6) for r in back] == [2.24, 1.020123, 0.96]


def test_parse_patterns_errors():
    with pytest.raises(ParseError):
        parse_patterns("(a)\t1.0\tXX\n")
    with pytest.raises(ParseError):
        parse_patterns("(a) 1.0 FS\n")


@given(databases)
def test_usf_round_trip(db):
    assert parse_usf(write_usf(db)) == db


@given(weight_tables)
def test_weights_round_trip(w):
    assert parse_weights(write_weights(w)) == w


@settings(max_examples=50)
@given(st.lists(st.tuples(patterns, st.floats(0, 100, allow_nan=False), st.sampled_from(["FS", "SFS", "PFS", "LFS"])),
                max_size=6, unique_by=lambda t: (t[0], t[2])))
def test_listing_round_trip_property(rows):
    rows = [ClassifiedPattern(p, v, c) for p, v, c in rows]
    for fmt in ("tsv", "jsonl"):
        text = write_patterns(rows, fmt)
        assert write_patterns(parse_patterns(text, fmt), fmt) == text
