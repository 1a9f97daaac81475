"""File formats and the synthetic uncertainty/weight generator.

USF (uncertain sequence format): one sequence per line, optional ``id|`` prefix,
events written as ``(item:prob,item:prob)`` back to back. ``#`` starts a comment
line, blank lines are skipped.

Weight files: ``item weight`` per line, ``#`` comments.

SPMF: integers separated by spaces, ``-1`` closes an itemset, ``-2`` closes a sequence.
"""
from __future__ import annotations

import io as _io
import json
import math
import re
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, TextIO, Tuple, Union

from .model import (
    CLASS_RANK,
    ClassifiedPattern,
    Event,
    MalformedDataError,
    Pattern,
    UncertainDatabase,
    UncertainSequence,
    USPMError,
    WeightTable,
    sorted_listing,
)


class ParseError(USPMError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


_EVENT_RE = re.compile(r"\(([^()]*)\)")
_EVENTS_RE = re.compile(r"(\([^()]*\)\s*)+")


def _lines(source) -> Iterable[Tuple[int, str]]:
    if isinstance(source, str):
        source = _io.StringIO(source)
    for n, line in enumerate(source, 1):
        yield n, line.rstrip("\r\n")


def parse_usf(source: Union[str, TextIO], start_id: int = 1) -> UncertainDatabase:
    """Parse USF text (a string or a text stream)."""
    sequences = []
    seen = set()
    next_id = start_id
    for lineno, raw in _lines(source):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        sid = next_id
        if "|" in line:
            head, line = line.split("|", 1)
            try:
                sid = int(head.strip())
            except ValueError:
                raise ParseError(f"bad sequence id {head.strip()!r}", lineno) from None
            line = line.strip()
        if not _EVENTS_RE.fullmatch(line):
            raise ParseError(f"malformed event list {line!r}", lineno)
        events = []
        for body in _EVENT_RE.findall(line):
            pairs = []
            for entry in body.split(","):
                if ":" not in entry:
                    raise ParseError(f"malformed event entry {entry.strip()!r}", lineno)
                item, prob = (x.strip() for x in entry.split(":", 1))
                try:
                    pairs.append((item, float(prob)))
                except ValueError:
                    raise ParseError(f"bad probability {prob!r}", lineno) from None
            try:
                events.append(Event(pairs))
            except MalformedDataError as exc:
                raise ParseError(str(exc), lineno) from None
        if sid in seen:
            raise ParseError(f"duplicate sequence id {sid}", lineno)
        try:
            sequences.append(UncertainSequence(sid, tuple(events)))
        except MalformedDataError as exc:
            raise ParseError(str(exc), lineno) from None
        seen.add(sid)
        next_id = sid + 1
    return UncertainDatabase(tuple(sequences))


def format_sequence(seq: UncertainSequence) -> str:
    events = "".join("(" + ",".join(f"{i}:{p!r}" for i, p in e.items()) + ")" for e in seq.events)
    return f"{seq.sid}|{events}"


def write_usf(db: UncertainDatabase) -> str:
    return "".join(format_sequence(s) + "\n" for s in db)


def parse_weights(source: Union[str, TextIO]) -> WeightTable:
    weights = {}
    for lineno, raw in _lines(source):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'item weight', got {line!r}", lineno)
        item, value = parts
        if item in weights:
            raise ParseError(f"duplicate weight for {item!r}", lineno)
        try:
            weights[item] = float(value)
        except ValueError:
            raise ParseError(f"bad weight {value!r}", lineno) from None
        try:
            WeightTable({item: weights[item]})
        except MalformedDataError as exc:
            raise ParseError(str(exc), lineno) from None
    return WeightTable(weights)


def write_weights(weights: WeightTable) -> str:
    return "".join(f"{item} {w!r}\n" for item, w in sorted(weights.items()))


def parse_spmf(source: Union[str, TextIO]) -> List[List[List[str]]]:
    """Parse SPMF sequences into lists of itemsets of item strings (no probabilities)."""
    sequences = []
    current: List[List[str]] = []
    itemset: List[str] = []
    lineno = 0
    for lineno, raw in _lines(source):
        line = raw.strip()
        if not line or line[0] in "#%@":
            continue
        for tok in line.split():
            if tok == "-1":
                if not itemset:
                    raise ParseError("empty itemset", lineno)
                current.append(sorted(set(itemset)))
                itemset = []
            elif tok == "-2":
                if itemset:
                    raise ParseError("itemset not closed with -1 before -2", lineno)
                if not current:
                    raise ParseError("empty sequence", lineno)
                sequences.append(current)
                current = []
            else:
                try:
                    int(tok)
                except ValueError:
                    raise ParseError(f"non-integer item {tok!r}", lineno) from None
                itemset.append(tok)
    if current or itemset:
        raise ParseError("last sequence is missing its terminating -2", lineno)
    return sequences


class XorShift64Star:
    """xorshift64* generator: 64-bit state, uniform doubles from the top 53 bits.

    Reproduces the same stream in any language with unsigned 64-bit arithmetic.
    """

    MASK = (1 << 64) - 1
    MULT = 0x2545F4914F6CDD1D

    def __init__(self, seed: int):
        seed &= self.MASK
        # Zero is a fixed point of xorshift.
        self.state = seed if seed else 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & self.MASK
        x ^= x >> 27
        self.state = x
        return (x * self.MULT) & self.MASK

    def random(self) -> float:
        """Uniform in [0, 1)."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] (modulo reduction)."""
        return lo + self.next_u64() % (hi - lo + 1)

    def normal(self, mean: float, sd: float) -> float:
        # Box-Muller, cosine branch only: two uniforms per draw.
        u1 = 1.0 - self.random()
        u2 = self.random()
        z = math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)
        return mean + sd * z


@dataclass(frozen=True)
class GenConfig:
    prob_mean: float = 0.5
    prob_sd: float = 0.25
    wgt_mean: float = 0.5
    wgt_sd: float = 0.125
    seed: int = 0
    prob_range: Tuple[float, float] = (0.01, 1.0)
    wgt_range: Tuple[float, float] = (0.05, 1.0)

    def __post_init__(self):
        if self.prob_sd < 0 or self.wgt_sd < 0:
            raise ValueError("standard deviations must be non-negative")
        for lo, hi in (self.prob_range, self.wgt_range):
            if not 0 < lo <= hi <= 1:
                raise ValueError(f"clamp range ({lo}, {hi}) must lie within (0, 1]")
        if not 0 <= self.seed < (1 << 64):
            raise ValueError("seed must be an unsigned 64-bit integer")


def _clamp(x, lo, hi):
    return min(max(x, lo), hi)


def generate(precise: Sequence[Sequence[Sequence[str]]], cfg: GenConfig = GenConfig(),
             start_id: int = 1) -> Tuple[UncertainDatabase, WeightTable]:
    """Attach normal-distributed probabilities and weights to precise sequences.

    Draw order: probabilities sequence by sequence, event by event, items in item
    order; then one weight per distinct item in item order. Same seed, same output.
    """
    rng = XorShift64Star(cfg.seed)
    plo, phi = cfg.prob_range
    sequences = []
    alphabet = set()
    for n, seq in enumerate(precise):
        events = []
        for itemset in seq:
            items = sorted(set(itemset))
            alphabet.update(items)
            events.append(Event((i, _clamp(rng.normal(cfg.prob_mean, cfg.prob_sd), plo, phi))
                                for i in items))
        sequences.append(UncertainSequence(start_id + n, tuple(events)))
    wlo, whi = cfg.wgt_range
    weights = WeightTable((i, _clamp(rng.normal(cfg.wgt_mean, cfg.wgt_sd), wlo, whi))
                          for i in sorted(alphabet))
    return UncertainDatabase(tuple(sequences)), weights


def synthetic_alphabet(size: int) -> List[str]:
    if size <= 26:
        return [chr(ord("a") + k) for k in range(size)]
    width = len(str(size - 1))
    return [f"i{k:0{width}d}" for k in range(size)]


def synthesize(n_sequences: int, max_events: int, alphabet_size: int, seed: int = 0,
               max_itemset: int = 3) -> List[List[List[str]]]:
    """Random precise sequences: 1..max_events events of 1..max_itemset distinct items each."""
    if n_sequences < 0 or max_events < 1 or alphabet_size < 1:
        raise ValueError("need n_sequences >= 0, max_events >= 1, alphabet_size >= 1")
    # Offset so structure and value streams differ for the same user seed.
    rng = XorShift64Star(seed ^ 0xD1B54A32D192ED03)
    alphabet = synthetic_alphabet(alphabet_size)
    out = []
    for _ in range(n_sequences):
        seq = []
        for _ in range(rng.randint(1, max_events)):
            k = rng.randint(1, min(max_itemset, alphabet_size))
            pool = list(alphabet)
            chosen = []
            for _ in range(k):
                chosen.append(pool.pop(rng.randint(0, len(pool) - 1)))
            seq.append(sorted(chosen))
        out.append(seq)
    return out


def split_increments(db: UncertainDatabase, parts: Sequence[Union[int, float]]
                     ) -> Tuple[UncertainDatabase, List[UncertainDatabase]]:
    """Contiguous split into an initial part and increments.

    ``parts`` holds sequence counts (ints) or fractions of the database (floats).
    Fractions are floored; any sequences left over join the last part.
    """
    if not parts:
        raise ValueError("need at least one part")
    n = len(db)
    sizes = []
    for p in parts:
        if isinstance(p, float):
            if not 0 <= p <= 1:
                raise ValueError(f"fraction {p} outside [0, 1]")
            sizes.append(math.floor(p * n + 1e-9))
        else:
            if p < 0:
                raise ValueError(f"negative part size {p}")
            sizes.append(int(p))
    if sum(sizes) > n:
        raise ValueError(f"parts sum to {sum(sizes)} sequences but the database has {n}")
    sizes[-1] += n - sum(sizes)
    chunks, start = [], 0
    for size in sizes:
        chunks.append(UncertainDatabase(db.sequences[start:start + size]))
        start += size
    return chunks[0], chunks[1:]


def parse_split_spec(text: str) -> List[Union[int, float]]:
    """``"6,4,3"`` -> counts; ``"50%,25%,25%"`` or ``"0.5,0.5"`` -> fractions."""
    out: List[Union[int, float]] = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok.endswith("%"):
            out.append(float(tok[:-1]) / 100.0)
        elif "." in tok:
            out.append(float(tok))
        else:
            out.append(int(tok))
    return out


def write_patterns(rows: Iterable[ClassifiedPattern], fmt: str = "tsv") -> str:
    rows = sorted_listing(rows)
    if fmt == "tsv":
        return "".join(f"{r.pattern}\t{r.wes:.6f}\t{r.cls}\n" for r in rows)
    if fmt == "jsonl":
        return "".join(json.dumps({"pattern": [list(s) for s in r.pattern],
                                   "wes": round(r.wes, 6), "class": r.cls}) + "\n" for r in rows)
    raise ValueError(f"unknown output format {fmt!r}")


def parse_patterns(source: Union[str, TextIO], fmt: str = "tsv") -> List[ClassifiedPattern]:
    rows = []
    for lineno, raw in _lines(source):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            if fmt == "tsv":
                pat, value, cls = line.split("\t")
                rows.append(ClassifiedPattern(Pattern.parse(pat), float(value), cls))
            elif fmt == "jsonl":
                obj = json.loads(line)
                if "pattern" not in obj:
                    continue
                rows.append(ClassifiedPattern(Pattern(obj["pattern"]), float(obj["wes"]), obj["class"]))
            else:
                raise ValueError(f"unknown format {fmt!r}")
        except (ValueError, KeyError) as exc:
            raise ParseError(str(exc), lineno) from None
        if rows[-1].cls not in CLASS_RANK:
            raise ParseError(f"unknown class {rows[-1].cls!r}", lineno)
    return rows
