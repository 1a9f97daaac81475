"""Core domain types for uncertain sequence databases.

Items are plain strings; their natural (lexicographic) order is the item order
used everywhere a canonical ordering is needed.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

ITEM_RE = re.compile(r"^[A-Za-z0-9_]+$")

# Absolute slack for "value >= threshold" comparisons.
THRESHOLD_TOL = 1e-9

FS, SFS, PFS, LFS = "FS", "SFS", "PFS", "LFS"
CLASS_RANK = {FS: 0, SFS: 1, PFS: 2, LFS: 3}


class USPMError(Exception):
    """Base class for all package errors."""


class MalformedPatternError(USPMError, ValueError):
    pass


class MalformedDataError(USPMError, ValueError):
    pass


class MissingWeightError(USPMError, KeyError):
    def __init__(self, item):
        super().__init__(item)
        self.item = item

    def __str__(self):
        return f"no weight defined for item {self.item!r}"


class InvalidParamsError(USPMError, ValueError):
    pass


def passes(value: float, threshold: float) -> bool:
    return value >= threshold - THRESHOLD_TOL


def check_item(item) -> str:
    if not isinstance(item, str) or not ITEM_RE.match(item):
        raise MalformedDataError(f"invalid item token {item!r}")
    return item


class Event(dict):
    """An itemset whose items carry existential probabilities in (0, 1].

    Entries iterate in item order.
    """

    def __init__(self, entries=()):
        pairs = list(entries.items()) if isinstance(entries, Mapping) else list(entries)
        seen = set()
        for item, prob in pairs:
            check_item(item)
            if item in seen:
                raise MalformedDataError(f"duplicate item {item!r} in event")
            seen.add(item)
            prob = float(prob)
            if not 0.0 < prob <= 1.0:
                raise MalformedDataError(f"probability {prob} of {item!r} outside (0, 1]")
        super().__init__((item, float(prob)) for item, prob in sorted(pairs))

    def __repr__(self):
        inner = ",".join(f"{i}:{p:g}" for i, p in self.items())
        return f"({inner})"


@dataclass(frozen=True)
class UncertainSequence:
    sid: int
    events: Tuple[Event, ...]

    def __post_init__(self):
        events = tuple(e if isinstance(e, Event) else Event(e) for e in self.events)
        if not events:
            raise MalformedDataError(f"sequence {self.sid} has no events")
        if any(len(e) == 0 for e in events):
            raise MalformedDataError(f"sequence {self.sid} has an empty event")
        if int(self.sid) < 1:
            raise MalformedDataError(f"sequence id must be >= 1, got {self.sid}")
        object.__setattr__(self, "events", events)

    def __len__(self):
        return len(self.events)

    def __iter__(self) -> Iterator[Event]:
        return iter(self.events)

    def items(self):
        return {item for e in self.events for item in e}


@dataclass(frozen=True)
class UncertainDatabase:
    sequences: Tuple[UncertainSequence, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "sequences", tuple(self.sequences))

    @classmethod
    def from_lists(cls, rows, start_id=1) -> "UncertainDatabase":
        """Build a database from nested python data.

        Each row is a list of events; an event is a mapping item -> probability
        or an iterable of ``(item, probability)`` pairs.
        """
        return cls(tuple(UncertainSequence(start_id + n, tuple(Event(e) for e in row))
                         for n, row in enumerate(rows)))

    @property
    def alphabet(self) -> frozenset:
        return frozenset(item for s in self.sequences for e in s.events for item in e)

    def __len__(self):
        return len(self.sequences)

    def __iter__(self) -> Iterator[UncertainSequence]:
        return iter(self.sequences)

    def __add__(self, other: "UncertainDatabase") -> "UncertainDatabase":
        return UncertainDatabase(self.sequences + tuple(other.sequences))


class WeightTable(dict):
    """Item -> weight in (0, 1]. Looking up an unknown item raises MissingWeightError."""

    def __init__(self, weights=()):
        super().__init__()
        pairs = weights.items() if isinstance(weights, Mapping) else weights
        for item, w in pairs:
            check_item(item)
            w = float(w)
            if not 0.0 < w <= 1.0:
                raise MalformedDataError(f"weight {w} of {item!r} outside (0, 1]")
            self[item] = w

    def __missing__(self, item):
        raise MissingWeightError(item)

    def require(self, items: Iterable[str]) -> None:
        for item in sorted(items):
            if item not in self:
                raise MissingWeightError(item)

    @property
    def max_weight(self) -> float:
        return max(self.values(), default=0.0)


class Pattern(tuple):
    """A sequence of itemsets in canonical form (items sorted within each itemset).

    ``Pattern([["c", "a"], ["b"]])`` canonicalizes to ``(("a", "c"), ("b",))``.
    Tuple comparison on the canonical form gives the lexicographic pattern order.
    """

    def __new__(cls, itemsets=()):
        if isinstance(itemsets, Pattern):
            return itemsets
        return super().__new__(cls, _canonical_itemsets(itemsets))

    @property
    def length(self) -> int:
        """Total number of items, counted across itemsets."""
        return sum(len(s) for s in self)

    def items(self) -> List[str]:
        return [i for s in self for i in s]

    def prefix(self) -> "Pattern":
        """The pattern with its last item removed."""
        if not self:
            raise MalformedPatternError("empty pattern has no prefix")
        last = self[-1]
        if len(last) == 1:
            return Pattern(self[:-1])
        return Pattern(self[:-1] + (last[:-1],))

    def __str__(self):
        return "".join("(" + " ".join(s) + ")" for s in self)

    def __repr__(self):
        return f"<{self}>"

    @classmethod
    def parse(cls, text: str) -> "Pattern":
        """Inverse of ``str``: ``"(a)(a c)"`` -> Pattern."""
        text = text.strip().strip("<>").strip()
        if not re.fullmatch(r"(\([^()]+\)\s*)+", text):
            raise MalformedPatternError(f"cannot parse pattern {text!r}")
        groups = re.findall(r"\(([^()]*)\)", text)
        return cls([g.replace(",", " ").split() for g in groups])


def _canonical_itemsets(itemsets) -> Tuple[Tuple[str, ...], ...]:
    out = []
    for s in itemsets:
        s = [s] if isinstance(s, str) else list(s)
        if not s:
            raise MalformedPatternError("empty itemset in pattern")
        for item in s:
            if not isinstance(item, str) or not ITEM_RE.match(item):
                raise MalformedPatternError(f"invalid item {item!r}")
        if len(set(s)) != len(s):
            raise MalformedPatternError(f"duplicate item in itemset {s}")
        out.append(tuple(sorted(s)))
    return tuple(out)


def canonicalize(itemsets) -> Pattern:
    return Pattern(itemsets)


@dataclass(frozen=True)
class MiningParams:
    min_sup: float
    mu: float = 1.0
    wgt_fct: float = 1.0
    gamma: float = 2.0

    def __post_init__(self):
        for name in ("min_sup", "mu", "wgt_fct", "gamma"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not v > 0:
                raise InvalidParamsError(f"{name} must be a positive number, got {v!r}")
        if self.min_sup > 1:
            raise InvalidParamsError(f"min_sup must be <= 1, got {self.min_sup}")
        if self.mu > 1:
            raise InvalidParamsError(f"mu must be <= 1, got {self.mu}")


@dataclass(frozen=True)
class Thresholds:
    wam: float
    min_wes: float
    min_wes_semi: float
    lwes: Optional[float] = None

    def classify(self, wes: float) -> Optional[str]:
        if passes(wes, self.min_wes):
            return FS
        if passes(wes, self.min_wes_semi):
            return SFS
        return None


@dataclass(frozen=True)
class ClassifiedPattern:
    pattern: Pattern
    wes: float
    cls: str

    def sort_key(self):
        return (CLASS_RANK[self.cls], self.pattern)


def sorted_listing(rows: Iterable[ClassifiedPattern]) -> List[ClassifiedPattern]:
    return sorted(rows, key=ClassifiedPattern.sort_key)
