"""Input coercion shared by the estimators and the CLI."""
from __future__ import annotations

from collections.abc import Mapping

from .model import (
    Event,
    MalformedDataError,
    MiningParams,
    UncertainDatabase,
    UncertainSequence,
    WeightTable,
)


def check_database(X, start_id: int = 1) -> UncertainDatabase:
    """Coerce ``X`` into an :class:`UncertainDatabase`.

    Accepted: a database (returned as is), or an iterable of sequences where each
    sequence is an :class:`UncertainSequence` or a list of events (mappings or
    ``(item, prob)`` pairs). Raw sequences are numbered from ``start_id``.
    """
    if isinstance(X, UncertainDatabase):
        return X
    if isinstance(X, (str, bytes)) or X is None:
        raise MalformedDataError("expected a database or an iterable of sequences")
    sequences = []
    next_id = start_id
    for row in X:
        if isinstance(row, UncertainSequence):
            sequences.append(row)
            continue
        if isinstance(row, (str, bytes, Mapping)):
            raise MalformedDataError(f"sequence must be a list of events, got {type(row).__name__}")
        sequences.append(UncertainSequence(next_id, tuple(Event(e) for e in row)))
        next_id += 1
    return UncertainDatabase(tuple(sequences))


def check_weights(weights, alphabet=()) -> WeightTable:
    """Coerce ``weights`` into a :class:`WeightTable` covering ``alphabet``.

    ``None`` means every item weighs 1.0.
    """
    if weights is None:
        table = WeightTable({item: 1.0 for item in alphabet})
    elif isinstance(weights, WeightTable):
        table = weights
    else:
        table = WeightTable(weights)
    table.require(alphabet)
    return table


def check_params(min_sup, mu=1.0, wgt_fct=1.0, gamma=2.0) -> MiningParams:
    return MiningParams(min_sup=min_sup, mu=mu, wgt_fct=wgt_fct, gamma=gamma)
