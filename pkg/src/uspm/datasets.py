"""Bundled toy dataset: a 6-sequence initial database, its weights and two increments."""
from __future__ import annotations

from importlib import resources

from .io import parse_usf, parse_weights

TOY_FILES = {
    "initial": "toy_initial.usf",
    "delta1": "toy_delta1.usf",
    "delta2": "toy_delta2.usf",
    "weights": "toy_weights.txt",
}


def data_path(name: str):
    """Filesystem path of a bundled data file (``initial``, ``delta1``, ``delta2``, ``weights``)."""
    return resources.files("uspm") / "data" / TOY_FILES.get(name, name)


def load_toy():
    """Return ``(initial_db, weights, [delta1, delta2])``."""
    initial = parse_usf(data_path("initial").read_text())
    deltas = [parse_usf(data_path(k).read_text()) for k in ("delta1", "delta2")]
    weights = parse_weights(data_path("weights").read_text())
    return initial, weights, deltas
