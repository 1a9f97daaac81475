"""Exact pattern measures and the upper bounds used for pruning.

Exact: ``max_pr_s``, ``exp_sup``, ``s_weight``, ``wes``.
Bounds: ``exp_sup_cap``, ``wgt_cap``, ``w_exp_sup_cap`` and the looser
``exp_support_top`` kept for comparison runs.

The bound functions take a projection handle (see :class:`uspm.miner.Projection`):
anything with ``extension_stats()``, ``extend(item, kind)`` and ``max_weight(weights)``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .model import Pattern, UncertainDatabase, UncertainSequence, WeightTable

S_EXT = "S"
I_EXT = "I"


def max_pr_s(pattern: Pattern, sequence: UncertainSequence) -> float:
    """Highest probability of any embedding of ``pattern`` in one sequence (0 if none)."""
    pattern = Pattern(pattern)
    events = sequence.events
    n = len(events)
    # best[k]: best embedding of the itemsets seen so far ending at event k-1; best[0] is a sentinel.
    best = [1.0] + [0.0] * n
    for itemset in pattern:
        new = [0.0] * (n + 1)
        running = 0.0
        for k in range(1, n + 1):
            running = max(running, best[k - 1])
            if running == 0.0:
                continue
            event = events[k - 1]
            prob = running
            for item in itemset:
                p = event.get(item)
                if p is None:
                    prob = 0.0
                    break
                prob *= p
            new[k] = prob
        best = new
    return max(best[1:], default=0.0) if pattern else 1.0


def exp_sup(pattern: Pattern, db: UncertainDatabase) -> float:
    pattern = Pattern(pattern)
    return sum(max_pr_s(pattern, s) for s in db)


def s_weight(pattern: Pattern, weights: WeightTable) -> float:
    """Mean item weight, items counted with multiplicity."""
    items = Pattern(pattern).items()
    return sum(weights[i] for i in items) / len(items)


def wes(pattern: Pattern, db: UncertainDatabase, weights: WeightTable) -> float:
    pattern = Pattern(pattern)
    return exp_sup(pattern, db) * s_weight(pattern, weights)


@dataclass(frozen=True)
class BoundContext:
    """Running per-prefix state carried through pattern growth.

    ``prefix_max_pr`` bounds the probability of any embedding of the prefix;
    ``base_max_pr`` is the same bound for the prefix without its last itemset.
    """

    prefix_max_pr: float = 1.0
    prefix_weight_sum: float = 0.0
    prefix_len: int = 0
    prefix_mxw: float = 0.0
    base_max_pr: float = 1.0

    def extend(self, kind: str, ext_max_pr: float, item_weight: float) -> "BoundContext":
        """Context of ``prefix + item``.

        ``ext_max_pr`` is the extension's max over the projection: the item's own
        probability for an s-extension, the joint last-itemset probability for an i-extension.
        """
        base = self.prefix_max_pr if kind == S_EXT else self.base_max_pr
        return BoundContext(
            prefix_max_pr=base * ext_max_pr,
            prefix_weight_sum=self.prefix_weight_sum + item_weight,
            prefix_len=self.prefix_len + 1,
            prefix_mxw=max(self.prefix_mxw, item_weight),
            base_max_pr=base,
        )

    @property
    def mean_weight(self) -> float:
        return self.prefix_weight_sum / self.prefix_len if self.prefix_len else 0.0


def exp_sup_cap(ctx: BoundContext, ext_item: str, projected, kind: str = S_EXT) -> float:
    """Upper bound on the expected support of ``prefix + ext_item`` and its extensions.

    s-extension: prefix bound times the summed per-sequence max of the item.
    i-extension: bound of the prefix without its last itemset times the summed
    per-sequence max of the joint probability of the grown last itemset.
    """
    stat = projected.extension_stats().get((kind, ext_item))
    if stat is None:
        return 0.0
    base = ctx.prefix_max_pr if kind == S_EXT else ctx.base_max_pr
    return base * stat.total


def wgt_cap(ctx: BoundContext, projected, weights: WeightTable) -> float:
    """Upper bound on the mean weight of the candidate described by ``ctx`` and any extension of it.

    An extension appends at most ``R`` items, each weighing at most ``M`` (both read
    off the candidate's projection), so its mean weight cannot exceed
    ``max(mean, (sum + R*M) / (len + R))``. Never larger than the max of the
    candidate's heaviest item and the heaviest projected item.
    """
    mean = ctx.mean_weight
    heaviest, room = projected.weight_profile(weights)
    if room == 0 or heaviest <= mean:
        return mean
    return (ctx.prefix_weight_sum + room * heaviest) / (ctx.prefix_len + room)


def w_exp_sup_cap(ctx: BoundContext, ext_item: str, projected, weights: WeightTable,
                  kind: str = S_EXT) -> float:
    """Bound on the weighted expected support of ``prefix + ext_item`` and all its extensions.

    ``ctx`` and ``projected`` describe the prefix.
    """
    stat = projected.extension_stats().get((kind, ext_item))
    if stat is None:
        return 0.0
    child = projected.extend(ext_item, kind)
    child_ctx = ctx.extend(kind, stat.max_pr, weights[ext_item])
    return exp_sup_cap(ctx, ext_item, projected, kind) * wgt_cap(child_ctx, child, weights)


def exp_support_top(prefix_max_pr: float, item_max_pr: float, item_support: int) -> float:
    """Looser comparison bound: prefix bound x item's max probability x its support count."""
    return prefix_max_pr * item_max_pr * item_support
