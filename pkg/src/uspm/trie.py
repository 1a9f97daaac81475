"""Pattern trie with per-node weighted expected support and the batch support update.

Edges are labelled ``(kind, item)``. An ``S`` edge opens a new itemset, an ``I`` edge
adds the item to the current itemset, so every root-to-node path spells one
canonical pattern.
"""
from __future__ import annotations

from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from .measures import I_EXT, S_EXT
from .model import MalformedPatternError, Pattern, UncertainSequence, WeightTable


class TrieNode:
    __slots__ = ("kind", "item", "children", "wes", "present")

    def __init__(self, kind=None, item=None):
        self.kind = kind
        self.item = item
        self.children: Dict[Tuple[str, str], "TrieNode"] = {}
        self.wes = 0.0
        self.present = False

    def traversal_order(self) -> List["TrieNode"]:
        # I-edges first, then S-edges, each in item order.
        return [self.children[k] for k in sorted(self.children, key=lambda k: (k[0] != I_EXT, k[1]))]

    def __repr__(self):
        return f"TrieNode({self.kind}, {self.item!r}, wes={self.wes:.6f}, present={self.present})"


def pattern_edges(pattern: Pattern) -> List[Tuple[str, str]]:
    edges = []
    for itemset in Pattern(pattern):
        edges.append((S_EXT, itemset[0]))
        edges.extend((I_EXT, item) for item in itemset[1:])
    return edges


class USeqTrie:
    def __init__(self):
        self.root = TrieNode()
        self.node_count = 0

    def _find(self, pattern) -> Optional[TrieNode]:
        node = self.root
        for edge in pattern_edges(pattern):
            node = node.children.get(edge)
            if node is None:
                return None
        return node

    def insert(self, pattern, wes: float = 0.0) -> TrieNode:
        pattern = Pattern(pattern)
        if not pattern:
            raise MalformedPatternError("cannot store the empty pattern")
        node = self.root
        for edge in pattern_edges(pattern):
            child = node.children.get(edge)
            if child is None:
                child = node.children[edge] = TrieNode(*edge)
                self.node_count += 1
            node = child
        node.present = True
        node.wes = float(wes)
        return node

    def remove(self, pattern) -> None:
        """Drop ``pattern``; childless non-stored nodes left behind are pruned. Absent patterns are ignored."""
        path = [self.root]
        for edge in pattern_edges(pattern):
            nxt = path[-1].children.get(edge)
            if nxt is None:
                return
            path.append(nxt)
        target = path[-1]
        if not target.present:
            return
        target.present = False
        target.wes = 0.0
        for depth in range(len(path) - 1, 0, -1):
            node = path[depth]
            if node.present or node.children:
                break
            del path[depth - 1].children[(node.kind, node.item)]
            self.node_count -= 1

    def get(self, pattern, default=None) -> Optional[float]:
        node = self._find(pattern)
        if node is None or not node.present:
            return default
        return node.wes

    def set(self, pattern, wes: float) -> None:
        node = self._find(pattern)
        if node is None or not node.present:
            raise KeyError(pattern)
        node.wes = float(wes)

    def __contains__(self, pattern) -> bool:
        node = self._find(pattern)
        return node is not None and node.present

    def __len__(self):
        return sum(1 for _ in self._walk())

    def _walk(self) -> Iterator[Tuple[Pattern, TrieNode]]:
        # Enumeration order: items in item order, S before I at equal item.
        def rec(node, itemsets):
            for key in sorted(node.children, key=lambda k: (k[1], k[0] != S_EXT)):
                child = node.children[key]
                if key[0] == S_EXT:
                    nxt = itemsets + ((child.item,),)
                else:
                    nxt = itemsets[:-1] + (itemsets[-1] + (child.item,),)
                if child.present:
                    yield Pattern(nxt), child
                yield from rec(child, nxt)

        yield from rec(self.root, ())

    def enumerate(self) -> List[Tuple[Pattern, float]]:
        return [(p, node.wes) for p, node in self._walk()]

    def patterns(self) -> List[Pattern]:
        return [p for p, _ in self._walk()]

    def reset_wes(self) -> None:
        stack = [self.root]
        while stack:
            node = stack.pop()
            node.wes = 0.0
            stack.extend(node.children.values())

    def sup_calc(self, chunk: Iterable[UncertainSequence], weights: WeightTable) -> None:
        """Add every sequence's weighted expected support to every stored pattern.

        One depth-first pass per sequence; each node derives its embedding array
        from its parent's in O(events).
        """
        chunk = list(chunk)
        weights.require(self._edge_items())
        roots = self.root.traversal_order()
        for seq in chunk:
            events = seq.events
            n = len(events)
            base = [1.0] * (n + 1)
            for child in roots:
                self._traverse(child, events, n, base, (), 0.0, 0, weights)

    def _edge_items(self):
        items = set()
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.item is not None:
                items.add(node.item)
            stack.extend(node.children.values())
        return items

    def _traverse(self, node, events, n, parent, itemset, wgt_sum, itm_cnt, weights):
        item = node.item
        cur = [0.0] * (n + 1)
        if node.kind == S_EXT:
            itemset = (item,)
            running = parent[0]
            for k in range(1, n + 1):
                p = events[k - 1].get(item)
                if p is not None:
                    cur[k] = running * p
                running = max(running, parent[k])
        else:
            itemset = itemset + (item,)
            for k in range(1, n + 1):
                if parent[k] == 0.0:
                    continue
                event = events[k - 1]
                if all(x in event for x in itemset):
                    cur[k] = parent[k] * event[item]
        wgt_sum += weights[item]
        itm_cnt += 1
        best = max(cur)
        if node.present:
            node.wes += best * wgt_sum / itm_cnt
        if best == 0.0:
            # Nothing below can embed in this sequence.
            return
        for child in node.traversal_order():
            self._traverse(child, events, n, cur, itemset, wgt_sum, itm_cnt, weights)

    def dump(self) -> str:
        """Indented text tree, one node per line: kind, item, wes."""
        lines = []

        def rec(node, depth):
            for child in node.traversal_order():
                mark = "" if child.present else " ~"
                lines.append(f"{'  ' * depth}{child.kind} {child.item} {child.wes:.6f}{mark}")
                rec(child, depth + 1)

        rec(self.root, 0)
        return "\n".join(lines) + ("\n" if lines else "")
