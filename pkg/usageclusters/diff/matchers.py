"""Two-phase matching of the nodes of two syntax trees.

The top-down phase maps the largest isomorphic subtrees, tallest first. The
bottom-up phase then maps the containers (method declarations, blocks...)
whose descendants have been mostly mapped to each other.

.. code-block:: python

    result = diff(tree1, tree2, MatcherConfig(min_height=2, dice_threshold=0.5))
    result.shared, result.unmatched1, result.unmatched2

"""
# Copyright (C) 2025 the usageclusters developers
# Distributed under the GNU General Public License, version 3 or later (GPL-3.0-or-later)

import heapq
import logging
from collections import Counter, defaultdict
from itertools import count
from typing import Optional, Union

from usageclusters.diff.mappings import DiffResult, MatcherConfig, NodeMapping
from usageclusters.trees.metrics import compute_metrics, isomorphic
from usageclusters.trees.nodes import SyntaxNode, SyntaxTree

LOG = logging.getLogger(__name__)


class _IndexedTree:
    """Preorder positions, parents and sizes of the nodes of a tree."""

    def __init__(self, tree: Union[SyntaxTree, SyntaxNode]):
        root = tree.root if isinstance(tree, SyntaxTree) else tree
        compute_metrics(root)
        self.root = root
        self.nodes = tuple(root.preorder())
        self.position = {node: i for i, node in enumerate(self.nodes)}
        self.parent = {root: None}
        for node in self.nodes:
            for child in node.children:
                self.parent[child] = node

    def __len__(self):
        return len(self.nodes)

    @staticmethod
    def size(node):
        return compute_metrics(node).size

    def descendants(self, node):
        """Nodes of the subtree of `node`, except `node` itself, in preorder."""
        i = self.position[node]
        return self.nodes[i+1:i+self.size(node)]

    def is_descendant(self, node, ancestor):
        i, j = self.position[node], self.position[ancestor]
        return j < i < j + self.size(ancestor)

    def ancestors(self, node):
        node = self.parent[node]
        while node is not None:
            yield node
            node = self.parent[node]


class _HeightQueue:
    """Nodes waiting to be compared, popped by groups of equal height, tallest first."""

    def __init__(self, min_height):
        self.min_height = min_height
        self._heap = []
        self._counter = count()

    def __bool__(self):
        return len(self._heap) > 0

    def push(self, node):
        height = compute_metrics(node).height
        if height >= self.min_height:
            heapq.heappush(self._heap, (-height, next(self._counter), node))

    def open(self, node):
        for child in node.children:
            self.push(child)

    def peek_height(self):
        return -self._heap[0][0]

    def pop(self):
        height = self.peek_height()
        group = []
        while self._heap and -self._heap[0][0] == height:
            group.append(heapq.heappop(self._heap)[2])
        return group


def _dice(n1, n2, t1, t2, mapping):
    """Dice coefficient of the descendants of `n1` and `n2` with respect to `mapping`."""
    if n1 is None or n2 is None:
        return 0.0
    denominator = (t1.size(n1) - 1) + (t2.size(n2) - 1)
    if denominator == 0:
        return 0.0
    common = 0
    for d in t1.descendants(n1):
        partner = mapping.dst(d)
        if partner is not None and t2.is_descendant(partner, n2):
            common += 1
    return 2*common/denominator


def _top_down(t1: _IndexedTree, t2: _IndexedTree, cfg: MatcherConfig) -> NodeMapping:
    mapping = NodeMapping()

    if isomorphic(t1.root, t2.root):
        mapping.add_subtrees(t1.root, t2.root)
        return mapping

    q1, q2 = _HeightQueue(cfg.min_height), _HeightQueue(cfg.min_height)
    q1.push(t1.root)
    q2.push(t2.root)
    ambiguous = []

    while q1 and q2:
        h1, h2 = q1.peek_height(), q2.peek_height()
        if h1 > h2:
            for n in q1.pop():
                q1.open(n)
            continue
        elif h2 > h1:
            for n in q2.pop():
                q2.open(n)
            continue

        group1, group2 = q1.pop(), q2.pop()
        group2_by_hash = defaultdict(list)
        for n2 in group2:
            group2_by_hash[compute_metrics(n2).struct_hash].append(n2)

        pairs = [(n1, n2)
                 for n1 in group1
                 for n2 in group2_by_hash.get(compute_metrics(n1).struct_hash, ())
                 if isomorphic(n1, n2)]
        nb_partners1 = Counter(n1 for n1, _ in pairs)
        nb_partners2 = Counter(n2 for _, n2 in pairs)

        for n1, n2 in pairs:
            if nb_partners1[n1] == 1 and nb_partners2[n2] == 1:
                mapping.add_subtrees(n1, n2)
            else:
                ambiguous.append((n1, n2))

        for n1 in group1:
            if n1 not in nb_partners1:
                q1.open(n1)
        for n2 in group2:
            if n2 not in nb_partners2:
                q2.open(n2)

    # Several isomorphic candidates: prefer the pair whose parents are the most similar,
    # then the smallest offsets.
    def preference(pair):
        n1, n2 = pair
        return (-_dice(t1.parent[n1], t2.parent[n2], t1, t2, mapping),
                n1.span[0], n2.span[0], t1.position[n1], t2.position[n2])

    for n1, n2 in sorted(ambiguous, key=preference):
        if mapping.subtrees_are_unmapped(n1, n2):
            mapping.add_subtrees(n1, n2)

    return mapping


def _bottom_up(t1: _IndexedTree, t2: _IndexedTree, mapping: NodeMapping, cfg: MatcherConfig) -> NodeMapping:
    for n1 in t1.root.postorder():
        if n1.is_leaf or mapping.has_src(n1):
            continue

        candidates = []
        seen = set()
        for d in t1.descendants(n1):
            partner = mapping.dst(d)
            if partner is None:
                continue
            for ancestor in t2.ancestors(partner):
                if ancestor in seen:
                    break
                seen.add(ancestor)
                if ancestor.label == n1.label and not mapping.has_dst(ancestor):
                    candidates.append(ancestor)

        best, best_key = None, None
        for candidate in candidates:
            dice = _dice(n1, candidate, t1, t2, mapping)
            if dice <= cfg.dice_threshold:
                continue
            key = (-dice, candidate.span[0], t2.position[candidate])
            if best is None or key < best_key:
                best, best_key = candidate, key

        if best is not None:
            mapping.add(n1, best)

    return mapping


def match_top_down(t1, t2, cfg: Optional[MatcherConfig] = None) -> NodeMapping:
    """Greedy mapping of the isomorphic subtrees of the two trees.

    Subtrees lower than `cfg.min_height` are only mapped as part of a larger
    mapped subtree. When a subtree has several isomorphic candidates, the one
    whose parent is the most similar to its own parent is chosen, and ties are
    broken by the smallest byte offset.
    """
    cfg = MatcherConfig() if cfg is None else cfg
    return _top_down(_IndexedTree(t1), _IndexedTree(t2), cfg)


def match_bottom_up(t1, t2, partial: NodeMapping, cfg: Optional[MatcherConfig] = None) -> NodeMapping:
    """Extend `partial` with the containers of mapped nodes.

    The unmapped interior nodes of `t1` are visited in postorder. A node is
    mapped to the unmapped node of `t2` with the same label maximizing the
    dice coefficient of their mapped descendants, if this coefficient is
    above `cfg.dice_threshold`. Only ancestors of the partners of its mapped
    descendants are considered.

    The input mapping is not modified.
    """
    cfg = MatcherConfig() if cfg is None else cfg
    return _bottom_up(_IndexedTree(t1), _IndexedTree(t2), partial.copy(), cfg)


def compute_mapping(t1, t2, cfg: Optional[MatcherConfig] = None) -> NodeMapping:
    """Both phases of the matching."""
    cfg = MatcherConfig() if cfg is None else cfg
    i1, i2 = _IndexedTree(t1), _IndexedTree(t2)
    mapping = _top_down(i1, i2, cfg)
    return _bottom_up(i1, i2, mapping, cfg)


def diff(t1, t2, cfg: Optional[MatcherConfig] = None) -> DiffResult:
    """Number of shared and unmatched nodes between two trees.

    Parameters
    ----------
    t1, t2: SyntaxTree or SyntaxNode
        the trees to compare
    cfg: MatcherConfig, optional
        settings of the matching (default: ``MatcherConfig()``)

    Returns
    -------
    DiffResult
    """
    cfg = MatcherConfig() if cfg is None else cfg
    i1, i2 = _IndexedTree(t1), _IndexedTree(t2)
    mapping = _bottom_up(i1, i2, _top_down(i1, i2, cfg), cfg)
    shared = len(mapping)
    result = DiffResult(shared=shared, unmatched1=len(i1) - shared, unmatched2=len(i2) - shared, mapping=mapping)
    LOG.debug("Diff of %d and %d nodes: %s", len(i1), len(i2), result)
    return result
