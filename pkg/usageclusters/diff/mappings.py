"""Data structures of the tree differencing: node mappings, results and settings."""
# Copyright (C) 2025 the usageclusters developers
# Distributed under the GNU General Public License, version 3 or later (GPL-3.0-or-later)

import logging
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple

from usageclusters.tools.contracts import ContractViolation
from usageclusters.trees.nodes import SyntaxNode

LOG = logging.getLogger(__name__)


class NodeMapping:
    """Set of pairs (node of the first tree, node of the second tree).

    Each node appears in at most one pair and the two nodes of a pair have
    the same label. Nodes are compared by identity, such that two
    isomorphic subtrees of the same tree are distinct.
    """

    def __init__(self):
        self._src_to_dst = {}
        self._dst_to_src = {}

    def __len__(self):
        return len(self._src_to_dst)

    def __iter__(self) -> Iterator[Tuple[SyntaxNode, SyntaxNode]]:
        return iter(self._src_to_dst.items())

    def __contains__(self, pair):
        n1, n2 = pair
        return self._src_to_dst.get(n1) is n2

    def __repr__(self):
        return f"NodeMapping({len(self)} pairs)"

    def pairs(self) -> List[Tuple[SyntaxNode, SyntaxNode]]:
        """The pairs, in the order they have been added."""
        return list(self._src_to_dst.items())

    def copy(self) -> "NodeMapping":
        other = NodeMapping()
        other._src_to_dst = dict(self._src_to_dst)
        other._dst_to_src = dict(self._dst_to_src)
        return other

    def has_src(self, n1: SyntaxNode) -> bool:
        return n1 in self._src_to_dst

    def has_dst(self, n2: SyntaxNode) -> bool:
        return n2 in self._dst_to_src

    def dst(self, n1: SyntaxNode) -> Optional[SyntaxNode]:
        return self._src_to_dst.get(n1)

    def src(self, n2: SyntaxNode) -> Optional[SyntaxNode]:
        return self._dst_to_src.get(n2)

    def add(self, n1: SyntaxNode, n2: SyntaxNode):
        if n1.label != n2.label:
            raise ContractViolation(f"Cannot map nodes with different labels: {n1.__short_str__()} and {n2.__short_str__()}.")
        if n1 in self._src_to_dst:
            raise ContractViolation(f"{n1.__short_str__()} is already mapped.")
        if n2 in self._dst_to_src:
            raise ContractViolation(f"{n2.__short_str__()} is already mapped.")
        self._src_to_dst[n1] = n2
        self._dst_to_src[n2] = n1

    def add_subtrees(self, n1: SyntaxNode, n2: SyntaxNode):
        """Map node-for-node two isomorphic subtrees."""
        for a, b in zip(n1.preorder(), n2.preorder()):
            self.add(a, b)

    def subtrees_are_unmapped(self, n1: SyntaxNode, n2: SyntaxNode) -> bool:
        return (not any(n in self._src_to_dst for n in n1.preorder())
                and not any(n in self._dst_to_src for n in n2.preorder()))


@dataclass(frozen=True)
class DiffResult:
    """Outcome of the comparison of two trees.

    Attributes
    ----------
    shared: int
        number of mapped pairs
    unmatched1: int
        number of nodes of the first tree without a partner
    unmatched2: int
        number of nodes of the second tree without a partner
    mapping: NodeMapping, optional
        the mapping the counts come from
    """
    shared: int
    unmatched1: int
    unmatched2: int
    mapping: Optional[NodeMapping] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        for name in ("shared", "unmatched1", "unmatched2"):
            if getattr(self, name) < 0:
                raise ContractViolation(f"Negative count in DiffResult: {name}={getattr(self, name)}.")

    def __str__(self):
        return f"shared={self.shared} unmatched={self.unmatched1}/{self.unmatched2}"


class MatcherConfig:
    """Settings of the two matching phases.

    Parameters
    ----------
    min_height: int, optional
        Only subtrees of at least this height are matched in the top-down
        phase, except for two entirely isomorphic trees. (default: 2)
    dice_threshold: float, optional
        In the bottom-up phase, two containers are matched if the dice
        coefficient of their mapped descendants is strictly greater than this
        value. (default: 0.5)
    """

    def __init__(self, min_height: int = 2, dice_threshold: float = 0.5):
        if int(min_height) != min_height or min_height < 1:
            raise ValueError(f"min_height should be an integer larger or equal to 1. Received: {min_height!r}")
        if not 0.0 < dice_threshold <= 1.0:
            raise ValueError(f"dice_threshold should be in (0, 1]. Received: {dice_threshold!r}")
        self.min_height = int(min_height)
        self.dice_threshold = float(dice_threshold)

    @property
    def exportable_settings(self):
        return {"min_height": self.min_height, "dice_threshold": self.dice_threshold}

    def __str__(self):
        return f"MatcherConfig(min_height={self.min_height}, dice_threshold={self.dice_threshold})"

    def __repr__(self):
        return self.__str__()

    def __eq__(self, other):
        return isinstance(other, MatcherConfig) and self.exportable_settings == other.exportable_settings

    def __hash__(self):
        return hash((self.min_height, self.dice_threshold))
