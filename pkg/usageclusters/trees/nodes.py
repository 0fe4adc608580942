"""Ordered labeled trees over source text.

.. code-block:: python

    leaf = SyntaxNode("identifier", "foo", span=(4, 7))
    root = SyntaxNode("expression_statement", children=[leaf], span=(4, 8))
    tree = SyntaxTree(root, source_id="Foo.java")

"""
# Copyright (C) 2025 the usageclusters developers
# Distributed under the GNU General Public License, version 3 or later (GPL-3.0-or-later)

import logging
from bisect import bisect_right
from typing import Iterable, Iterator, Optional, Tuple

LOG = logging.getLogger(__name__)

Span = Tuple[int, int]


class SyntaxNode:
    """A node of a syntax tree.

    Parameters
    ----------
    label: str
        Name of the node kind in the grammar (e.g. "method_declaration").
    value: str, optional
        Token text. Only leaves keep it: the value of a node with children is
        normalized to the empty string.
    children: iterable of SyntaxNode, optional
        Children in source order.
    span: tuple of two int, optional
        Byte offsets ``(start, end)`` in the source. By default, the union of
        the spans of the children, or ``(0, 0)`` for a leaf.
    """

    __slots__ = ("_label", "_value", "_children", "_span", "_metrics")

    def __init__(self, label: str, value: str = "", children: Iterable["SyntaxNode"] = (), span: Optional[Span] = None):
        children = tuple(children)
        for child in children:
            if not isinstance(child, SyntaxNode):
                raise TypeError(f"Children of a SyntaxNode should be SyntaxNode, got instead: {child!r}")
        if not isinstance(label, str) or label == "":
            raise ValueError(f"The label of a SyntaxNode should be a non-empty string. Received: {label!r}")

        if span is None:
            if len(children) > 0:
                span = (children[0].span[0], children[-1].span[1])
            else:
                span = (0, 0)
        start, end = int(span[0]), int(span[1])
        if start > end:
            raise ValueError(f"Invalid span {span} for node {label!r}: start is after end.")
        for child in children:
            if child.span[0] < start or end < child.span[1]:
                raise ValueError(f"The span {child.span} of a child of {label!r} is not contained in the span {(start, end)} of its parent.")

        self._label = label
        self._value = "" if len(children) > 0 else str(value)
        self._children = children
        self._span = (start, end)
        self._metrics = None

    @property
    def label(self) -> str:
        return self._label

    @property
    def value(self) -> str:
        return self._value

    @property
    def children(self) -> Tuple["SyntaxNode", ...]:
        return self._children

    @property
    def span(self) -> Span:
        return self._span

    @property
    def is_leaf(self) -> bool:
        return len(self._children) == 0

    def __short_str__(self):
        if self.is_leaf:
            return f"{self._label}:{self._value!r}"
        return f"{self._label}(... {len(self._children)} children ...)"

    def __str__(self):
        return self.__short_str__()

    def __repr__(self):
        return f"SyntaxNode({self._label!r}, {self._value!r}, [... {len(self._children)} children ...], span={self._span})"

    def _repr_pretty_(self, p, cycle):
        p.text(self.__str__())

    def preorder(self) -> Iterator["SyntaxNode"]:
        """Iterate over the subtree rooted at this node, parents before children."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node._children))

    def postorder(self) -> Iterator["SyntaxNode"]:
        """Iterate over the subtree rooted at this node, children before parents."""
        stack = [(self, False)]
        while stack:
            node, children_done = stack.pop()
            if children_done or node.is_leaf:
                yield node
            else:
                stack.append((node, True))
                stack.extend((child, False) for child in reversed(node._children))

    def contains_span(self, span: Span) -> bool:
        return self._span[0] <= span[0] and span[1] <= self._span[1]

    def tree_view(self, indent=0):
        """Multi-line human readable view of the subtree."""
        lines = []
        stack = [(self, indent)]
        while stack:
            node, depth = stack.pop()
            lines.append(" │ " * depth + node.__short_str__())
            stack.extend((child, depth + 1) for child in reversed(node._children))
        return "\n".join(lines)


class SyntaxTree:
    """A syntax tree, that is a root node and the file it comes from.

    Trees are not modified after construction: contexts of usages are new
    SyntaxTree objects sharing the nodes of the file tree.

    Parameters
    ----------
    root: SyntaxNode
        The root of the tree.
    source_id: str, optional
        Identifier of the originating file (usually its path relative to the corpus root).
    source: bytes, optional
        The raw content of the file, used to recover line numbers and snippets.
    """

    def __init__(self, root: SyntaxNode, source_id: str = "<memory>", source: Optional[bytes] = None):
        if not isinstance(root, SyntaxNode):
            raise TypeError(f"The root of a SyntaxTree should be a SyntaxNode, got instead: {root!r}")
        self.root = root
        self.source_id = str(source_id)
        self.source = source
        self._nodes = tuple(root.preorder())
        self._line_starts = None

    @property
    def node_count(self) -> int:
        return len(self._nodes)

    @property
    def nodes(self) -> Tuple[SyntaxNode, ...]:
        """All the nodes of the tree in preorder."""
        return self._nodes

    def __len__(self):
        return len(self._nodes)

    def __iter__(self):
        return iter(self._nodes)

    def __short_str__(self):
        return f"{self.__class__.__name__}(..., source_id=\"{self.source_id}\")"

    def __str__(self):
        return f"{self.__class__.__name__}(root={self.root.__short_str__()}, node_count={self.node_count}, source_id=\"{self.source_id}\")"

    def __repr__(self):
        return self.__str__()

    def _repr_pretty_(self, p, cycle):
        p.text(self.__str__())

    def postorder(self) -> Iterator[SyntaxNode]:
        return self.root.postorder()

    def subtree(self, node: SyntaxNode) -> "SyntaxTree":
        """A new tree rooted at `node`, keeping the source of the present tree."""
        return SyntaxTree(node, source_id=self.source_id, source=self.source)

    def text(self, node: SyntaxNode) -> str:
        """Source text covered by `node`."""
        if self.source is None:
            raise ValueError(f"No source has been stored in {self.__short_str__()}.")
        start, end = node.span
        return self.source[start:end].decode("utf-8", errors="replace")

    def _get_line_starts(self):
        if self._line_starts is None:
            starts = [0]
            position = self.source.find(b"\n")
            while position != -1:
                starts.append(position + 1)
                position = self.source.find(b"\n", position + 1)
            self._line_starts = starts
        return self._line_starts

    def line_of(self, offset: int) -> int:
        """1-based line number of a byte offset in the source."""
        if self.source is None:
            raise ValueError(f"No source has been stored in {self.__short_str__()}.")
        return bisect_right(self._get_line_starts(), offset)

    def line_text(self, line: int) -> str:
        """Text of a 1-based line of the source, without its line terminator."""
        starts = self._get_line_starts()
        start = starts[line - 1]
        end = starts[line] - 1 if line < len(starts) else len(self.source)
        return self.source[start:end].decode("utf-8", errors="replace").rstrip("\r")
