"""Serialized form of syntax trees, used for test fixtures and the ``diff`` subcommand.

A node is written ``(label "value" child...)``. The value is a JSON string
literal and is omitted when empty, which is always the case for nodes with
children::

    (method_invocation (identifier "initCapacity") (argument_list (decimal_integer_literal "16")))

The spans of parsed nodes are the character offsets of their parentheses in
the serialized text.
"""
# Copyright (C) 2025 the usageclusters developers
# Distributed under the GNU General Public License, version 3 or later (GPL-3.0-or-later)

import json
import logging

from usageclusters.trees.nodes import SyntaxNode, SyntaxTree

LOG = logging.getLogger(__name__)

_FORBIDDEN_IN_LABELS = set('()"') | set(" \t\r\n")
_JSON_DECODER = json.JSONDecoder()


class MalformedTreeError(ValueError):
    """The text is not a valid serialized tree."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at character {position})"
        super().__init__(message)


def _skip_whitespace(text, i):
    while i < len(text) and text[i].isspace():
        i += 1
    return i


def _read_label(text, i):
    start = i
    while i < len(text) and text[i] not in _FORBIDDEN_IN_LABELS:
        i += 1
    return text[start:i], i


def loads(text: str) -> SyntaxNode:
    """Parse the serialized form of a single tree and return its root."""
    n = len(text)
    stack = []
    root = None
    i = 0
    while True:
        i = _skip_whitespace(text, i)
        if i >= n:
            break
        c = text[i]
        if c == "(":
            if root is not None:
                raise MalformedTreeError("Unexpected content after the end of the tree", position=i)
            start = i
            label, i = _read_label(text, _skip_whitespace(text, i + 1))
            if label == "":
                raise MalformedTreeError("Missing label after opening parenthesis", position=i)
            i = _skip_whitespace(text, i)
            value = ""
            if i < n and text[i] == '"':
                try:
                    value, i = _JSON_DECODER.raw_decode(text, i)
                except json.JSONDecodeError as e:
                    raise MalformedTreeError(f"Invalid string literal: {e.msg}", position=e.pos) from None
            stack.append((label, value, [], start))
        elif c == ")":
            if len(stack) == 0:
                raise MalformedTreeError("Unbalanced closing parenthesis", position=i)
            label, value, children, start = stack.pop()
            i += 1
            node = SyntaxNode(label, value, children, span=(start, i))
            if len(stack) > 0:
                stack[-1][2].append(node)
            else:
                root = node
        else:
            raise MalformedTreeError(f"Unexpected character {c!r}", position=i)

    if len(stack) > 0:
        raise MalformedTreeError(f"{len(stack)} unclosed parenthes{'is' if len(stack) == 1 else 'es'}", position=n)
    if root is None:
        raise MalformedTreeError("Empty input", position=0)
    return root


def dumps(node: SyntaxNode, indent=None) -> str:
    """Serialized form of the subtree rooted at `node`.

    Parameters
    ----------
    node: SyntaxNode
        the root of the subtree to serialize
    indent: int, optional
        if given, each child is written on its own line, indented by this
        number of spaces per level. By default, the output is a single line.
    """
    parts = []
    stack = [(node, 0, False)]
    while stack:
        n, depth, closing = stack.pop()
        if closing:
            parts.append(")")
            continue
        if any(c in _FORBIDDEN_IN_LABELS for c in n.label):
            raise ValueError(f"Label {n.label!r} cannot be serialized.")
        if depth > 0:
            parts.append(" " if indent is None else "\n" + " " * (indent * depth))
        parts.append("(" + n.label)
        if n.is_leaf and n.value != "":
            parts.append(" " + json.dumps(n.value, ensure_ascii=False))
        stack.append((n, depth, True))
        stack.extend((child, depth + 1, False) for child in reversed(n.children))
    return "".join(parts)


def load_tree(filepath, source_id=None) -> SyntaxTree:
    """Read a file containing one serialized tree."""
    with open(filepath, "r", encoding="utf-8") as f:
        text = f.read()
    LOG.debug("Loading serialized tree from %s", filepath)
    return SyntaxTree(loads(text), source_id=str(filepath) if source_id is None else source_id)
