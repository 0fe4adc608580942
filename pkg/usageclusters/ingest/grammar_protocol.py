"""Boundary between the usage finder and the grammars of source languages."""
# Copyright (C) 2025 the usageclusters developers
# Distributed under the GNU General Public License, version 3 or later (GPL-3.0-or-later)

from typing import FrozenSet, Optional, Protocol, Tuple, runtime_checkable

from usageclusters.trees.nodes import SyntaxNode, SyntaxTree


class ParseError(ValueError):
    """A source file could not be parsed.

    Attributes
    ----------
    path: str
        the file (or source identifier) that failed to parse
    line, column: int
        1-based location of the first syntax error
    """

    def __init__(self, message, path=None, line=None, column=None):
        super().__init__(message)
        self.path = path
        self.line = line
        self.column = column


@runtime_checkable
class GrammarAdapter(Protocol):
    """Minimal API that a class wrapping the grammar of a source language
    should implement to be usable by the usage finder.

    The goal is two-fold:
       1. Keep the usage finder and the context extraction independent of the
       source language: only the adapter knows the node kinds of its grammar.
       2. Use as documentation for adding further grammars.
    """
    name: str
    file_patterns: Tuple[str, ...]
    identifier_labels: FrozenSet[str]
    type_reference_labels: FrozenSet[str]
    method_labels: FrozenSet[str]
    type_declaration_labels: FrozenSet[str]

    def parse(self, source: bytes, source_id: str) -> SyntaxTree:
        ...

    def is_declaration_name(self, node: SyntaxNode, parent: Optional[SyntaxNode]) -> bool:
        ...

    def call_arity(self, node: SyntaxNode, parent: Optional[SyntaxNode], grandparent: Optional[SyntaxNode]) -> Optional[int]:
        ...

    def is_statement(self, node: SyntaxNode) -> bool:
        ...

    def package_name(self, tree: SyntaxTree) -> str:
        ...
