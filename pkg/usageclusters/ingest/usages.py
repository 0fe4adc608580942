"""Search of the occurrences of a symbol and extraction of their context."""
# Copyright (C) 2025 the usageclusters developers
# Distributed under the GNU General Public License, version 3 or later (GPL-3.0-or-later)

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from usageclusters.ingest.grammar_protocol import GrammarAdapter
from usageclusters.tools.contracts import ContractViolation
from usageclusters.trees.nodes import Span, SyntaxNode, SyntaxTree

LOG = logging.getLogger(__name__)

KINDS = ("any", "call", "type")
CONTEXT_SCOPES = ("method", "statement")


class SymbolQuery:
    """The symbol whose usages are looked for.

    Parameters
    ----------
    name: str
        the identifier, as written in the source code
    kind_filter: str, optional
        "call" (method calls and constructor calls), "type" (references to a
        type name, other than constructor calls) or "any" (default)
    arity_filter: int, optional
        if given, only calls with this number of arguments are kept
    """

    def __init__(self, name: str, kind_filter: str = "any", arity_filter: Optional[int] = None):
        if not isinstance(name, str) or not name.replace("$", "_").isidentifier():
            raise ValueError(f"The symbol to look for should be an identifier. Received: {name!r}")
        if kind_filter is None:
            kind_filter = "any"
        kind_filter = {"type-reference": "type"}.get(kind_filter, kind_filter)
        if kind_filter not in KINDS:
            raise ValueError(f"Unrecognized kind filter: {kind_filter!r}. Expected one of {KINDS}.")
        if arity_filter is not None:
            if int(arity_filter) != arity_filter or arity_filter < 0:
                raise ValueError(f"The arity filter should be a non-negative integer. Received: {arity_filter!r}")
            arity_filter = int(arity_filter)
        self.name = name
        self.kind_filter = kind_filter
        self.arity_filter = arity_filter

    @property
    def exportable_settings(self):
        return {"symbol": self.name, "kind": self.kind_filter, "arity": self.arity_filter}

    def __str__(self):
        return f"SymbolQuery({self.name!r}, kind_filter={self.kind_filter!r}, arity_filter={self.arity_filter})"

    def __repr__(self):
        return self.__str__()

    def __eq__(self, other):
        return isinstance(other, SymbolQuery) and self.exportable_settings == other.exportable_settings

    def accepts(self, usage_kind: str, arity: Optional[int]) -> bool:
        if self.kind_filter == "call" and usage_kind != "call":
            return False
        if self.kind_filter == "type" and usage_kind != "type":
            return False
        if self.arity_filter is not None and arity != self.arity_filter:
            return False
        return True


@dataclass(frozen=True, eq=False)
class UsageSite:
    """An occurrence of the queried symbol.

    Attributes
    ----------
    file: str
        source identifier of the file (its path relative to the corpus root)
    usage_span: tuple of two int
        byte offsets of the identifier in the file
    line: int
        1-based line of the identifier
    context: SyntaxTree
        the declaration enclosing the usage
    context_kind: str
        "method", "top-level-declaration", "file", or "statement" for the statement scope
    usage_kind: str
        "call", "type" or "reference"
    arity: int or None
        number of arguments of a call
    snippet: str
        the source line of the usage, without surrounding whitespace
    package: str
        the package declared in the file, empty for the default package
    """
    file: str
    usage_span: Span
    line: int
    context: SyntaxTree = field(repr=False)
    context_kind: str
    usage_kind: str = "reference"
    arity: Optional[int] = None
    snippet: str = ""
    package: str = ""

    @property
    def offset(self) -> int:
        return self.usage_span[0]

    @property
    def sort_key(self) -> Tuple[str, int]:
        return (self.file, self.usage_span[0])

    @property
    def location(self) -> str:
        return f"{self.file}:{self.line}"

    def __short_str__(self):
        return f"UsageSite({self.location}, {self.context_kind})"

    def _repr_pretty_(self, p, cycle):
        p.text(self.__short_str__())


def _default_grammar():
    from usageclusters.ingest.java import JavaGrammar
    return JavaGrammar()


def _enclosing_path(root: SyntaxNode, span: Span) -> List[SyntaxNode]:
    path = [root]
    node = root
    while True:
        child = next((c for c in node.children if c.contains_span(span)), None)
        if child is None:
            return path
        path.append(child)
        node = child


def extract_context(tree: SyntaxTree, usage_span: Span, grammar: Optional[GrammarAdapter] = None, scope: str = "method") -> Tuple[SyntaxTree, str]:
    """Smallest declaration enclosing a span of the file.

    Parameters
    ----------
    tree: SyntaxTree
        the tree of a whole file
    usage_span: tuple of two int
        byte offsets of the usage
    grammar: GrammarAdapter, optional
        (default: :class:`~usageclusters.ingest.java.JavaGrammar`)
    scope: str, optional
        "method" (default) for the enclosing method, or "statement" for the
        enclosing statement when there is one

    Returns
    -------
    (SyntaxTree, str)
        the context, sharing its nodes with `tree`, and the kind of context:
        "statement", "method", "top-level-declaration" or "file"

    Raises
    ------
    ContractViolation
        if the span is not inside the tree
    """
    if grammar is None:
        grammar = _default_grammar()
    if scope not in CONTEXT_SCOPES:
        raise ValueError(f"Unrecognized context scope: {scope!r}. Expected one of {CONTEXT_SCOPES}.")
    start, end = usage_span
    if start > end or not tree.root.contains_span(usage_span):
        raise ContractViolation(f"Span {tuple(usage_span)} is not inside {tree.__short_str__()} of span {tree.root.span}.")

    path = _enclosing_path(tree.root, usage_span)
    innermost_first = path[::-1]
    if scope == "statement":
        statement = next((n for n in innermost_first if grammar.is_statement(n)), None)
        if statement is not None:
            return tree.subtree(statement), "statement"
    method = next((n for n in innermost_first if n.label in grammar.method_labels), None)
    if method is not None:
        return tree.subtree(method), "method"
    declaration = next((n for n in innermost_first if n.label in grammar.type_declaration_labels), None)
    if declaration is not None:
        return tree.subtree(declaration), "top-level-declaration"
    return tree, "file"


def _walk_with_ancestors(root):
    # Preorder, with the parent and grandparent of each node.
    stack = [(root, None, None)]
    while stack:
        node, parent, grandparent = stack.pop()
        yield node, parent, grandparent
        stack.extend((child, node, parent) for child in reversed(node.children))


def find_usages(trees: Sequence[SyntaxTree], query: SymbolQuery, grammar: Optional[GrammarAdapter] = None, *, context_scope: str = "method") -> List[UsageSite]:
    """Occurrences of the queried name in the trees.

    The declaration of the symbol itself (e.g. the name in a method
    declaration) is not a usage. Several usages in the same declaration
    share the same context object.

    Parameters
    ----------
    trees: list of SyntaxTree
        the parsed files, with their source
    query: SymbolQuery
        the symbol to look for
    grammar: GrammarAdapter, optional
        (default: :class:`~usageclusters.ingest.java.JavaGrammar`)
    context_scope: str, optional
        see :func:`extract_context`

    Returns
    -------
    list of UsageSite
        sorted by file, then byte offset
    """
    if grammar is None:
        grammar = _default_grammar()

    usages = []
    for tree in trees:
        package = None
        for node, parent, grandparent in _walk_with_ancestors(tree.root):
            if not node.is_leaf or node.label not in grammar.identifier_labels or node.value != query.name:
                continue
            if grammar.is_declaration_name(node, parent):
                continue
            arity = grammar.call_arity(node, parent, grandparent)
            if arity is not None:
                usage_kind = "call"
            elif node.label in grammar.type_reference_labels:
                usage_kind = "type"
            else:
                usage_kind = "reference"
            if not query.accepts(usage_kind, arity):
                continue

            if package is None:
                package = grammar.package_name(tree)
            context, context_kind = extract_context(tree, node.span, grammar, scope=context_scope)
            line = tree.line_of(node.span[0])
            usages.append(UsageSite(
                file=tree.source_id,
                usage_span=node.span,
                line=line,
                context=context,
                context_kind=context_kind,
                usage_kind=usage_kind,
                arity=arity,
                snippet=tree.line_text(line).strip(),
                package=package,
            ))

    usages.sort(key=lambda u: u.sort_key)
    LOG.info("Found %d usages of %s in %d files.", len(usages), query.name, len({u.file for u in usages}))
    return usages
