"""Java grammar, based on tree-sitter and tree-sitter-java.

Only the structure of the code is kept in the syntax trees: comments and
punctuation tokens (parentheses, braces, separators, quotes) are dropped.
Keywords and operators are kept as leaves.
"""
# Copyright (C) 2025 the usageclusters developers
# Distributed under the GNU General Public License, version 3 or later (GPL-3.0-or-later)

import logging
from functools import lru_cache
from typing import Optional

from usageclusters.ingest.grammar_protocol import ParseError
from usageclusters.tools.optional_imports import import_optional_dependency
from usageclusters.trees.nodes import SyntaxNode, SyntaxTree

LOG = logging.getLogger(__name__)

PUNCTUATION = frozenset("(){}[];,.@\"'`")


@lru_cache(maxsize=1)
def _java_parser():
    # One parser per process: tree-sitter parsers cannot be pickled to joblib workers.
    tree_sitter = import_optional_dependency("tree_sitter", "tree-sitter")
    tree_sitter_java = import_optional_dependency("tree_sitter_java", "tree-sitter-java")
    language = tree_sitter.Language(tree_sitter_java.language())
    return tree_sitter.Parser(language)


def _first_error(ts_root):
    stack = [ts_root]
    while stack:
        node = stack.pop()
        if node.type == "ERROR" or node.is_missing:
            return node
        stack.extend(reversed(node.children))
    return ts_root


def _keep(ts_node):
    if ts_node.is_extra:  # Comments
        return False
    if ts_node.is_named:
        return True
    return not set(ts_node.type) <= PUNCTUATION


class JavaGrammar:
    """Adapter between tree-sitter-java and the usage finder."""

    name = "java"
    file_patterns = ("*.java",)

    identifier_labels = frozenset({"identifier", "type_identifier"})
    type_reference_labels = frozenset({"type_identifier"})

    method_labels = frozenset({
        "method_declaration", "constructor_declaration", "compact_constructor_declaration",
    })
    type_declaration_labels = frozenset({
        "class_declaration", "interface_declaration", "enum_declaration",
        "record_declaration", "annotation_type_declaration",
    })
    statement_labels = frozenset({
        "expression_statement", "local_variable_declaration", "return_statement",
        "if_statement", "for_statement", "enhanced_for_statement", "while_statement",
        "do_statement", "try_statement", "try_with_resources_statement", "throw_statement",
        "switch_expression", "yield_statement", "synchronized_statement", "assert_statement",
        "labeled_statement", "field_declaration", "explicit_constructor_invocation",
    })

    # Nodes whose first `identifier` child is the name they declare.
    _name_owners = method_labels | type_declaration_labels | frozenset({
        "variable_declarator", "formal_parameter", "catch_formal_parameter",
        "enum_constant", "annotation_type_element_declaration", "enhanced_for_statement",
    })

    def __str__(self):
        return "JavaGrammar()"

    def __repr__(self):
        return self.__str__()

    def __eq__(self, other):
        return isinstance(other, JavaGrammar)

    def __hash__(self):
        return hash(self.name)

    def parse(self, source: bytes, source_id: str = "<memory>") -> SyntaxTree:
        """Parse Java source code.

        Parameters
        ----------
        source: bytes or str
            the content of a .java file
        source_id: str, optional
            name of the file, used in error messages and stored in the tree

        Returns
        -------
        SyntaxTree

        Raises
        ------
        ParseError
            if the code contains a syntax error
        """
        if isinstance(source, str):
            source = source.encode("utf-8")
        ts_tree = _java_parser().parse(source)
        ts_root = ts_tree.root_node
        if ts_root.has_error:
            error = _first_error(ts_root)
            line, column = error.start_point[0] + 1, error.start_point[1] + 1
            raise ParseError(f"Syntax error in {source_id} at line {line}, column {column}.",
                             path=source_id, line=line, column=column)
        root = self._convert(ts_root, source)
        return SyntaxTree(root, source_id=source_id, source=source)

    @staticmethod
    def _convert(ts_root, source):
        # Iterative postorder construction, to be safe with deeply nested expressions.
        stack = [(ts_root, iter(ts_root.children), [])]
        while True:
            ts_node, remaining_children, kept_children = stack[-1]
            ts_child = next(remaining_children, None)
            if ts_child is not None:
                if _keep(ts_child):
                    stack.append((ts_child, iter(ts_child.children), []))
                continue

            stack.pop()
            if len(stack) == 0:
                span = (0, len(source))
            else:
                span = (ts_node.start_byte, ts_node.end_byte)
            if ts_node.child_count == 0:
                value = source[span[0]:span[1]].decode("utf-8", errors="replace")
            else:
                value = ""
            node = SyntaxNode(ts_node.type, value, kept_children, span=span)
            if len(stack) == 0:
                return node
            stack[-1][2].append(node)

    def is_declaration_name(self, node: SyntaxNode, parent: Optional[SyntaxNode]) -> bool:
        """Whether `node` is the name introduced by a declaration (method, class, variable, parameter...)."""
        if parent is None or node.label != "identifier":
            return False
        if parent.label == "inferred_parameters":
            return True
        if parent.label == "lambda_expression":
            return parent.children[0] is node
        if parent.label == "resource" and len(parent.children) < 2:
            return False
        if parent.label in self._name_owners or parent.label == "resource":
            first_identifier = next((c for c in parent.children if c.label == "identifier"), None)
            return first_identifier is node
        return False

    def call_arity(self, node: SyntaxNode, parent: Optional[SyntaxNode], grandparent: Optional[SyntaxNode]) -> Optional[int]:
        """Number of arguments if `node` is the name of a called method or
        instantiated class, None if the occurrence is not a call."""
        if parent is None:
            return None

        if node.label == "identifier" and parent.label == "method_invocation":
            siblings = parent.children
            i = next(i for i, c in enumerate(siblings) if c is node)
            if i + 1 < len(siblings) and siblings[i+1].label == "argument_list":
                return len(siblings[i+1].children)
            return None

        if node.label == "type_identifier":
            owner = parent
            if parent.label == "generic_type" and parent.children[0] is node:
                owner = grandparent
            elif parent.label == "scoped_type_identifier" and parent.children[-1] is node:
                owner = grandparent
            if owner is not None and owner.label == "object_creation_expression":
                arguments = next((c for c in owner.children if c.label == "argument_list"), None)
                if arguments is not None:
                    return len(arguments.children)
        return None

    def is_statement(self, node: SyntaxNode) -> bool:
        return node.label in self.statement_labels

    def package_name(self, tree: SyntaxTree) -> str:
        """Name of the package declared in the file, or the empty string for the default package."""
        for child in tree.root.children:
            if child.label == "package_declaration":
                name_node = next((c for c in child.children if c.label in {"scoped_identifier", "identifier"}), None)
                if name_node is None:
                    return ""
                if tree.source is not None:
                    return "".join(tree.text(name_node).split())
                return ".".join(leaf.value for leaf in name_node.preorder() if leaf.is_leaf)
        return ""
