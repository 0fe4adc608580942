# Copyright (C) 2025 the usageclusters developers
# Distributed under the GNU General Public License, version 3 or later (GPL-3.0-or-later)

from .__about__ import (
    __title__, __description__, __version__, __author__, __uri__, __license__
)

from usageclusters.trees.nodes import SyntaxNode, SyntaxTree
from usageclusters.trees.metrics import NodeMetrics, compute_metrics, isomorphic

from usageclusters.ingest.grammar_protocol import GrammarAdapter, ParseError
from usageclusters.ingest.java import JavaGrammar
from usageclusters.ingest.corpus import CorpusError, Diagnostics, scan_corpus, parse_file, parse_corpus
from usageclusters.ingest.usages import SymbolQuery, UsageSite, find_usages, extract_context

from usageclusters.diff.mappings import NodeMapping, DiffResult, MatcherConfig
from usageclusters.diff.matchers import match_top_down, match_bottom_up, diff

from usageclusters.similarity.scores import score, SimilarityMatrix, build_matrix

from usageclusters.clustering.greedy import UsageCluster, ClusterConfig, min_similarity, assign, cluster_all, sort_for_display

from usageclusters.engine import UsageClusterer

from usageclusters.io.reports import Report, assemble_report, format_text, usage_table
from usageclusters.io.sexpr import MalformedTreeError, load_tree

from usageclusters.tools.contracts import ContractViolation

from usageclusters.ui.rich import set_logging

set_logging(level="WARNING")
