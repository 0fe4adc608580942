# Copyright (C) 2025 the usageclusters developers
# Distributed under the GNU General Public License, version 3 or later (GPL-3.0-or-later)

from usageclusters.trees.nodes import SyntaxNode, SyntaxTree
from usageclusters.trees.metrics import NodeMetrics, compute_metrics, isomorphic
