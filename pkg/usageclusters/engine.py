# Copyright (C) 2025 the usageclusters developers
# Distributed under the GNU General Public License, version 3 or later (GPL-3.0-or-later)
"""Pipeline from a source directory to clusters of usages.

.. code-block:: python

    clusterer = UsageClusterer(cluster_config=ClusterConfig(threshold=0.88))
    report = clusterer.run("path/to/project", SymbolQuery("initCapacity"))

"""

import logging
from typing import List, Optional, Sequence, Tuple

from usageclusters.clustering.greedy import ClusterConfig, UsageCluster, cluster_all, sort_for_display
from usageclusters.diff.mappings import MatcherConfig
from usageclusters.ingest.corpus import Diagnostics, parse_corpus, scan_corpus
from usageclusters.ingest.grammar_protocol import GrammarAdapter
from usageclusters.ingest.java import JavaGrammar
from usageclusters.ingest.usages import CONTEXT_SCOPES, SymbolQuery, UsageSite, find_usages
from usageclusters.io.reports import Report, assemble_report
from usageclusters.similarity.scores import SimilarityMatrix, build_matrix
from usageclusters.tools.progress import resolve_progress_bar
from usageclusters.tools.timer import Timer, timer_summary

LOG = logging.getLogger(__name__)


class UsageClusterer:
    """
    Finds the usages of a symbol and groups them by similarity of their context.

    Parameters
    ----------
    grammar: GrammarAdapter, optional
        Grammar of the source files. (default: :class:`~usageclusters.ingest.java.JavaGrammar`)
    matcher_config: MatcherConfig, optional
        Settings of the tree differencing.
    cluster_config: ClusterConfig, optional
        Threshold and processing order of the clustering.
    context_scope: str, optional
        "method" (default) to compare the whole methods enclosing the usages,
        or "statement" to compare only the enclosing statements.

    Attributes
    ----------
    timer: dict[str, Timer]
        Time spent in each stage of the pipeline
    exportable_settings : dict
        Settings of the clusterer, echoed in the reports.
    """

    def __init__(self, *, grammar: Optional[GrammarAdapter] = None, matcher_config: Optional[MatcherConfig] = None,
                 cluster_config: Optional[ClusterConfig] = None, context_scope: str = "method"):
        self.grammar = JavaGrammar() if grammar is None else grammar
        if not isinstance(self.grammar, GrammarAdapter):
            raise TypeError(f"{self.grammar!r} does not implement the GrammarAdapter protocol.")
        self.matcher_config = MatcherConfig() if matcher_config is None else matcher_config
        self.cluster_config = ClusterConfig() if cluster_config is None else cluster_config
        if context_scope not in CONTEXT_SCOPES:
            raise ValueError(f"Unrecognized context scope: {context_scope!r}. Expected one of {CONTEXT_SCOPES}.")
        self.context_scope = context_scope

        self.timer = {"Find total": Timer(), "  Parsing": Timer(), "  Diffing": Timer(), "  Clustering": Timer()}
        self.run = self.timer["Find total"].wraps_function(self.run)

        self.exportable_settings = {
            **self.cluster_config.exportable_settings,
            **self.matcher_config.exportable_settings,
            "context": self.context_scope,
            "grammar": self.grammar.name,
        }

    def __str__(self):
        return (f"UsageClusterer(grammar={self.grammar}, matcher_config={self.matcher_config}, "
                f"cluster_config={self.cluster_config}, context_scope={self.context_scope!r})")

    def __repr__(self):
        return self.__str__()

    def _repr_pretty_(self, p, cycle):
        p.text(self.__str__())

    def timer_summary(self):
        return timer_summary(self.timer)

    def collect(self, root, query: SymbolQuery, include_globs: Optional[Sequence[str]] = None, exclude_globs: Sequence[str] = (),
                *, n_jobs=1, progress_bar=None) -> Tuple[List[UsageSite], dict]:
        """Scan and parse the corpus, and find the usages of the symbol.

        Returns
        -------
        list of UsageSite
            sorted by file and offset
        dict
            statistics of the corpus: root, number of scanned files, number of skipped files
        """
        diagnostics = Diagnostics()
        if include_globs is None or len(include_globs) == 0:
            include_globs = self.grammar.file_patterns
        with self.timer["  Parsing"]:
            files = scan_corpus(root, include_globs, exclude_globs, diagnostics=diagnostics)
            trees = parse_corpus(files, self.grammar, n_jobs=n_jobs, progress_bar=progress_bar, diagnostics=diagnostics)
        usages = find_usages(trees, query, self.grammar, context_scope=self.context_scope)
        corpus = {"root": str(root), "files_scanned": len(files), "parse_warnings": len(diagnostics)}
        return usages, corpus

    def similarity_matrix(self, usages: Sequence[UsageSite], *, n_jobs=1, progress_bar=None) -> SimilarityMatrix:
        with self.timer["  Diffing"]:
            return build_matrix(usages, self.matcher_config, n_jobs=n_jobs, progress_bar=progress_bar)

    def cluster(self, usages: Sequence[UsageSite], matrix: SimilarityMatrix) -> List[UsageCluster]:
        """Clusters of indices in `usages`, largest first."""
        with self.timer["  Clustering"]:
            return sort_for_display(cluster_all(usages, matrix, self.cluster_config))

    def run(self, root, query: SymbolQuery, include_globs: Optional[Sequence[str]] = None, exclude_globs: Sequence[str] = (),
            *, n_jobs=1, progress_bar=None) -> Report:
        """Full pipeline.

        Parameters
        ----------
        root: str or Path
            directory of the source files
        query: SymbolQuery
            the symbol to look for
        include_globs, exclude_globs: list of str, optional
            see :func:`~usageclusters.ingest.corpus.scan_corpus`
        n_jobs: int, optional (default: 1)
            the number of jobs to run in parallel using the optional dependency `joblib`
        progress_bar: bool, optional
            Display progress bars while parsing and diffing.
            If no value is provided to this method directly,
            check whether the environment variable `USAGECLUSTERS_PROGRESS_BAR` is defined
            and otherwise default to False.

        Returns
        -------
        Report
        """
        LOG.info("Looking for usages of %s in %s with %s.", query.name, root, self)
        progress_bar = resolve_progress_bar(progress_bar, default=False)
        usages, corpus = self.collect(root, query, include_globs, exclude_globs, n_jobs=n_jobs, progress_bar=progress_bar)
        matrix = self.similarity_matrix(usages, n_jobs=n_jobs, progress_bar=progress_bar)
        clusters = self.cluster(usages, matrix)
        report = assemble_report(usages, clusters, query=query.exportable_settings, corpus=corpus, config=self.exportable_settings)
        LOG.info("Usage clustering timer summary:\n%s", self.timer_summary())
        return report
