"""Similarity of two usage contexts, and matrix of the similarities of all the usages."""
# Copyright (C) 2025 the usageclusters developers
# Distributed under the GNU General Public License, version 3 or later (GPL-3.0-or-later)

import logging
from typing import Optional, Sequence

import numpy as np
import pandas as pd


from usageclusters.diff.mappings import DiffResult, MatcherConfig
from usageclusters.diff.matchers import diff
from usageclusters.tools.contracts import ContractViolation
from usageclusters.tools.optional_imports import require_joblib
from usageclusters.tools.progress import resolve_progress_bar, track_progress

LOG = logging.getLogger(__name__)

TOLERANCE = 1e-12


def score_counts(shared: int, unmatched1: int, unmatched2: int) -> float:
    """Dice coefficient of the nodes of two trees: 2·shared/(2·shared + unmatched1 + unmatched2).

    Two empty trees have similarity 1.
    """
    denominator = 2*shared + unmatched1 + unmatched2
    if denominator == 0:
        return 1.0
    return 2*shared/denominator


def score(d: DiffResult) -> float:
    """Similarity in [0, 1] of the two trees compared in `d`."""
    return score_counts(d.shared, d.unmatched1, d.unmatched2)


class SimilarityMatrix:
    """Symmetric matrix of the similarities between usages, with unit diagonal.

    Parameters
    ----------
    scores: array of shape (n, n)
        the similarities, in [0, 1]
    labels: list of str, optional
        a name for each usage, such as ``"path/File.java:12"``

    Raises
    ------
    ContractViolation
        if the array is not square and symmetric, with values in [0, 1] and a unit diagonal
    """

    def __init__(self, scores, labels: Optional[Sequence[str]] = None):
        scores = np.array(scores, dtype=np.float64)
        if scores.size == 0:
            scores = scores.reshape(0, 0)
        if scores.ndim != 2 or scores.shape[0] != scores.shape[1]:
            raise ContractViolation(f"A similarity matrix should be a square matrix. Got shape {scores.shape}.")
        if not np.all((-TOLERANCE <= scores) & (scores <= 1.0 + TOLERANCE)):
            raise ContractViolation("Similarities should be in [0, 1].")
        if not np.allclose(scores, scores.T, rtol=0.0, atol=TOLERANCE):
            raise ContractViolation("A similarity matrix should be symmetric.")
        if not np.allclose(np.diag(scores), 1.0, rtol=0.0, atol=TOLERANCE):
            raise ContractViolation("The diagonal of a similarity matrix should be 1.")
        if labels is not None and len(labels) != scores.shape[0]:
            raise ContractViolation(f"Got {len(labels)} labels for a matrix of size {scores.shape[0]}.")
        scores.setflags(write=False)
        self.scores = scores
        self.labels = None if labels is None else [str(label) for label in labels]

    @classmethod
    def from_array(cls, array, labels=None):
        return cls(array, labels)

    @property
    def n(self) -> int:
        return self.scores.shape[0]

    def __len__(self):
        return self.n

    def __getitem__(self, index):
        return self.scores[index]

    def __str__(self):
        return f"SimilarityMatrix(n={self.n})"

    def __repr__(self):
        return self.__str__()

    def _repr_pretty_(self, p, cycle):
        p.text(self.__str__())

    def to_dataframe(self) -> pd.DataFrame:
        labels = self.labels if self.labels is not None else list(range(self.n))
        return pd.DataFrame(self.scores, index=labels, columns=labels)

    def to_csv(self, path_or_buf=None, float_format="%.6f"):
        """Write the matrix as CSV, with the labels as header and first column.

        Returns the CSV text when no path or buffer is given.
        """
        return self.to_dataframe().to_csv(path_or_buf, float_format=float_format)


def _score_pairs(pairs, cfg):
    return [score(diff(t1, t2, cfg)) for t1, t2 in pairs]


def pairwise_scores(contexts: Sequence, cfg: Optional[MatcherConfig] = None, *, n_jobs=1, progress_bar=None) -> np.ndarray:
    """Matrix of the similarities of a list of trees.

    Each unordered pair is diffed once, with the tree of lower index as first
    argument, and both triangles are filled with the result.
    """
    cfg = MatcherConfig() if cfg is None else cfg
    progress_bar = resolve_progress_bar(progress_bar, default=False)
    n = len(contexts)
    indices = [(i, j) for i in range(n) for j in range(i+1, n)]
    pairs = [(contexts[i], contexts[j]) for i, j in indices]

    if n_jobs == 1 or len(pairs) <= 1:
        iterated = track_progress(pairs, total=len(pairs), description="Diffing usage contexts") if progress_bar else pairs
        values = _score_pairs(iterated, cfg)
    else:
        joblib = require_joblib(n_jobs)
        chunk_size = max(1, len(pairs) // (8*abs(n_jobs)))
        chunks = [pairs[k:k+chunk_size] for k in range(0, len(pairs), chunk_size)]
        parallel = joblib.Parallel(return_as="generator", n_jobs=n_jobs)
        groups = parallel(joblib.delayed(_score_pairs)(chunk, cfg) for chunk in chunks)
        if progress_bar:
            groups = track_progress(groups, total=len(chunks), description=f"Diffing usage contexts with {n_jobs} jobs:")
        values = [v for group in groups for v in group]

    scores = np.eye(n)
    for (i, j), value in zip(indices, values):
        scores[i, j] = scores[j, i] = value
    return scores


def build_matrix(usages: Sequence, cfg: Optional[MatcherConfig] = None, *, n_jobs=1, progress_bar=None) -> SimilarityMatrix:
    """Similarity matrix of a list of usages.

    Usages sharing the same context object (e.g. several calls in the same
    method) have similarity 1 and their context is diffed only once.

    Parameters
    ----------
    usages: list of UsageSite
        sorted by file and offset, as returned by
        :func:`~usageclusters.ingest.usages.find_usages`
    cfg: MatcherConfig, optional
        settings of the matching (default: ``MatcherConfig()``)
    n_jobs: int, optional (default: 1)
        the number of jobs to run in parallel using the optional dependency `joblib`
    progress_bar: bool, optional
        display a progress bar. If not provided, check the environment
        variable `USAGECLUSTERS_PROGRESS_BAR` and otherwise default to False.

    Returns
    -------
    SimilarityMatrix
    """
    keys = [u.sort_key for u in usages]
    if keys != sorted(keys):
        raise ContractViolation("The usages should be sorted by file and offset before building the similarity matrix.")

    distinct_index = {}
    contexts = []
    for u in usages:
        root = u.context.root
        if root not in distinct_index:
            distinct_index[root] = len(contexts)
            contexts.append(u.context)
    LOG.info("Diffing %d distinct contexts of %d usages.", len(contexts), len(usages))

    distinct_scores = pairwise_scores(contexts, cfg, n_jobs=n_jobs, progress_bar=progress_bar)
    which = np.array([distinct_index[u.context.root] for u in usages], dtype=int)
    scores = distinct_scores[np.ix_(which, which)] if len(usages) > 0 else np.zeros((0, 0))
    return SimilarityMatrix(scores, labels=[u.location for u in usages])
