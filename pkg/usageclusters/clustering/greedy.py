"""Greedy clustering of usages by maximum of minimum similarity.

Usages are processed one after the other. The affinity of a usage to a
cluster is its smallest similarity with a member of the cluster. The usage
joins the cluster of highest affinity if this affinity reaches the
threshold, else it starts a new cluster. As a consequence, all the pairs of
members of a cluster are at least as similar as the threshold.
"""
# Copyright (C) 2025 the usageclusters developers
# Distributed under the GNU General Public License, version 3 or later (GPL-3.0-or-later)

import logging
from typing import List, Optional, Sequence, Union

import numpy as np

from usageclusters.similarity.scores import SimilarityMatrix
from usageclusters.tools.contracts import ContractViolation

LOG = logging.getLogger(__name__)

DEFAULT_THRESHOLD = 0.88


class UsageCluster:
    """Indices of usages, in the order they have been added.

    The first member is the representative of the cluster.
    """

    def __init__(self, members: Sequence[int]):
        members = [int(i) for i in members]
        if len(members) == 0:
            raise ContractViolation("A usage cluster cannot be empty.")
        self.members = members

    @property
    def representative(self) -> int:
        return self.members[0]

    def append(self, index: int):
        self.members.append(int(index))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, index):
        return index in self.members

    def __eq__(self, other):
        return isinstance(other, UsageCluster) and self.members == other.members

    def __repr__(self):
        return f"UsageCluster({self.members})"


class ClusterConfig:
    """Settings of the clustering.

    Parameters
    ----------
    threshold: float, optional
        Minimal similarity between two members of a cluster, in [0, 1].
        Higher values give more and smaller clusters. (default: 0.88)
    order: str or list of int, optional
        Order in which the usages are processed: "canonical" (by file and
        offset, the default), "reverse", or an explicit permutation of the
        usage indices.
    """

    def __init__(self, threshold: float = DEFAULT_THRESHOLD, order: Union[str, Sequence[int]] = "canonical"):
        if not 0.0 <= threshold <= 1.0:
            raise ValueError(f"The clustering threshold should be in [0, 1]. Received: {threshold!r}")
        if isinstance(order, str):
            if order not in {"canonical", "reverse"}:
                raise ValueError(f"Unrecognized processing order: {order!r}. Expected \"canonical\", \"reverse\" or a list of indices.")
        else:
            order = tuple(int(i) for i in order)
        self.threshold = float(threshold)
        self.order = order

    @property
    def exportable_settings(self):
        return {"threshold": self.threshold, "order": self.order if isinstance(self.order, str) else list(self.order)}

    def __str__(self):
        return f"ClusterConfig(threshold={self.threshold}, order={self.order!r})"

    def __repr__(self):
        return self.__str__()

    def processing_order(self, n: int) -> List[int]:
        if self.order == "canonical":
            return list(range(n))
        elif self.order == "reverse":
            return list(range(n-1, -1, -1))
        elif sorted(self.order) != list(range(n)):
            raise ContractViolation(f"The processing order {list(self.order)} is not a permutation of the {n} usages.")
        return list(self.order)


def _scores_of(m) -> np.ndarray:
    return m.scores if isinstance(m, SimilarityMatrix) else np.asarray(m)


def min_similarity(x: int, c: UsageCluster, m: Union[SimilarityMatrix, np.ndarray]) -> float:
    """Smallest similarity between usage `x` and a member of `c`."""
    scores = _scores_of(m)
    if len(c) == 0:
        raise ContractViolation("Cannot compute the minimal similarity to an empty cluster.")
    if not 0 <= x < scores.shape[0]:
        raise ContractViolation(f"Usage index {x} out of range for a similarity matrix of size {scores.shape[0]}.")
    return float(np.min(scores[x, c.members]))


def assign(x: int, clusters: List[UsageCluster], m, cfg: Optional[ClusterConfig] = None) -> List[UsageCluster]:
    """Add usage `x` to the most similar cluster, or to a new cluster.

    The most similar cluster is the one maximizing :func:`min_similarity`;
    in case of equality the earliest created one is kept. A new cluster is
    appended if there is no cluster yet or if the best affinity is below
    the threshold.

    Returns
    -------
    list of UsageCluster
        `clusters` itself, updated in place
    """
    cfg = ClusterConfig() if cfg is None else cfg
    best_similarity, best_cluster = -np.inf, None
    for cluster in clusters:
        similarity = min_similarity(x, cluster, m)
        if best_similarity < similarity:
            best_similarity, best_cluster = similarity, cluster

    if best_cluster is None or best_similarity < cfg.threshold:
        clusters.append(UsageCluster([x]))
    else:
        best_cluster.append(x)
    return clusters


def cluster_all(usages, m, cfg: Optional[ClusterConfig] = None) -> List[UsageCluster]:
    """Partition the usages into clusters.

    Parameters
    ----------
    usages: list
        the usages the matrix has been built from (only their number is used)
    m: SimilarityMatrix
        similarities of the usages
    cfg: ClusterConfig, optional
        (default: ``ClusterConfig()``)

    Returns
    -------
    list of UsageCluster
        in the order they have been created
    """
    cfg = ClusterConfig() if cfg is None else cfg
    n = _scores_of(m).shape[0]
    if usages is not None and len(usages) != n:
        raise ContractViolation(f"Got {len(usages)} usages for a similarity matrix of size {n}.")
    clusters = []
    for x in cfg.processing_order(n):
        assign(x, clusters, m, cfg)
    LOG.info("Clustered %d usages into %d clusters (threshold=%s).", n, len(clusters), cfg.threshold)
    return clusters


def sort_for_display(clusters: Sequence[UsageCluster]) -> List[UsageCluster]:
    """Largest clusters first, then by position of their representative."""
    return sorted(clusters, key=lambda c: (-len(c), c.representative))
