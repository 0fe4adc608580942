# Copyright (C) 2025 the usageclusters developers
# Distributed under the GNU General Public License, version 3 or later (GPL-3.0-or-later)

from usageclusters.clustering.greedy import UsageCluster, ClusterConfig, min_similarity, assign, cluster_all, sort_for_display
