# Copyright (C) 2025 the usageclusters developers
# Distributed under the GNU General Public License, version 3 or later (GPL-3.0-or-later)

from usageclusters.similarity.scores import score, score_counts, SimilarityMatrix, pairwise_scores, build_matrix
