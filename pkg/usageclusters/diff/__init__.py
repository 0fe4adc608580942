# Copyright (C) 2025 the usageclusters developers
# Distributed under the GNU General Public License, version 3 or later (GPL-3.0-or-later)

from usageclusters.diff.mappings import NodeMapping, DiffResult, MatcherConfig
from usageclusters.diff.matchers import match_top_down, match_bottom_up, compute_mapping, diff
