"""Clustered usage reports: assembly, JSON and text rendering, flat usage listing.

.. code-block:: python

    report = assemble_report(usages, clusters, query=query, corpus=..., config=...)
    print(report.to_json())
    print(format_text(report))

"""
# Copyright (C) 2025 the usageclusters developers
# Distributed under the GNU General Public License, version 3 or later (GPL-3.0-or-later)

import json
import logging
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Sequence

import pandas as pd

from usageclusters.tools.contracts import ContractViolation

LOG = logging.getLogger(__name__)


@dataclass(frozen=True)
class UsageEntry:
    file: str
    line: int
    snippet: str

    @classmethod
    def from_usage(cls, usage):
        return cls(file=usage.file, line=usage.line, snippet=usage.snippet)

    def __str__(self):
        return f"{self.file}, line {self.line}"


@dataclass(frozen=True)
class ClusterEntry:
    name: str
    size: int
    representative: UsageEntry
    members: List[UsageEntry]

    def __post_init__(self):
        if self.size != len(self.members):
            raise ContractViolation(f"{self.name} has size {self.size} but {len(self.members)} members.")

    @classmethod
    def from_dict(cls, data):
        return cls(name=data["name"], size=data["size"],
                   representative=UsageEntry(**data["representative"]),
                   members=[UsageEntry(**m) for m in data["members"]])


@dataclass(frozen=True)
class Report:
    """Result of a `find` run.

    Attributes
    ----------
    query: dict
        the symbol and the filters
    corpus: dict
        root directory, number of scanned files and of skipped files
    total_usages: int
        number of usages, equal to the sum of the cluster sizes
    clusters: list of ClusterEntry
        largest first
    config: dict
        settings of the matching and of the clustering
    """
    query: Dict
    corpus: Dict
    total_usages: int
    clusters: List[ClusterEntry] = field(default_factory=list)
    config: Dict = field(default_factory=dict)

    def __post_init__(self):
        total = sum(c.size for c in self.clusters)
        if total != self.total_usages:
            raise ContractViolation(f"The sizes of the clusters sum up to {total} instead of {self.total_usages} usages.")

    def __str__(self):
        return f"Report({self.query.get('symbol')!r}, {self.total_usages} usages in {len(self.clusters)} clusters)"

    def to_dict(self):
        return asdict(self)

    def to_json(self, indent=2) -> str:
        return json.dumps(self.to_dict(), indent=indent, ensure_ascii=False)

    @classmethod
    def from_dict(cls, data):
        return cls(query=data["query"], corpus=data["corpus"], total_usages=data["total_usages"],
                   clusters=[ClusterEntry.from_dict(c) for c in data["clusters"]],
                   config=data.get("config", {}))

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))


def assemble_report(usages: Sequence, clusters: Sequence, *, query: Dict, corpus: Dict, config: Dict) -> Report:
    """Build a Report from the usages and their clusters.

    Parameters
    ----------
    usages: list of UsageSite
        all the usages found
    clusters: list of UsageCluster
        the clusters of indices in `usages`, in the order they should be displayed
    query, corpus, config: dict
        echoed in the report
    """
    entries = []
    for k, cluster in enumerate(clusters, start=1):
        members = [UsageEntry.from_usage(usages[i]) for i in cluster.members]
        entries.append(ClusterEntry(name=f"Cluster {k}", size=len(members), representative=members[0], members=members))
    report = Report(query=dict(query), corpus=dict(corpus), total_usages=len(usages), clusters=entries, config=dict(config))
    LOG.debug("Assembled %s", report)
    return report


def _count(n, word):
    return f"{n} {word}" if n == 1 else f"{n} {word}s"


def format_text(report: Report) -> str:
    """Human readable report.

    The representative of each cluster is shown with its source line, the
    other members as a list of locations.
    """
    symbol = report.query.get("symbol")
    lines = [f"{_count(report.total_usages, 'usage')} of {symbol} in {_count(len(report.clusters), 'cluster')}"
             f" (threshold {report.config.get('threshold')})", ""]
    for cluster in report.clusters:
        lines.append(f"{cluster.name} ({_count(cluster.size, 'member')})")
        lines.append(f"  > {cluster.representative}: {cluster.representative.snippet}")
        for member in cluster.members[1:]:
            lines.append(f"    {member}")
        lines.append("")
    nb_warnings = report.corpus.get("parse_warnings", 0)
    if nb_warnings > 0:
        lines.append(f"Skipped {_count(nb_warnings, 'file')} that could not be parsed.")
    return "\n".join(lines).rstrip("\n") + "\n"


def usage_table(usages: Sequence) -> pd.DataFrame:
    """Flat table of the usages, sorted by package, file and offset."""
    table = pd.DataFrame([
        {
            "package": u.package,
            "file": u.file,
            "offset": u.offset,
            "line": u.line,
            "kind": u.usage_kind,
            "arity": u.arity,
            "snippet": u.snippet,
        } for u in usages
    ], columns=["package", "file", "offset", "line", "kind", "arity", "snippet"])
    table["arity"] = table["arity"].astype("Int64")
    return table.sort_values(["package", "file", "offset"], kind="stable").reset_index(drop=True)


def format_listing(table: pd.DataFrame) -> str:
    """Usages grouped by package, as in a plain "find usages" view."""
    lines = []
    for package, group in table.groupby("package", sort=True):
        lines.append(f"{package or '(default package)'} ({_count(len(group), 'usage')})")
        for row in group.itertuples(index=False):
            lines.append(f"  {row.file}, line {row.line}: {row.snippet}")
        lines.append("")
    return "\n".join(lines).rstrip("\n") + "\n"
