"""Scanning of a source directory and parsing of its files.

.. code-block:: python

    diagnostics = Diagnostics()
    files = scan_corpus("path/to/project", include_globs=["*.java"], diagnostics=diagnostics)
    trees = parse_corpus(files, JavaGrammar(), diagnostics=diagnostics)

"""
# Copyright (C) 2025 the usageclusters developers
# Distributed under the GNU General Public License, version 3 or later (GPL-3.0-or-later)

import os
import logging
from dataclasses import dataclass, field
from fnmatch import fnmatchcase
from pathlib import Path
from typing import List, Optional, Sequence

from usageclusters.ingest.grammar_protocol import GrammarAdapter, ParseError
from usageclusters.tools.optional_imports import require_joblib
from usageclusters.tools.progress import resolve_progress_bar, track_progress
from usageclusters.trees.nodes import SyntaxTree

LOG = logging.getLogger(__name__)


class CorpusError(OSError):
    """The root of the corpus does not exist or cannot be read."""


class Diagnostics:
    """Record of the files that have been skipped during a run, with the reason why."""

    def __init__(self):
        self.warnings = []

    def warn(self, path, message):
        LOG.warning("Skipping %s: %s", path, message)
        self.warnings.append((str(path), message))

    def __len__(self):
        return len(self.warnings)

    def __iter__(self):
        return iter(self.warnings)

    def __repr__(self):
        return f"Diagnostics({len(self.warnings)} warnings)"


@dataclass(frozen=True, order=True)
class SourceFile:
    """A file of the corpus.

    Ordering and equality only depend on `relative_path`, which is also the
    identifier of the file in the reports.
    """
    relative_path: str
    path: Path = field(default=None, compare=False)

    def __post_init__(self):
        if self.path is None:
            object.__setattr__(self, "path", Path(self.relative_path))

    def __str__(self):
        return self.relative_path


def _matches_any(relative_path, patterns):
    return any(fnmatchcase(relative_path, pattern) for pattern in patterns)


def scan_corpus(root, include_globs: Optional[Sequence[str]] = None, exclude_globs: Sequence[str] = (), *, diagnostics: Optional[Diagnostics] = None) -> List[SourceFile]:
    """List the source files of a directory tree.

    Glob patterns are matched against the path of the file relative to
    `root`, with forward slashes. As in :func:`fnmatch.fnmatch`, a ``*``
    also matches slashes, such that ``*.java`` matches files at any depth and
    ``*/generated/*`` excludes any ``generated`` directory.

    Parameters
    ----------
    root: str or Path
        the directory to scan
    include_globs: list of str, optional
        a file is kept if it matches at least one of these patterns (default: ``["*.java"]``)
    exclude_globs: list of str, optional
        a file is dropped if it matches at least one of these patterns
    diagnostics: Diagnostics, optional
        where to record the skipped unreadable files and directories

    Returns
    -------
    list of SourceFile
        sorted by relative path

    Raises
    ------
    CorpusError
        if the root does not exist or is not a readable directory
    """
    root = Path(root)
    if include_globs is None:
        include_globs = ("*.java",)
    if diagnostics is None:
        diagnostics = Diagnostics()

    if not root.exists():
        raise CorpusError(f"Corpus root {root} does not exist.")
    if not root.is_dir():
        raise CorpusError(f"Corpus root {root} is not a directory.")
    if not os.access(root, os.R_OK | os.X_OK):
        raise CorpusError(f"Corpus root {root} is not readable.")

    def on_walk_error(error):
        diagnostics.warn(error.filename, f"cannot list directory ({error.strerror})")

    files = []
    for dirpath, dirnames, filenames in os.walk(root, onerror=on_walk_error):
        dirnames.sort()
        for filename in filenames:
            path = Path(dirpath) / filename
            relative_path = path.relative_to(root).as_posix()
            if not _matches_any(relative_path, include_globs):
                continue
            if _matches_any(relative_path, exclude_globs):
                LOG.debug("Excluded %s", relative_path)
                continue
            if not os.access(path, os.R_OK):
                diagnostics.warn(relative_path, "file is not readable")
                continue
            files.append(SourceFile(relative_path, path))

    files.sort()
    LOG.info("Found %d source files in %s.", len(files), root)
    return files


def parse_file(file, grammar: Optional[GrammarAdapter] = None, source_id: Optional[str] = None) -> SyntaxTree:
    """Read and parse a single source file.

    Parameters
    ----------
    file: SourceFile or str or Path
        the file to parse
    grammar: GrammarAdapter, optional
        the grammar of the source language (default: :class:`~usageclusters.ingest.java.JavaGrammar`)
    source_id: str, optional
        identifier stored in the tree (default: the relative path of a
        SourceFile, or the path as given)

    Raises
    ------
    ParseError
        if the file is not valid UTF-8 text or contains a syntax error
    OSError
        if the file cannot be read
    """
    if grammar is None:
        from usageclusters.ingest.java import JavaGrammar
        grammar = JavaGrammar()
    if isinstance(file, SourceFile):
        path = file.path
        source_id = file.relative_path if source_id is None else source_id
    else:
        path = Path(file)
        source_id = str(file) if source_id is None else source_id

    with open(path, "rb") as f:
        source = f.read()
    try:
        source.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ParseError(f"{source_id} is not valid UTF-8 text (byte {e.start}).", path=source_id) from None

    tree = grammar.parse(source, source_id)
    LOG.debug("Parsed %s (%d nodes).", source_id, tree.node_count)
    return tree


def _parse_or_report(file, grammar):
    try:
        return parse_file(file, grammar)
    except ParseError as e:
        return (file.relative_path, str(e))
    except OSError as e:
        return (file.relative_path, f"cannot read file ({e.strerror})")


def _parse_chunk(files, grammar):
    return [_parse_or_report(f, grammar) for f in files]


def parse_corpus(files: Sequence[SourceFile], grammar: Optional[GrammarAdapter] = None, *, n_jobs=1, progress_bar=None, diagnostics: Optional[Diagnostics] = None) -> List[SyntaxTree]:
    """Parse several files, skipping the ones that cannot be parsed.

    Parameters
    ----------
    files: list of SourceFile
        typically the output of :func:`scan_corpus`
    grammar: GrammarAdapter, optional
        (default: :class:`~usageclusters.ingest.java.JavaGrammar`)
    n_jobs: int, optional (default: 1)
        the number of jobs to run in parallel using the optional dependency `joblib`
    progress_bar: bool, optional
        display a progress bar. If not provided, check the environment
        variable `USAGECLUSTERS_PROGRESS_BAR` and otherwise default to False.
    diagnostics: Diagnostics, optional
        where to record the skipped files

    Returns
    -------
    list of SyntaxTree
        in the order of `files`, without the skipped files
    """
    if grammar is None:
        from usageclusters.ingest.java import JavaGrammar
        grammar = JavaGrammar()
    if diagnostics is None:
        diagnostics = Diagnostics()
    files = list(files)
    progress_bar = resolve_progress_bar(progress_bar, default=False)

    if n_jobs == 1 or len(files) <= 1:
        iterated = track_progress(files, total=len(files), description="Parsing source files") if progress_bar else files
        outcomes = [_parse_or_report(f, grammar) for f in iterated]
    else:
        joblib = require_joblib(n_jobs)
        nb_chunks = min(len(files), 4*abs(n_jobs) if n_jobs > 0 else len(files))
        chunks = [files[i::nb_chunks] for i in range(nb_chunks)]
        parallel = joblib.Parallel(return_as="generator", n_jobs=n_jobs)
        groups = parallel(joblib.delayed(_parse_chunk)(chunk, grammar) for chunk in chunks)
        if progress_bar:
            groups = track_progress(groups, total=len(chunks), description=f"Parsing source files with {n_jobs} jobs:")
        by_chunk = list(groups)
        # Chunks are interleaved slices: restore the order of `files`.
        outcomes = [by_chunk[i % nb_chunks][i // nb_chunks] for i in range(len(files))]

    trees = []
    for outcome in outcomes:
        if isinstance(outcome, SyntaxTree):
            trees.append(outcome)
        else:
            diagnostics.warn(*outcome)
    LOG.info("Parsed %d files, skipped %d.", len(trees), len(files) - len(trees))
    return trees
