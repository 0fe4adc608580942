#!/usr/bin/env python
# coding: utf-8
"""Command-line interface of usageclusters.

.. code-block:: sh

    usageclusters find initCapacity --root path/to/project --threshold 0.88
    usageclusters list initCapacity --root path/to/project
    usageclusters matrix initCapacity --root path/to/project > matrix.csv
    usageclusters diff tree1.sexpr '(block (return_statement))'

Exit status: 0 on success, 1 when no usage has been found, 2 on invalid
arguments, configuration or input.
"""
# Copyright (C) 2025 the usageclusters developers
# Distributed under the GNU General Public License, version 3 or later (GPL-3.0-or-later)

import argparse
import json
import logging
import sys

from usageclusters.__about__ import __version__
from usageclusters.clustering.greedy import ClusterConfig
from usageclusters.diff.mappings import MatcherConfig
from usageclusters.diff.matchers import diff
from usageclusters.engine import UsageClusterer
from usageclusters.ingest.usages import CONTEXT_SCOPES, KINDS, SymbolQuery
from usageclusters.io.config import resolve_settings
from usageclusters.io.reports import format_listing, format_text, usage_table
from usageclusters.io.sexpr import MalformedTreeError, load_tree, loads
from usageclusters.similarity.scores import score
from usageclusters.trees.nodes import SyntaxTree
from usageclusters.ui.rich import set_logging

LOG = logging.getLogger(__name__)

EXIT_OK, EXIT_NO_USAGE, EXIT_ERROR = 0, 1, 2
FORMATS = ("text", "json")


def _add_logging_arguments(parser):
    parser.add_argument('-v', '--verbose', action='store_true', help='log the progress of the run')
    parser.add_argument('--debug', action='store_true', help='log debugging information')


def _add_matcher_arguments(parser):
    parser.add_argument('--min-height', type=int, default=None, dest='min_height',
                        help='minimal height of the subtrees matched top-down (default: 2)')
    parser.add_argument('--dice', type=float, default=None,
                        help='dice coefficient above which containers are matched bottom-up (default: 0.5)')


def _add_query_arguments(parser):
    parser.add_argument('symbol', help='name of the method, class or variable whose usages are looked for')
    parser.add_argument('--root', default='.', help='directory of the source files (default: current directory)')
    parser.add_argument('--include', action='append', default=None, metavar='GLOB',
                        help='only scan files whose path relative to the root matches this pattern; '
                             'can be repeated (default: *.java). A * also matches slashes.')
    parser.add_argument('--exclude', action='append', default=None, metavar='GLOB',
                        help='skip files whose path relative to the root matches this pattern; can be repeated')
    parser.add_argument('--kind', choices=["any", "call", "type"], default=None,
                        help='only keep calls, or references to a type name (default: any)')
    parser.add_argument('--arity', type=int, default=None, help='only keep calls with this number of arguments')
    parser.add_argument('--context', choices=CONTEXT_SCOPES, default=None,
                        help='code compared between usages: the enclosing method (default) or the enclosing statement')
    parser.add_argument('--jobs', type=int, default=None, dest='n_jobs',
                        help='number of parallel jobs, requires joblib (default: 1)')
    parser.add_argument('--config', default=None, metavar='PATH',
                        help='JSON file of settings (default: usageclusters.json in the root directory, if any)')
    parser.add_argument('--progress', action=argparse.BooleanOptionalAction, default=None,
                        help='display progress bars (default: from USAGECLUSTERS_PROGRESS_BAR, else no)')
    _add_logging_arguments(parser)


parser = argparse.ArgumentParser(prog="usageclusters",
                                 description="Find the usages of a symbol in Java code and group them by similarity of the enclosing methods.")
parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
subparsers = parser.add_subparsers(dest='command', required=True)

find_parser = subparsers.add_parser('find', help='clusters of usages of a symbol')
_add_query_arguments(find_parser)
_add_matcher_arguments(find_parser)
find_parser.add_argument('--threshold', type=float, default=None,
                         help='minimal similarity between two usages of a cluster, in [0, 1] (default: 0.88)')
find_parser.add_argument('--format', choices=FORMATS, default=None, help='output format (default: text)')

list_parser = subparsers.add_parser('list', help='flat list of usages of a symbol, grouped by package')
_add_query_arguments(list_parser)
list_parser.add_argument('--format', choices=FORMATS, default=None, help='output format (default: text)')

matrix_parser = subparsers.add_parser('matrix', help='CSV matrix of the similarities between usages of a symbol')
_add_query_arguments(matrix_parser)
_add_matcher_arguments(matrix_parser)
matrix_parser.add_argument('--output', default=None, metavar='PATH', help='write the CSV to this file instead of standard output')

diff_parser = subparsers.add_parser('diff', help='compare two serialized syntax trees')
diff_parser.add_argument('trees', nargs=2, metavar='TREE',
                         help='a file containing a serialized tree, or the serialized tree itself if it starts with "("')
_add_matcher_arguments(diff_parser)
_add_logging_arguments(diff_parser)


def _error(message):
    print(f"usageclusters: error: {message}", file=sys.stderr)
    return EXIT_ERROR


def _settings(args):
    flags = {
        "include": args.include,
        "exclude": args.exclude,
        "kind": args.kind,
        "arity": args.arity,
        "context": args.context,
        "n_jobs": args.n_jobs,
        "threshold": getattr(args, "threshold", None),
        "min_height": getattr(args, "min_height", None),
        "dice": getattr(args, "dice", None),
        "format": getattr(args, "format", None),
    }
    settings = resolve_settings(flags, root=args.root, config_path=args.config)
    if settings["format"] not in FORMATS:
        raise ValueError(f"Unrecognized output format: {settings['format']!r}. Expected one of {FORMATS}.")
    if settings["kind"] not in KINDS:
        raise ValueError(f"Unrecognized kind filter: {settings['kind']!r}. Expected one of {KINDS}.")
    LOG.debug("Settings: %s", settings)
    return settings


def _clusterer(settings):
    return UsageClusterer(
        matcher_config=MatcherConfig(min_height=settings["min_height"], dice_threshold=settings["dice"]),
        cluster_config=ClusterConfig(threshold=settings["threshold"]),
        context_scope=settings["context"],
    )


def _query(args, settings):
    return SymbolQuery(args.symbol, kind_filter=settings["kind"], arity_filter=settings["arity"])


def run_find(args):
    settings = _settings(args)
    report = _clusterer(settings).run(args.root, _query(args, settings), settings["include"], settings["exclude"],
                                      n_jobs=settings["n_jobs"], progress_bar=args.progress)
    if report.total_usages == 0:
        print("0 usages found", file=sys.stderr)
        return EXIT_NO_USAGE
    if settings["format"] == "json":
        sys.stdout.write(report.to_json() + "\n")
    else:
        sys.stdout.write(format_text(report))
    return EXIT_OK


def run_list(args):
    settings = _settings(args)
    usages, corpus = _clusterer(settings).collect(args.root, _query(args, settings), settings["include"], settings["exclude"],
                                                  n_jobs=settings["n_jobs"], progress_bar=args.progress)
    if len(usages) == 0:
        print("0 usages found", file=sys.stderr)
        return EXIT_NO_USAGE
    table = usage_table(usages)
    if settings["format"] == "json":
        records = json.loads(table.drop(columns="offset").to_json(orient="records"))
        sys.stdout.write(json.dumps({"corpus": corpus, "total_usages": len(usages), "usages": records}, indent=2) + "\n")
    else:
        sys.stdout.write(format_listing(table))
    return EXIT_OK


def run_matrix(args):
    settings = _settings(args)
    clusterer = _clusterer(settings)
    usages, _ = clusterer.collect(args.root, _query(args, settings), settings["include"], settings["exclude"],
                                  n_jobs=settings["n_jobs"], progress_bar=args.progress)
    if len(usages) == 0:
        print("0 usages found", file=sys.stderr)
        return EXIT_NO_USAGE
    matrix = clusterer.similarity_matrix(usages, n_jobs=settings["n_jobs"], progress_bar=args.progress)
    if args.output is not None:
        matrix.to_csv(args.output)
    else:
        sys.stdout.write(matrix.to_csv())
    return EXIT_OK


def _read_tree(argument):
    if argument.lstrip().startswith("("):
        return SyntaxTree(loads(argument), source_id="<argument>")
    return load_tree(argument)


def run_diff(args):
    cfg = MatcherConfig(min_height=2 if args.min_height is None else args.min_height,
                        dice_threshold=0.5 if args.dice is None else args.dice)
    t1, t2 = (_read_tree(a) for a in args.trees)
    if LOG.isEnabledFor(logging.DEBUG):
        LOG.debug("First tree:\n%s", t1.root.tree_view())
        LOG.debug("Second tree:\n%s", t2.root.tree_view())
    result = diff(t1, t2, cfg)
    print(f"shared={result.shared} unmatched={result.unmatched1}/{result.unmatched2} score={round(score(result), 6)}")
    return EXIT_OK


COMMANDS = {"find": run_find, "list": run_list, "matrix": run_matrix, "diff": run_diff}


def main(argv=None):
    args = parser.parse_args(argv)
    set_logging(level="DEBUG" if args.debug else "INFO" if args.verbose else "WARNING")
    try:
        return COMMANDS[args.command](args)
    except MalformedTreeError as e:
        return _error(f"malformed tree: {e}")
    except (OSError, ValueError, ImportError) as e:
        return _error(str(e))


if __name__ == '__main__':
    sys.exit(main())
