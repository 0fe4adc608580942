# Copyright (C) 2025 the usageclusters developers
# Distributed under the GNU General Public License, version 3 or later (GPL-3.0-or-later)

from usageclusters.ingest.grammar_protocol import GrammarAdapter, ParseError
from usageclusters.ingest.java import JavaGrammar
from usageclusters.ingest.corpus import CorpusError, Diagnostics, SourceFile, scan_corpus, parse_file, parse_corpus
from usageclusters.ingest.usages import SymbolQuery, UsageSite, find_usages, extract_context
