"""Logging to the terminal with rich."""
# Copyright (C) 2025 the usageclusters developers
# Distributed under the GNU General Public License, version 3 or later (GPL-3.0-or-later)

import logging

from rich.logging import RichHandler

from usageclusters.tools.progress import stderr_console


def set_logging(level="INFO"):
    """Send the logs to standard error through a RichHandler.

    Standard output is left to the reports, such that they can be redirected.
    """
    handler = RichHandler(level=level, console=stderr_console(), log_time_format="[%X]", show_path=False)
    logging.basicConfig(level=level, format="%(message)s", handlers=[handler], force=True)
