"""Resolution of the progress bar setting."""
# Copyright (C) 2025 the usageclusters developers
# Distributed under the GNU General Public License, version 3 or later (GPL-3.0-or-later)

import os

from rich.console import Console
from rich.progress import track

PROGRESS_BAR_ENV_VAR = "USAGECLUSTERS_PROGRESS_BAR"

_STDERR_CONSOLE = None


def resolve_progress_bar(progress_bar=None, default=True) -> bool:
    """Explicit value if any, else the value of the environment variable, else `default`.

    Raises
    ------
    ValueError
        if the environment variable holds something else than true/false/t/f/1/0
    """
    if progress_bar is not None:
        return bool(progress_bar)
    if PROGRESS_BAR_ENV_VAR not in os.environ:
        return default
    env_var = os.environ[PROGRESS_BAR_ENV_VAR].lower()
    if env_var in {'true', '1', 't'}:
        return True
    elif env_var in {'false', '0', 'f'}:
        return False
    else:
        raise ValueError(f"Invalid value '{os.environ[PROGRESS_BAR_ENV_VAR]}' for the environment variable {PROGRESS_BAR_ENV_VAR}.")


def stderr_console() -> Console:
    """Console for logs and progress bars; standard output is reserved for the reports."""
    global _STDERR_CONSOLE
    if _STDERR_CONSOLE is None:
        _STDERR_CONSOLE = Console(stderr=True)
    return _STDERR_CONSOLE


def track_progress(sequence, total, description):
    return track(sequence, total=total, description=description, console=stderr_console(), transient=True)
