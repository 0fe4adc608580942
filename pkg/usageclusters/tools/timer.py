"""Stage timers of the usage clustering pipeline."""
# Copyright (C) 2025 the usageclusters developers
# Distributed under the GNU General Public License, version 3 or later (GPL-3.0-or-later)

import time
from functools import wraps
from typing import Dict

import pandas as pd


class Timer:
    """Accumulates the durations of the successive runs of a stage.

    Can be used as a context manager, or wrap a function with `wraps_function`.

    Example
    -------
    ::

        parsing = Timer()
        with parsing:
            trees = parse_corpus(files)
        parsing.total  # seconds
    """

    def __init__(self, timings=None):
        self.timings = [] if timings is None else list(timings)
        self._started = []

    def __repr__(self):
        return f"Timer({self.timings})"

    @property
    def nb_timings(self):
        return len(self.timings)

    @property
    def total(self):
        return sum(self.timings)

    @property
    def mean(self):
        if self.nb_timings == 0:
            return float('nan')
        return self.total/self.nb_timings

    def __enter__(self):
        # A stack, such that a wrapped function may call itself.
        self._started.append(time.perf_counter())
        return self

    def __exit__(self, *exc):
        self.timings.append(time.perf_counter() - self._started.pop())

    def wraps_function(self, f):
        @wraps(f)
        def wrapped_f(*args, **kwargs):
            with self:
                return f(*args, **kwargs)
        return wrapped_f


def timer_summary(timers: Dict[str, Timer]) -> pd.DataFrame:
    """Table of the total time, number of calls and mean time of each named timer."""
    return pd.DataFrame([
        {
            "task": name,
            "total": timer.total,
            "nb_calls": timer.nb_timings,
            "mean": timer.mean,
        } for name, timer in timers.items()
    ], columns=["task", "total", "nb_calls", "mean"]).set_index("task")
