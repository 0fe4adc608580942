"""Exception raised when a function is called outside of its domain of definition."""
# Copyright (C) 2025 the usageclusters developers
# Distributed under the GNU General Public License, version 3 or later (GPL-3.0-or-later)


class ContractViolation(ValueError):
    """A precondition of the called function does not hold.

    For instance, a usage span that is not inside the tree it should be
    looked for in, or an empty usage cluster.
    """
    pass
