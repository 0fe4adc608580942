"""Import of dependencies that are not needed by every run (joblib, the parser bindings)."""
# Copyright (C) 2025 the usageclusters developers
# Distributed under the GNU General Public License, version 3 or later (GPL-3.0-or-later)

import importlib


def import_optional_dependency(module_name: str, package_name: str = None):
    """Import `module_name`, or raise an ImportError telling which package to install."""
    try:
        return importlib.import_module(module_name)
    except ImportError:
        package_name = module_name if package_name is None else package_name
        raise ImportError(f"Missing optional dependency '{module_name}'. "
                          f"Install it with `pip install {package_name}`.") from None


def silently_import_optional_dependency(module_name: str):
    # Returns None instead of raising when the module is missing.
    try:
        return importlib.import_module(module_name)
    except ImportError:
        return None


def require_joblib(n_jobs):
    """The joblib module, for a computation that has been asked to run on `n_jobs` workers."""
    joblib = silently_import_optional_dependency("joblib")
    if joblib is None:
        raise ImportError(f"Setting the `n_jobs` argument to {n_jobs} requires the missing optional dependency 'joblib'.")
    return joblib
