#!/usr/bin/env python3

__all__ = ["__title__", "__description__", "__version__", "__author__", "__uri__", "__license__"]

__title__ = "usageclusters"
__description__ = """Find the usages of a symbol in source code and cluster them by similarity of their syntax trees"""

__version__ = "0.1.dev"

__author__ = "the usageclusters developers"
__uri__ = "https://github.com/usageclusters/usageclusters"
__license__ = "GPL-3.0"


if __name__ == "__main__":
    print(__version__)
