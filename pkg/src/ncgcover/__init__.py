"""Cubic symmetric non-Cayley graphs built as voltage covers of K_{3,3}.

The package builds the family NCG_{18n^3} and checks, by direct computation,
the claims that make each member a connected cubic 2-regular non-Cayley graph.
"""

__version__ = "0.1.0"
