"""Directed clique number: exact and heuristic order search, and the quantified 3-CNF reduction."""

__version__ = "0.1.0"
