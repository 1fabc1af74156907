"""Exact alcove geometry and connection-index checks for simply connected split groups."""

__version__ = "0.1.0"
