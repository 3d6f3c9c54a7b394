"""Readability evaluation toolkit for plain language summaries."""

__version__ = "0.1.0"
